#include "msc/schema.hpp"

#include <algorithm>

#include "msc/errors.hpp"

namespace msc {

std::string SourceSpan::str() const
{
    std::string s = file.empty() ? "<input>" : file;
    s += ":" + std::to_string(line) + ":" + std::to_string(col_begin);
    if (col_end > col_begin + 1)
        s += "-" + std::to_string(col_end - 1);
    return s;
}

ParseError::ParseError(const SourceSpan& span, const std::string& msg)
    : Error(span.str() + ": " + msg), span_(span), msg_(msg)
{
}

UndeterminedError::UndeterminedError(long rounds)
    : Error("undetermined: round cap of " + std::to_string(rounds) + " reached without a verdict"), rounds_(rounds)
{
}

IllegalMove::IllegalMove(std::string rule, const std::string& why)
    : Error("illegal move (" + rule + "): " + why), rule_(std::move(rule))
{
}

namespace {

Schema make(Op op, int k, std::string name, Schema l, Schema r)
{
    auto n = std::make_shared<SchemaNode>();
    n->op = op;
    n->threshold = k;
    n->name = std::move(name);
    n->left = std::move(l);
    n->right = std::move(r);
    return n;
}

}  // namespace

Schema s_bot()
{
    static const Schema b = make(Op::Bottom, 0, "", nullptr, nullptr);
    return b;
}

Schema s_top()
{
    static const Schema t = make(Op::Top, 0, "", nullptr, nullptr);
    return t;
}

Schema s_prop(const std::string& name) { return make(Op::Prop, 0, name, nullptr, nullptr); }
Schema s_var(const std::string& name) { return make(Op::Var, 0, name, nullptr, nullptr); }
Schema s_not(Schema a) { return make(Op::Not, 0, "", std::move(a), nullptr); }
Schema s_or(Schema a, Schema b) { return make(Op::Or, 0, "", std::move(a), std::move(b)); }
Schema s_and(Schema a, Schema b) { return make(Op::And, 0, "", std::move(a), std::move(b)); }

Schema s_modal(Op op, int k, Schema a)
{
    if (k < 1)
        throw ValidationError("modal threshold must be at least 1");
    return make(op, k, "", std::move(a), nullptr);
}

Schema s_dia(int k, Schema a) { return s_modal(Op::Dia, k, std::move(a)); }
Schema s_box(int k, Schema a) { return s_modal(Op::Box, k, std::move(a)); }
Schema s_gdia(int k, Schema a) { return s_modal(Op::GDia, k, std::move(a)); }
Schema s_gbox(int k, Schema a) { return s_modal(Op::GBox, k, std::move(a)); }

Schema s_or_all(const std::vector<Schema>& xs)
{
    if (xs.empty())
        return s_bot();
    Schema acc = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i)
        acc = s_or(acc, xs[i]);
    return acc;
}

Schema s_and_all(const std::vector<Schema>& xs)
{
    if (xs.empty())
        return s_top();
    Schema acc = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i)
        acc = s_and(acc, xs[i]);
    return acc;
}

bool schema_equal(const Schema& a, const Schema& b)
{
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    if (a->op != b->op || a->threshold != b->threshold || a->name != b->name)
        return false;
    return schema_equal(a->left, b->left) && schema_equal(a->right, b->right);
}

namespace {

void print(const Schema& s, std::string& out)
{
    switch (s->op) {
    case Op::Bottom: out += "F"; return;
    case Op::Top: out += "T"; return;
    case Op::Prop:
    case Op::Var: out += s->name; return;
    case Op::Not:
        out += "!";
        print(s->left, out);
        return;
    case Op::Or:
    case Op::And:
        out += "(";
        print(s->left, out);
        out += s->op == Op::Or ? " | " : " & ";
        print(s->right, out);
        out += ")";
        return;
    case Op::Dia: out += "<" + std::to_string(s->threshold) + ">"; break;
    case Op::Box: out += "[" + std::to_string(s->threshold) + "]"; break;
    case Op::GDia: out += "<<" + std::to_string(s->threshold) + ">>"; break;
    case Op::GBox: out += "[[" + std::to_string(s->threshold) + "]]"; break;
    }
    print(s->left, out);
}

}  // namespace

std::string schema_to_string(const Schema& s)
{
    std::string out;
    print(s, out);
    return out;
}

bool is_formula(const Schema& s)
{
    if (s->op == Op::Var)
        return false;
    if (s->left && !is_formula(s->left))
        return false;
    if (s->right && !is_formula(s->right))
        return false;
    return true;
}

int modal_depth(const Schema& s)
{
    int d = 0;
    if (s->left)
        d = modal_depth(s->left);
    if (s->right)
        d = std::max(d, modal_depth(s->right));
    return is_modal(s->op) ? d + 1 : d;
}

int schema_size(const Schema& s)
{
    int n = 0;
    switch (s->op) {
    case Op::Bottom:
    case Op::Top: return 0;
    case Op::Prop:
    case Op::Var: return 1;
    case Op::Not:
    case Op::Or:
    case Op::And: n = 1; break;
    default: n = s->threshold; break;
    }
    if (s->left)
        n += schema_size(s->left);
    if (s->right)
        n += schema_size(s->right);
    return n;
}

int max_threshold(const Schema& s)
{
    int m = is_modal(s->op) ? s->threshold : 0;
    if (s->left)
        m = std::max(m, max_threshold(s->left));
    if (s->right)
        m = std::max(m, max_threshold(s->right));
    return m;
}

void collect_vars(const Schema& s, std::set<std::string>& out)
{
    if (s->op == Op::Var)
        out.insert(s->name);
    if (s->left)
        collect_vars(s->left, out);
    if (s->right)
        collect_vars(s->right, out);
}

void collect_props(const Schema& s, std::set<std::string>& out)
{
    if (s->op == Op::Prop)
        out.insert(s->name);
    if (s->left)
        collect_props(s->left, out);
    if (s->right)
        collect_props(s->right, out);
}

Fragment fragment_join(Fragment a, Fragment b) { return static_cast<int>(a) >= static_cast<int>(b) ? a : b; }

Fragment schema_fragment(const Schema& s)
{
    Fragment f = Fragment::SC;
    if (is_global(s->op))
        f = Fragment::GGMSC;
    else if (is_modal(s->op))
        f = s->threshold == 1 ? Fragment::MSC : Fragment::GMSC;
    if (s->left)
        f = fragment_join(f, schema_fragment(s->left));
    if (s->right)
        f = fragment_join(f, schema_fragment(s->right));
    return f;
}

bool fits_fragment(const Schema& s, Fragment f) { return static_cast<int>(schema_fragment(s)) <= static_cast<int>(f); }

const char* fragment_name(Fragment f)
{
    switch (f) {
    case Fragment::SC: return "SC";
    case Fragment::MSC: return "MSC";
    case Fragment::GMSC: return "GMSC";
    case Fragment::GGMSC: return "GGMSC";
    }
    return "?";
}

Fragment parse_fragment_name(const std::string& s)
{
    if (s == "SC")
        return Fragment::SC;
    if (s == "MSC")
        return Fragment::MSC;
    if (s == "GMSC")
        return Fragment::GMSC;
    if (s == "GGMSC")
        return Fragment::GGMSC;
    throw ValidationError("unknown fragment '" + s + "'");
}

bool is_strong_nnf(const Schema& s)
{
    if (s->op == Op::Not)
        return s->left->op == Op::Prop;
    if (s->left && !is_strong_nnf(s->left))
        return false;
    if (s->right && !is_strong_nnf(s->right))
        return false;
    return true;
}

}  // namespace msc
