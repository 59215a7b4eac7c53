#include "msc/nnf.hpp"

#include <map>
#include <set>

namespace msc {

std::string dual_name(const Program& input, const std::string& var)
{
    auto props = input.propositions();
    std::set<std::string> taken(input.variables.begin(), input.variables.end());
    taken.insert(props.begin(), props.end());
    std::string name = var + "_d";
    while (taken.count(name))
        name += "_d";
    return name;
}

namespace {

struct Pusher {
    const Program& in;
    std::map<std::string, std::string> dual;   // var -> dual name, for every var
    std::set<std::string> needed;

    Schema pos(const Schema& s)
    {
        switch (s->op) {
        case Op::Not: return neg(s->left);
        case Op::Or: return s_or(pos(s->left), pos(s->right));
        case Op::And: return s_and(pos(s->left), pos(s->right));
        case Op::Dia:
        case Op::Box:
        case Op::GDia:
        case Op::GBox: return s_modal(s->op, s->threshold, pos(s->left));
        default: return s;
        }
    }

    // Strong NNF of ¬s.
    Schema neg(const Schema& s)
    {
        switch (s->op) {
        case Op::Bottom: return s_top();
        case Op::Top: return s_bot();
        case Op::Prop: return s_not(s);
        case Op::Var:
            needed.insert(s->name);
            return s_var(dual.at(s->name));
        case Op::Not: return pos(s->left);
        case Op::Or: return s_and(neg(s->left), neg(s->right));
        case Op::And: return s_or(neg(s->left), neg(s->right));
        // fewer than k successors satisfy a  <=>  fewer than k successors falsify ¬a
        case Op::Dia: return s_box(s->threshold, neg(s->left));
        case Op::Box: return s_dia(s->threshold, neg(s->left));
        case Op::GDia: return s_gbox(s->threshold, neg(s->left));
        case Op::GBox: return s_gdia(s->threshold, neg(s->left));
        }
        return s;
    }
};

}  // namespace

bool program_is_strong_nnf(const Program& p)
{
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!is_strong_nnf(p.base[i]) || !is_strong_nnf(p.induction[i]))
            return false;
    return true;
}

Program to_strong_nnf(const Program& p)
{
    if (program_is_strong_nnf(p))
        return p;
    Pusher ps{p, {}, {}};
    for (const auto& v : p.variables)
        ps.dual[v] = dual_name(p, v);

    Program out = p;
    for (std::size_t i = 0; i < p.size(); ++i) {
        out.base[i] = ps.pos(p.base[i]);
        out.induction[i] = ps.pos(p.induction[i]);
    }
    // Dual rules are generated on demand; each pass may request further duals.
    std::set<std::string> done;
    while (done.size() < ps.needed.size()) {
        for (const auto& v : p.variables) {
            if (!ps.needed.count(v) || done.count(v))
                continue;
            done.insert(v);
            int i = p.index_of(v);
            Schema b = ps.neg(p.base[static_cast<std::size_t>(i)]);
            Schema r = ps.neg(p.induction[static_cast<std::size_t>(i)]);
            out.add_variable(ps.dual[v], b, r);
        }
    }
    out.validate();
    return out;
}

}  // namespace msc
