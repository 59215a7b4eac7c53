#include "msc/textio.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "msc/errors.hpp"

namespace msc {

namespace {

// ---------------------------------------------------------------- lexer

enum class Tok : std::uint8_t { Ident, LParen, RParen, Not, And, Or, Imp, Iff, Modal, Label, Claim, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    Op op = Op::Dia;   // Modal
    int k = 1;
    bool eq = false;   // "=k" abbreviation
    int line = 1;
    int col = 1;
    int len = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c, bool dotted)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || (dotted && c == '.');
}

class Lexer {
public:
    Lexer(const std::string& text, std::string file, int line, int col, bool mcl)
        : s_(text), file_(std::move(file)), line_(line), col_(col), mcl_(mcl)
    {
    }

    std::vector<Token> run()
    {
        std::vector<Token> out;
        while (true) {
            skip_space();
            Token t;
            t.line = line_;
            t.col = col_;
            if (i_ >= s_.size()) {
                t.kind = Tok::End;
                out.push_back(t);
                return out;
            }
            char c = s_[i_];
            if (ident_start(c)) {
                std::size_t j = i_;
                while (j < s_.size() && ident_char(s_[j], false))
                    ++j;
                t.text = s_.substr(i_, j - i_);
                if (mcl_ && t.text == "L" && j < s_.size() && s_[j] == ':') {
                    advance(2);
                    t.kind = Tok::Label;
                    t.text = read_name(t);
                    t.len = col_ - t.col;
                    out.push_back(t);
                    continue;
                }
                t.kind = Tok::Ident;
                t.len = static_cast<int>(j - i_);
                advance(j - i_);
                out.push_back(t);
                continue;
            }
            switch (c) {
            case '(': t.kind = Tok::LParen; advance(1); break;
            case ')': t.kind = Tok::RParen; advance(1); break;
            case '!':
            case '~': t.kind = Tok::Not; advance(1); break;
            case '&': t.kind = Tok::And; advance(1); break;
            case '|': t.kind = Tok::Or; advance(1); break;
            case '@':
                if (!mcl_)
                    fail(t, 1, "claims are only allowed in MCL formulas");
                advance(1);
                t.kind = Tok::Claim;
                t.text = read_name(t);
                break;
            case '-':
                if (peek(1) != '>')
                    fail(t, 1, "expected '->'");
                t.kind = Tok::Imp;
                advance(2);
                break;
            case '<':
                if (peek(1) == '-' && peek(2) == '>') {
                    t.kind = Tok::Iff;
                    advance(3);
                    break;
                }
                modal(t, '<', '>', Op::Dia, Op::GDia);
                break;
            case '[': modal(t, '[', ']', Op::Box, Op::GBox); break;
            default: fail(t, 1, std::string("unexpected character '") + c + "'");
            }
            t.len = std::max(1, col_ - t.col);
            out.push_back(t);
        }
    }

private:
    char peek(std::size_t off) const { return i_ + off < s_.size() ? s_[i_ + off] : '\0'; }

    void advance(std::size_t n)
    {
        for (std::size_t j = 0; j < n && i_ < s_.size(); ++j, ++i_) {
            if (s_[i_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
        }
    }

    void skip_space()
    {
        while (i_ < s_.size()) {
            if (s_[i_] == '#') {
                while (i_ < s_.size() && s_[i_] != '\n')
                    advance(1);
            } else if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
                advance(1);
            } else {
                break;
            }
        }
    }

    std::string read_name(const Token& t)
    {
        std::size_t j = i_;
        if (j >= s_.size() || !ident_start(s_[j]))
            fail(t, 1, "expected a name");
        while (j < s_.size() && ident_char(s_[j], true))
            ++j;
        std::string name = s_.substr(i_, j - i_);
        advance(j - i_);
        return name;
    }

    [[noreturn]] void fail(const Token& t, int len, const std::string& msg) const
    {
        throw ParseError(SourceSpan{file_, t.line, t.col, t.col + len}, msg);
    }

    // "<k>", "<>", "<=k>", "<<k>>", "<<>>", "<<=k>>" and the bracket counterparts.
    void modal(Token& t, char open, char close, Op local, Op global)
    {
        bool dbl = peek(1) == open;
        std::size_t j = dbl ? 2 : 1;
        t.kind = Tok::Modal;
        t.op = dbl ? global : local;
        if (peek(j) == '=') {
            t.eq = true;
            ++j;
        }
        std::size_t digits = j;
        while (std::isdigit(static_cast<unsigned char>(peek(j))))
            ++j;
        bool have_digits = j > digits;
        if (!have_digits && t.eq)
            fail(t, 1, "expected a number after '='");
        bool closed = peek(j) == close && (!dbl || peek(j + 1) == close);
        if (!closed)
            fail(t, 1, std::string("malformed modality: expected a threshold and '") + close + (dbl ? std::string(1, close) : "") + "'");
        t.k = have_digits ? std::stoi(s_.substr(i_ + digits, j - digits)) : 1;
        if (!t.eq && t.k < 1)
            fail(t, 1, "thresholds must be at least 1");
        advance(j + (dbl ? 2 : 1));
    }

    const std::string& s_;
    std::string file_;
    std::size_t i_ = 0;
    int line_;
    int col_;
    bool mcl_;
};

// ---------------------------------------------------------------- parser

struct SchemaBuilder {
    using T = Schema;
    const std::set<std::string>* vars = nullptr;
    bool base = false;  // variables are not allowed
    std::string file;

    T bot() const { return s_bot(); }
    T top() const { return s_top(); }
    T atom(const Token& t) const
    {
        if (vars && vars->count(t.text)) {
            if (base)
                throw ParseError(SourceSpan{file, t.line, t.col, t.col + t.len},
                                 "base rule refers to head predicate '" + t.text + "'");
            return s_var(t.text);
        }
        return s_prop(t.text);
    }
    T neg(T a) const { return s_not(std::move(a)); }
    T lor(T a, T b) const { return s_or(std::move(a), std::move(b)); }
    T land(T a, T b) const { return s_and(std::move(a), std::move(b)); }
    T modal(Op op, int k, T a) const { return s_modal(op, k, std::move(a)); }
    T label(const Token& t, T) const
    {
        throw ParseError(SourceSpan{file, t.line, t.col, t.col + t.len}, "labels are only allowed in MCL formulas");
    }
    T claim(const Token& t) const
    {
        throw ParseError(SourceSpan{file, t.line, t.col, t.col + t.len}, "claims are only allowed in MCL formulas");
    }
};

MOp mop(Op op)
{
    switch (op) {
    case Op::Dia: return MOp::Dia;
    case Op::Box: return MOp::Box;
    case Op::GDia: return MOp::GDia;
    default: return MOp::GBox;
    }
}

struct MclBuilder {
    using T = Mcl;
    T bot() const { return m_bot(); }
    T top() const { return m_top(); }
    T atom(const Token& t) const { return m_prop(t.text); }
    T neg(T a) const { return m_not(std::move(a)); }
    T lor(T a, T b) const { return m_or(std::move(a), std::move(b)); }
    T land(T a, T b) const { return m_and(std::move(a), std::move(b)); }
    T modal(Op op, int k, T a) const { return m_modal(mop(op), k, std::move(a)); }
    T label(const Token& t, T a) const { return m_label(t.text, std::move(a)); }
    T claim(const Token& t) const { return m_claim(t.text); }
};

template <class B>
class Parser {
public:
    using T = typename B::T;

    Parser(std::vector<Token> toks, const B& b, std::string file) : t_(std::move(toks)), b_(b), file_(std::move(file)) {}

    T parse_all()
    {
        T r = iff();
        if (cur().kind != Tok::End)
            fail(cur(), "unexpected token after the end of the formula");
        return r;
    }

private:
    const Token& cur() const { return t_[p_]; }
    const Token& take() { return t_[p_++]; }

    [[noreturn]] void fail(const Token& t, const std::string& msg) const
    {
        throw ParseError(SourceSpan{file_, t.line, t.col, t.col + std::max(1, t.len)}, msg);
    }

    T iff()
    {
        T a = imp();
        while (cur().kind == Tok::Iff) {
            take();
            T c = imp();
            a = b_.land(b_.lor(b_.neg(a), c), b_.lor(b_.neg(c), a));
        }
        return a;
    }

    T imp()
    {
        T a = disj();
        if (cur().kind == Tok::Imp) {
            take();
            T c = imp();
            return b_.lor(b_.neg(a), c);
        }
        return a;
    }

    T disj()
    {
        T a = conj();
        while (cur().kind == Tok::Or) {
            take();
            a = b_.lor(a, conj());
        }
        return a;
    }

    T conj()
    {
        T a = unary();
        while (cur().kind == Tok::And) {
            take();
            a = b_.land(a, unary());
        }
        return a;
    }

    T unary()
    {
        const Token& t = cur();
        switch (t.kind) {
        case Tok::Not: take(); return b_.neg(unary());
        case Tok::Modal: {
            Token m = take();
            T a = unary();
            if (!m.eq)
                return b_.modal(m.op, m.k, a);
            // Exactly-k forms, desugared into the core grammar.
            bool dia = m.op == Op::Dia || m.op == Op::GDia;
            if (m.k == 0)
                return dia ? b_.neg(b_.modal(m.op, 1, a)) : b_.modal(m.op, 1, a);
            if (dia)
                return b_.land(b_.modal(m.op, m.k, a), b_.neg(b_.modal(m.op, m.k + 1, a)));
            return b_.land(b_.neg(b_.modal(m.op, m.k, a)), b_.modal(m.op, m.k + 1, a));
        }
        case Tok::LParen: {
            take();
            T a = iff();
            if (cur().kind != Tok::RParen)
                fail(cur(), "expected ')'");
            take();
            return a;
        }
        case Tok::Label: {
            Token l = take();
            if (cur().kind != Tok::LParen)
                fail(cur(), "expected '(' after label " + l.text);
            take();
            T a = iff();
            if (cur().kind != Tok::RParen)
                fail(cur(), "expected ')'");
            take();
            return b_.label(l, a);
        }
        case Tok::Claim: return b_.claim(take());
        case Tok::Ident: {
            Token id = take();
            if (id.text == "T")
                return b_.top();
            if (id.text == "F")
                return b_.bot();
            return b_.atom(id);
        }
        case Tok::End: fail(t, "unexpected end of formula");
        default: fail(t, "unexpected token");
        }
    }

    std::vector<Token> t_;
    const B& b_;
    std::string file_;
    std::size_t p_ = 0;
};

// ---------------------------------------------------------------- line helpers

struct Word {
    std::string text;
    int col;  // 1-based
};

struct Line {
    int number;
    std::string raw;  // comment stripped
    std::vector<Word> words;
};

std::vector<Line> split_lines(const std::string& text)
{
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int n = 0;
    while (std::getline(in, raw)) {
        ++n;
        if (!raw.empty() && raw.back() == '\r')
            raw.pop_back();
        auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw = raw.substr(0, hash);
        Line l{n, raw, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i])))
                ++i;
            std::size_t j = i;
            while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j])))
                ++j;
            if (j > i)
                l.words.push_back({raw.substr(i, j - i), static_cast<int>(i) + 1});
            i = j;
        }
        if (!l.words.empty())
            out.push_back(std::move(l));
    }
    return out;
}

[[noreturn]] void fail_at(const std::string& file, const Line& l, const Word& w, const std::string& msg)
{
    throw ParseError(SourceSpan{file, l.number, w.col, w.col + static_cast<int>(w.text.size())}, msg);
}

[[noreturn]] void fail_line(const std::string& file, const Line& l, const std::string& msg)
{
    throw ParseError(SourceSpan{file, l.number, 1, static_cast<int>(l.raw.size()) + 1}, msg);
}

bool is_name(const std::string& s, bool dotted = false)
{
    if (s.empty() || !ident_start(s[0]))
        return false;
    return std::all_of(s.begin(), s.end(), [&](char c) { return ident_char(c, dotted); });
}

int parse_int(const std::string& file, const Line& l, const Word& w)
{
    if (w.text.empty() || !std::all_of(w.text.begin(), w.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        fail_at(file, l, w, "expected a non-negative integer, got '" + w.text + "'");
    try {
        return std::stoi(w.text);
    } catch (const std::exception&) {
        fail_at(file, l, w, "integer out of range");
    }
}

template <class B>
typename B::T parse_formula_text(const std::string& text, const B& b, const std::string& file, int line, int col,
                                 bool mcl)
{
    Lexer lx(text, file, line, col, mcl);
    Parser<B> ps(lx.run(), b, file);
    return ps.parse_all();
}

}  // namespace

// ---------------------------------------------------------------- programs

Schema parse_schema(const std::string& text, const std::vector<std::string>& vars)
{
    std::set<std::string> vs(vars.begin(), vars.end());
    SchemaBuilder b{&vs, false, ""};
    return parse_formula_text(text, b, "", 1, 1, false);
}

Program parse_program(const std::string& text, const std::string& file)
{
    struct RuleText {
        std::string body;
        int line;
        int col;
        Line src;
    };
    std::optional<Fragment> declared;
    Line header_line{0, "", {}};
    Semantics sem = Semantics::Sync;
    std::vector<std::pair<Line, std::vector<Word>>> accept_lines;
    std::vector<std::pair<Line, std::vector<Word>>> reject_lines;
    std::vector<std::string> order;
    std::map<std::string, RuleText> base_rules;
    std::map<std::string, RuleText> ind_rules;
    bool seen_header = false;

    for (const Line& l : split_lines(text)) {
        const std::string& w0 = l.words[0].text;
        if (w0 == "program" && l.words.size() >= 2 && l.raw.find(":=") == std::string::npos) {
            if (seen_header)
                fail_at(file, l, l.words[0], "duplicate program header");
            seen_header = true;
            header_line = l;
            try {
                declared = parse_fragment_name(l.words[1].text);
            } catch (const ValidationError&) {
                fail_at(file, l, l.words[1], "unknown fragment '" + l.words[1].text + "'");
            }
            for (std::size_t i = 2; i < l.words.size(); ++i) {
                if (l.words[i].text == "async")
                    sem = Semantics::Async;
                else if (l.words[i].text == "sync")
                    sem = Semantics::Sync;
                else
                    fail_at(file, l, l.words[i], "expected 'async' or 'sync'");
            }
            continue;
        }
        if ((w0 == "accept" || w0 == "reject") && l.raw.find(":=") == std::string::npos) {
            std::vector<Word> names(l.words.begin() + 1, l.words.end());
            (w0 == "accept" ? accept_lines : reject_lines).emplace_back(l, names);
            continue;
        }
        // A rule: NAME [(0)] := BODY
        auto assign = l.raw.find(":=");
        if (assign == std::string::npos)
            fail_at(file, l, l.words[0], "expected a rule 'X(0) := ...' or 'X := ...'");
        std::string lhs = l.raw.substr(0, assign);
        std::string compact;
        for (char c : lhs)
            if (!std::isspace(static_cast<unsigned char>(c)))
                compact += c;
        bool is_base = false;
        std::string head = compact;
        if (compact.size() > 3 && compact.compare(compact.size() - 3, 3, "(0)") == 0) {
            is_base = true;
            head = compact.substr(0, compact.size() - 3);
        }
        if (!is_name(head) || head == "T" || head == "F")
            fail_at(file, l, l.words[0], "malformed rule head '" + lhs + "'");
        auto& table = is_base ? base_rules : ind_rules;
        if (table.count(head))
            fail_at(file, l, l.words[0], std::string("duplicate ") + (is_base ? "base" : "induction") +
                                             " rule for '" + head + "'");
        if (std::find(order.begin(), order.end(), head) == order.end())
            order.push_back(head);
        table[head] = RuleText{l.raw.substr(assign + 2), l.number, static_cast<int>(assign) + 3, l};
    }

    Program p;
    std::set<std::string> heads(order.begin(), order.end());
    for (const auto& h : order) {
        auto b = base_rules.find(h);
        auto r = ind_rules.find(h);
        if (b == base_rules.end() || r == ind_rules.end()) {
            const RuleText& have = b != base_rules.end() ? b->second : r->second;
            fail_at(file, have.src, have.src.words[0],
                    "'" + h + "' needs both a base rule and an induction rule");
        }
        SchemaBuilder bb{&heads, true, file};
        SchemaBuilder ib{&heads, false, file};
        Schema base = parse_formula_text(b->second.body, bb, file, b->second.line, b->second.col, false);
        Schema ind = parse_formula_text(r->second.body, ib, file, r->second.line, r->second.col, false);
        p.add_variable(h, base, ind);
    }
    std::set<std::string> accepted;
    auto collect = [&](const auto& lines, std::vector<std::string>& into) {
        for (const auto& [l, names] : lines)
            for (const auto& w : names) {
                if (!heads.count(w.text))
                    fail_at(file, l, w, "'" + w.text + "' is not a head predicate");
                into.push_back(w.text);
            }
    };
    std::vector<std::string> acc;
    std::vector<std::string> rej;
    collect(accept_lines, acc);
    collect(reject_lines, rej);
    for (const auto& [l, names] : reject_lines)
        for (const auto& w : names)
            if (std::find(acc.begin(), acc.end(), w.text) != acc.end())
                fail_at(file, l, w, "'" + w.text + "' is both accepting and rejecting");
    p.set_accepting(acc);
    p.set_rejecting(rej);
    p.semantics = sem;
    Fragment inferred = p.inferred_fragment();
    if (declared) {
        if (static_cast<int>(inferred) > static_cast<int>(*declared))
            fail_at(file, header_line, header_line.words[1],
                    std::string("program uses ") + fragment_name(inferred) + " features but declares " +
                        fragment_name(*declared));
        p.fragment = *declared;
    } else {
        p.fragment = inferred;
    }
    p.validate();
    return p;
}

std::string serialize_program(const Program& p)
{
    std::string s = std::string("program ") + fragment_name(p.fragment);
    if (p.semantics == Semantics::Async)
        s += " async";
    s += "\naccept";
    for (int a : p.accepting)
        s += " " + p.variables[static_cast<std::size_t>(a)];
    s += "\n";
    if (!p.rejecting.empty()) {
        s += "reject";
        for (int r : p.rejecting)
            s += " " + p.variables[static_cast<std::size_t>(r)];
        s += "\n";
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        s += p.variables[i] + "(0) := " + schema_to_string(p.base[i]) + "\n";
        s += p.variables[i] + " := " + schema_to_string(p.induction[i]) + "\n";
    }
    return s;
}

// ---------------------------------------------------------------- models

PointedModel parse_model(const std::string& text, const std::string& file)
{
    std::optional<PointedModel> pm;
    bool have_point = false;
    for (const Line& l : split_lines(text)) {
        const auto& w = l.words;
        const std::string& d = w[0].text;
        auto node = [&](const Word& x) {
            int v = parse_int(file, l, x);
            if (v >= pm->model.node_count)
                fail_at(file, l, x, "node " + x.text + " is out of range (model has " +
                                        std::to_string(pm->model.node_count) + " nodes)");
            return v;
        };
        if (d == "nodes") {
            if (pm)
                fail_at(file, l, w[0], "duplicate 'nodes' line");
            if (w.size() != 2)
                fail_line(file, l, "expected 'nodes N'");
            int n = parse_int(file, l, w[1]);
            if (n < 1)
                fail_at(file, l, w[1], "a model needs at least one node");
            pm = PointedModel{KripkeModel(n), 0};
            continue;
        }
        if (!pm)
            fail_at(file, l, w[0], "the first line must be 'nodes N'");
        if (d == "edge") {
            if (w.size() != 3)
                fail_line(file, l, "expected 'edge a b'");
            int a = node(w[1]);
            int b = node(w[2]);
            pm->model.add_edge(a, b);
        } else if (d == "prop") {
            if (w.size() < 2 || !is_name(w[1].text))
                fail_line(file, l, "expected 'prop NAME n1 n2 ...'");
            pm->model.props.insert(w[1].text);
            for (std::size_t i = 2; i < w.size(); ++i)
                pm->model.set_true(node(w[i]), w[1].text);
        } else if (d == "point") {
            if (have_point)
                fail_at(file, l, w[0], "duplicate 'point' line");
            if (w.size() != 2)
                fail_line(file, l, "expected 'point n'");
            pm->point = node(w[1]);
            have_point = true;
        } else {
            fail_at(file, l, w[0], "unknown directive '" + d + "'");
        }
    }
    if (!pm)
        throw ParseError(SourceSpan{file, 1, 1, 2}, "missing 'nodes N' line");
    return *pm;
}

std::string serialize_model(const PointedModel& pm)
{
    const KripkeModel& m = pm.model;
    std::string s = "nodes " + std::to_string(m.node_count) + "\n";
    for (const auto& p : m.props) {
        s += "prop " + p;
        for (int v = 0; v < m.node_count; ++v)
            if (m.holds(v, p))
                s += " " + std::to_string(v);
        s += "\n";
    }
    for (auto [a, b] : m.edges)
        s += "edge " + std::to_string(a) + " " + std::to_string(b) + "\n";
    s += "point " + std::to_string(pm.point) + "\n";
    return s;
}

// ---------------------------------------------------------------- machines

BoundedTm parse_tm(const std::string& text, const std::string& file)
{
    BoundedTm t;
    bool have[7] = {};
    enum { kBound, kStates, kTape, kInput, kStart, kAccept, kReject };
    std::vector<std::pair<Line, std::vector<Word>>> deltas;
    std::string start_name;
    Line start_line{0, "", {}};
    std::vector<std::pair<Line, Word>> acc_words;
    std::vector<std::pair<Line, Word>> rej_words;
    auto once = [&](const Line& l, int which) {
        if (have[which])
            fail_at(file, l, l.words[0], "duplicate '" + l.words[0].text + "' line");
        have[which] = true;
    };
    for (const Line& l : split_lines(text)) {
        const auto& w = l.words;
        const std::string& d = w[0].text;
        if (d == "bound") {
            once(l, kBound);
            if (w.size() != 2)
                fail_line(file, l, "expected 'bound k'");
            t.bound = (w[1].text == "inf" || w[1].text == "unbounded") ? -1 : parse_int(file, l, w[1]);
        } else if (d == "states" || d == "tape" || d == "input") {
            once(l, d == "states" ? kStates : d == "tape" ? kTape : kInput);
            auto& into = d == "states" ? t.states : d == "tape" ? t.tape : t.input;
            for (std::size_t i = 1; i < w.size(); ++i) {
                if (std::find(into.begin(), into.end(), w[i].text) != into.end())
                    fail_at(file, l, w[i], "duplicate name '" + w[i].text + "'");
                into.push_back(w[i].text);
            }
        } else if (d == "start") {
            once(l, kStart);
            if (w.size() != 2)
                fail_line(file, l, "expected 'start q'");
            start_name = w[1].text;
            start_line = l;
        } else if (d == "accept" || d == "reject") {
            once(l, d == "accept" ? kAccept : kReject);
            for (std::size_t i = 1; i < w.size(); ++i)
                (d == "accept" ? acc_words : rej_words).emplace_back(l, w[i]);
        } else if (d == "delta") {
            if (w.size() != 7 || w[3].text != "->")
                fail_line(file, l, "expected 'delta q a -> q2 b L|R|S'");
            deltas.emplace_back(l, w);
        } else {
            fail_at(file, l, w[0], "unknown directive '" + d + "'");
        }
    }
    if (!have[kStates] || !have[kTape] || !have[kStart])
        throw ParseError(SourceSpan{file, 1, 1, 2}, "a machine needs 'states', 'tape' and 'start' lines");
    for (const auto& sym : {kTmBlank, kTmLeft, kTmRight})
        if (t.symbol_index(sym) < 0)
            throw ParseError(SourceSpan{file, 1, 1, 2}, "tape alphabet must contain '" + sym + "'");
    t.start = t.state_index(start_name);
    if (t.start < 0)
        fail_at(file, start_line, start_line.words[1], "unknown state '" + start_name + "'");
    auto state_of = [&](const Line& l, const Word& w) {
        int q = t.state_index(w.text);
        if (q < 0)
            fail_at(file, l, w, "unknown state '" + w.text + "'");
        return q;
    };
    auto symbol_of = [&](const Line& l, const Word& w) {
        int a = t.symbol_index(w.text);
        if (a < 0)
            fail_at(file, l, w, "unknown tape symbol '" + w.text + "'");
        return a;
    };
    for (const auto& [l, w] : acc_words)
        t.accepting.push_back(state_of(l, w));
    for (const auto& [l, w] : rej_words) {
        int q = state_of(l, w);
        if (t.is_accepting(q))
            fail_at(file, l, w, "state '" + w.text + "' is both accepting and rejecting");
        t.rejecting.push_back(q);
    }
    for (const auto& a : t.input)
        if (t.symbol_index(a) < 0)
            throw ParseError(SourceSpan{file, 1, 1, 2}, "input symbol '" + a + "' is not a tape symbol");
    const std::size_t na = t.tape.size();
    t.delta.assign(t.states.size() * na, Transition{-1, -1, Move::S});
    for (const auto& [l, w] : deltas) {
        int q = state_of(l, w[1]);
        int a = symbol_of(l, w[2]);
        Transition tr;
        tr.next = state_of(l, w[4]);
        tr.write = symbol_of(l, w[5]);
        if (w[6].text == "L")
            tr.move = Move::L;
        else if (w[6].text == "R")
            tr.move = Move::R;
        else if (w[6].text == "S")
            tr.move = Move::S;
        else
            fail_at(file, l, w[6], "direction must be L, R or S");
        if (t.at(q, a).next >= 0)
            fail_at(file, l, w[1], "duplicate transition for (" + w[1].text + ", " + w[2].text + ")");
        t.at(q, a) = tr;
    }
    for (int q = 0; q < static_cast<int>(t.states.size()); ++q)
        for (int a = 0; a < static_cast<int>(na); ++a) {
            if (t.at(q, a).next >= 0)
                continue;
            // Halting states never move; unbounded machines never read the right marker.
            if (t.is_halting(q) || (t.unbounded() && a == t.right())) {
                t.at(q, a) = Transition{q, a, Move::S};
                continue;
            }
            throw ParseError(SourceSpan{file, 1, 1, 2}, "missing transition delta(" + t.states[static_cast<std::size_t>(q)] +
                                                             ", " + t.tape[static_cast<std::size_t>(a)] + ")");
        }
    try {
        t.validate();
    } catch (const ValidationError& e) {
        throw ParseError(SourceSpan{file, 1, 1, 2}, e.what());
    }
    return t;
}

std::string serialize_tm(const BoundedTm& t)
{
    auto join = [](const std::vector<std::string>& xs) {
        std::string s;
        for (const auto& x : xs)
            s += " " + x;
        return s;
    };
    auto names = [&](const std::vector<int>& qs) {
        std::vector<std::string> out;
        for (int q : qs)
            out.push_back(t.states[static_cast<std::size_t>(q)]);
        return out;
    };
    std::string s = "bound " + (t.unbounded() ? std::string("inf") : std::to_string(t.bound)) + "\n";
    s += "states" + join(t.states) + "\n";
    s += "tape" + join(t.tape) + "\n";
    s += "input" + join(t.input) + "\n";
    s += "start " + t.states[static_cast<std::size_t>(t.start)] + "\n";
    s += "accept" + join(names(t.accepting)) + "\n";
    s += "reject" + join(names(t.rejecting)) + "\n";
    const char* dir[] = {"L", "S", "R"};
    for (std::size_t q = 0; q < t.states.size(); ++q)
        for (std::size_t a = 0; a < t.tape.size(); ++a) {
            const Transition& tr = t.at(static_cast<int>(q), static_cast<int>(a));
            s += "delta " + t.states[q] + " " + t.tape[a] + " -> " + t.states[static_cast<std::size_t>(tr.next)] + " " +
                 t.tape[static_cast<std::size_t>(tr.write)] + " " + dir[static_cast<int>(tr.move)] + "\n";
        }
    return s;
}

// ---------------------------------------------------------------- circuits

Circuit parse_circuit(const std::string& text, const std::string& file)
{
    Circuit c;
    std::vector<std::pair<Line, std::vector<Word>>> pending;  // gates with wires, resolved after all names are known
    std::optional<std::pair<Line, Word>> out;
    for (const Line& l : split_lines(text)) {
        const auto& w = l.words;
        if (w[0].text == "output") {
            if (out)
                fail_at(file, l, w[0], "duplicate 'output' line");
            if (w.size() != 2)
                fail_line(file, l, "expected 'output g'");
            out = std::make_pair(l, w[1]);
            continue;
        }
        if (w[0].text != "gate")
            fail_at(file, l, w[0], "unknown directive '" + w[0].text + "'");
        if (w.size() < 3)
            fail_line(file, l, "expected 'gate NAME KIND ...'");
        if (!is_name(w[1].text))
            fail_at(file, l, w[1], "malformed gate name");
        if (c.gate_index(w[1].text) >= 0)
            fail_at(file, l, w[1], "duplicate gate '" + w[1].text + "'");
        Gate g;
        g.name = w[1].text;
        const std::string& kind = w[2].text;
        if (kind == "input") {
            if (w.size() < 4)
                fail_line(file, l, "expected 'gate NAME input VAR'");
            if (w.size() > 4)
                fail_at(file, l, w[4], "input gates cannot have incoming wires");
            g.kind = Gate::Kind::Input;
            g.var = w[3].text;
        } else if (kind == "and" || kind == "or" || kind == "not") {
            g.kind = kind == "and" ? Gate::Kind::And : kind == "or" ? Gate::Kind::Or : Gate::Kind::Not;
            if (w.size() < 4)
                fail_line(file, l, "a " + kind + " gate needs at least one input");
            if (g.kind == Gate::Kind::Not && w.size() != 4)
                fail_line(file, l, "a not gate has exactly one input");
            pending.emplace_back(l, w);
        } else {
            fail_at(file, l, w[2], "gate kind must be input, and, or or not");
        }
        c.gates.push_back(g);
    }
    for (const auto& [l, w] : pending) {
        Gate& g = c.gates[static_cast<std::size_t>(c.gate_index(w[1].text))];
        for (std::size_t i = 3; i < w.size(); ++i) {
            int j = c.gate_index(w[i].text);
            if (j < 0)
                fail_at(file, l, w[i], "unknown gate '" + w[i].text + "'");
            g.inputs.push_back(j);
        }
    }
    if (!out)
        throw ParseError(SourceSpan{file, 1, 1, 2}, "missing 'output' line");
    c.output = c.gate_index(out->second.text);
    if (c.output < 0)
        fail_at(file, out->first, out->second, "unknown gate '" + out->second.text + "'");
    try {
        c.validate();
    } catch (const ValidationError& e) {
        fail_line(file, out->first, e.what());
    }
    return c;
}

std::string serialize_circuit(const Circuit& c)
{
    std::string s;
    for (const Gate& g : c.gates) {
        s += "gate " + g.name + " ";
        switch (g.kind) {
        case Gate::Kind::Input: s += "input " + g.var; break;
        case Gate::Kind::And: s += "and"; break;
        case Gate::Kind::Or: s += "or"; break;
        case Gate::Kind::Not: s += "not"; break;
        }
        for (int i : g.inputs)
            s += " " + c.gates[static_cast<std::size_t>(i)].name;
        s += "\n";
    }
    s += "output " + c.gates[static_cast<std::size_t>(c.output)].name + "\n";
    return s;
}

// ---------------------------------------------------------------- QBFs

Qbf parse_qbf(const std::string& text, const std::string& file)
{
    Qbf q;
    bool have_matrix = false;
    for (const Line& l : split_lines(text)) {
        const auto& w = l.words;
        if (w[0].text == "forall" || w[0].text == "exists") {
            if (have_matrix)
                fail_at(file, l, w[0], "quantifiers must precede the matrix");
            if (w.size() < 2)
                fail_line(file, l, "expected a variable name");
            for (std::size_t i = 1; i < w.size(); ++i) {
                if (!is_name(w[i].text) || w[i].text == "T" || w[i].text == "F")
                    fail_at(file, l, w[i], "malformed variable name");
                for (const auto& qq : q.prefix)
                    if (qq.var == w[i].text)
                        fail_at(file, l, w[i], "variable '" + w[i].text + "' is quantified twice");
                q.prefix.push_back({w[0].text == "forall", w[i].text});
            }
        } else if (w[0].text == "matrix") {
            if (have_matrix)
                fail_at(file, l, w[0], "duplicate matrix");
            have_matrix = true;
            int col = w[0].col + 6;
            SchemaBuilder b{nullptr, false, file};
            q.matrix = parse_formula_text(l.raw.substr(static_cast<std::size_t>(col - 1)), b, file, l.number, col, false);
            if (schema_fragment(q.matrix) != Fragment::SC)
                fail_line(file, l, "the matrix must be propositional");
            std::set<std::string> used;
            collect_props(q.matrix, used);
            for (const auto& v : used) {
                bool bound = std::any_of(q.prefix.begin(), q.prefix.end(), [&](const Quantifier& x) { return x.var == v; });
                if (!bound)
                    fail_line(file, l, "unbound variable '" + v + "' in the matrix");
            }
        } else {
            fail_at(file, l, w[0], "expected 'forall', 'exists' or 'matrix'");
        }
    }
    if (!have_matrix)
        throw ParseError(SourceSpan{file, 1, 1, 2}, "missing 'matrix' line");
    return q;
}

std::string serialize_qbf(const Qbf& q)
{
    std::string s;
    for (const auto& x : q.prefix)
        s += std::string(x.forall ? "forall " : "exists ") + x.var + "\n";
    s += "matrix " + schema_to_string(q.matrix) + "\n";
    return s;
}

// ---------------------------------------------------------------- MCL

Mcl parse_mcl(const std::string& text, const std::string& file)
{
    MclBuilder b;
    return parse_formula_text(text, b, file, 1, 1, true);
}

std::string serialize_mcl(const Mcl& f) { return mcl_to_string(f) + "\n"; }

// ---------------------------------------------------------------- files

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write '" + path + "'");
    out << text;
}

}  // namespace msc
