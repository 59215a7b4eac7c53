#include "msc/reductions.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "msc/errors.hpp"
#include "msc/eval.hpp"
#include "msc/games.hpp"
#include "msc/tmbridge.hpp"

namespace msc {

// ---------------------------------------------------------------- circuits

int Circuit::gate_index(const std::string& name) const
{
    for (std::size_t i = 0; i < gates.size(); ++i)
        if (gates[i].name == name)
            return static_cast<int>(i);
    return -1;
}

std::vector<std::string> Circuit::input_vars() const
{
    std::vector<std::string> out;
    for (const Gate& g : gates)
        if (g.kind == Gate::Kind::Input && std::find(out.begin(), out.end(), g.var) == out.end())
            out.push_back(g.var);
    return out;
}

void Circuit::validate() const
{
    const int n = static_cast<int>(gates.size());
    if (n == 0)
        throw ValidationError("circuit has no gates");
    if (output < 0 || output >= n)
        throw ValidationError("output gate out of range");
    std::vector<int> outdeg(static_cast<std::size_t>(n), 0);
    for (const Gate& g : gates) {
        if (g.kind == Gate::Kind::Input && !g.inputs.empty())
            throw ValidationError("input gate '" + g.name + "' has incoming wires");
        if (g.kind == Gate::Kind::Input && g.var.empty())
            throw ValidationError("input gate '" + g.name + "' names no variable");
        if (g.kind == Gate::Kind::Not && g.inputs.size() != 1)
            throw ValidationError("not gate '" + g.name + "' must have exactly one input");
        if ((g.kind == Gate::Kind::And || g.kind == Gate::Kind::Or) && g.inputs.empty())
            throw ValidationError("gate '" + g.name + "' has no inputs");
        for (int i : g.inputs) {
            if (i < 0 || i >= n)
                throw ValidationError("gate '" + g.name + "' has a wire from an unknown gate");
            ++outdeg[static_cast<std::size_t>(i)];
        }
    }
    // 0 unvisited, 1 on the stack, 2 done
    std::vector<int> mark(static_cast<std::size_t>(n), 0);
    std::function<void(int)> visit = [&](int v) {
        mark[static_cast<std::size_t>(v)] = 1;
        for (int u : gates[static_cast<std::size_t>(v)].inputs) {
            if (mark[static_cast<std::size_t>(u)] == 1)
                throw ValidationError("circuit has a cycle through gate '" + gates[static_cast<std::size_t>(u)].name + "'");
            if (mark[static_cast<std::size_t>(u)] == 0)
                visit(u);
        }
        mark[static_cast<std::size_t>(v)] = 2;
    };
    for (int v = 0; v < n; ++v)
        if (mark[static_cast<std::size_t>(v)] == 0)
            visit(v);
    int sinks = 0;
    for (int v = 0; v < n; ++v)
        if (outdeg[static_cast<std::size_t>(v)] == 0) {
            ++sinks;
            if (v != output)
                throw ValidationError("gate '" + gates[static_cast<std::size_t>(v)].name +
                                      "' has no outgoing wire but is not the output");
        }
    if (sinks != 1)
        throw ValidationError("the output gate feeds another gate");
}

bool operator==(const Circuit& a, const Circuit& b)
{
    if (a.output != b.output || a.gates.size() != b.gates.size())
        return false;
    for (std::size_t i = 0; i < a.gates.size(); ++i) {
        const Gate& x = a.gates[i];
        const Gate& y = b.gates[i];
        if (x.name != y.name || x.kind != y.kind || x.var != y.var || x.inputs != y.inputs)
            return false;
    }
    return true;
}

bool eval_circuit(const Circuit& c, const std::vector<bool>& bits)
{
    const auto vars = c.input_vars();
    if (bits.size() != vars.size())
        throw ValidationError("circuit has " + std::to_string(vars.size()) + " inputs, got " +
                              std::to_string(bits.size()) + " bits");
    std::vector<int> memo(c.gates.size(), -1);
    std::function<bool(int)> value = [&](int v) -> bool {
        int& m = memo[static_cast<std::size_t>(v)];
        if (m >= 0)
            return m == 1;
        const Gate& g = c.gates[static_cast<std::size_t>(v)];
        bool r = false;
        switch (g.kind) {
        case Gate::Kind::Input:
            r = bits[static_cast<std::size_t>(std::find(vars.begin(), vars.end(), g.var) - vars.begin())];
            break;
        case Gate::Kind::Not: r = !value(g.inputs[0]); break;
        case Gate::Kind::And:
            r = true;
            for (int u : g.inputs)
                r = value(u) && r;
            break;
        case Gate::Kind::Or:
            for (int u : g.inputs)
                r = value(u) || r;
            break;
        }
        m = r ? 1 : 0;
        return r;
    };
    return value(c.output);
}

Program circuit_to_sc_async(const Circuit& c)
{
    c.validate();
    Program p;
    auto pred = [&](int g) { return "X_" + c.gates[static_cast<std::size_t>(g)].name; };
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        if (g.kind == Gate::Kind::Input) {
            // The induction body repeats the input rather than referring back to X_I: a
            // verifier under a negation could otherwise iterate forever and avoid losing.
            p.add_variable(pred(static_cast<int>(i)), s_prop(g.var), s_prop(g.var));
            continue;
        }
        std::vector<Schema> in;
        for (int u : g.inputs)
            in.push_back(s_var(pred(u)));
        Schema body = g.kind == Gate::Kind::Not ? s_not(in[0]) : g.kind == Gate::Kind::And ? s_and_all(in) : s_or_all(in);
        p.add_variable(pred(static_cast<int>(i)), s_bot(), body);
    }
    p.set_accepting({pred(c.output)});
    p.semantics = Semantics::Async;
    p.fragment = Fragment::SC;
    p.validate();
    return p;
}

PointedModel bits_to_model(const Circuit& c, const std::vector<bool>& bits)
{
    const auto vars = c.input_vars();
    if (bits.size() != vars.size())
        throw ValidationError("circuit has " + std::to_string(vars.size()) + " inputs, got " +
                              std::to_string(bits.size()) + " bits");
    std::set<std::string> on;
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (bits[i])
            on.insert(vars[i]);
    return sc_model(on, {vars.begin(), vars.end()});
}

bool circuit_async_accepts(const Circuit& c, const std::vector<bool>& bits)
{
    return solve_async_game(circuit_to_sc_async(c), bits_to_model(c, bits)).winner == Winner::Eloise;
}

// ---------------------------------------------------------------- QBF

void Qbf::validate() const
{
    std::set<std::string> bound;
    for (const auto& q : prefix) {
        if (q.var.empty())
            throw ValidationError("quantifier without a variable");
        if (!bound.insert(q.var).second)
            throw ValidationError("variable '" + q.var + "' is quantified twice");
    }
    if (!matrix)
        throw ValidationError("QBF has no matrix");
    std::function<void(const Schema&)> check = [&](const Schema& s) {
        switch (s->op) {
        case Op::Top:
        case Op::Bottom: return;
        case Op::Prop:
            if (!bound.count(s->name))
                throw ValidationError("unbound variable '" + s->name + "'");
            return;
        case Op::Not: check(s->left); return;
        case Op::Or:
        case Op::And:
            check(s->left);
            check(s->right);
            return;
        default: throw ValidationError("QBF matrix must be propositional");
        }
    };
    check(matrix);
}

bool operator==(const Qbf& a, const Qbf& b)
{
    if (a.prefix.size() != b.prefix.size() || !schema_equal(a.matrix, b.matrix))
        return false;
    for (std::size_t i = 0; i < a.prefix.size(); ++i)
        if (a.prefix[i].forall != b.prefix[i].forall || a.prefix[i].var != b.prefix[i].var)
            return false;
    return true;
}

namespace {

bool eval_matrix(const Schema& s, const std::map<std::string, bool>& env)
{
    switch (s->op) {
    case Op::Top: return true;
    case Op::Bottom: return false;
    case Op::Prop: return env.at(s->name);
    case Op::Not: return !eval_matrix(s->left, env);
    case Op::Or: return eval_matrix(s->left, env) || eval_matrix(s->right, env);
    case Op::And: return eval_matrix(s->left, env) && eval_matrix(s->right, env);
    default: throw ValidationError("QBF matrix must be propositional");
    }
}

bool eval_from(const Qbf& q, std::size_t i, std::map<std::string, bool>& env)
{
    if (i == q.prefix.size())
        return eval_matrix(q.matrix, env);
    bool r = q.prefix[i].forall;
    for (bool v : {false, true}) {
        env[q.prefix[i].var] = v;
        bool sub = eval_from(q, i + 1, env);
        r = q.prefix[i].forall ? (r && sub) : (r || sub);
    }
    return r;
}

// ---- the fixed QBF machine
//
// Tape: L w1 sep w2 sep w3 sep w4 R, where w1 holds one assignment bit per variable,
// w2 the matrix in postfix (variable i is "var" followed by i strokes "one"), w3 a
// scratch region as long as w2, and w4 one flag per quantifier (A = universal,
// E = existential, followed by its current value).
//
// Main loop, once per assignment:
//   1. clear w3 and copy w2 into it
//   2. replace each var token in w3 by the value of its bit: strokes are matched
//      one by one against marked bits of w1, the last bit marked is the variable's
//   3. reduce the leftmost operator against the nearest values on its left until a
//      single value remains
//   4. fold that value into the last flag (and for universals, or for existentials)
//   5. increment w1: each trailing 1 becomes z; for each z the rightmost unfinished
//      flag is folded into its left neighbour and reset to its neutral value. Folding
//      the first flag means every assignment has been seen; its value decides.

class TmBuilder {
public:
    TmBuilder(std::vector<std::string> tape, std::vector<std::string> input) : tape_(std::move(tape)), input_(std::move(input)) {}

    int state(const std::string& name)
    {
        auto it = ids_.find(name);
        if (it != ids_.end())
            return it->second;
        int id = static_cast<int>(states_.size());
        states_.push_back(name);
        ids_.emplace(name, id);
        return id;
    }

    // write == "" keeps the symbol
    void on(const std::string& q, const std::string& a, const std::string& next, const std::string& write, Move m)
    {
        rules_[{state(q), sym(a)}] = Rule{state(next), write.empty() ? sym(a) : sym(write), m};
    }
    void on(const std::string& q, std::initializer_list<std::string> as, const std::string& next, Move m)
    {
        for (const auto& a : as)
            on(q, a, next, "", m);
    }
    // Every symbol without a rule so far, end markers excluded.
    void otherwise(const std::string& q, const std::string& next, Move m)
    {
        for (const auto& a : tape_) {
            if (a == kTmLeft || a == kTmRight)
                continue;
            if (!rules_.count({state(q), sym(a)}))
                on(q, a, next, "", m);
        }
    }

    BoundedTm build(const std::string& start, const std::string& acc, const std::string& rej, int bound)
    {
        BoundedTm t;
        t.bound = bound;
        t.tape = tape_;
        t.input = input_;
        int qa = state(acc);
        int qr = state(rej);
        t.states = states_;
        t.start = state(start);
        t.accepting = {qa};
        t.rejecting = {qr};
        const int na = static_cast<int>(tape_.size());
        t.delta.assign(states_.size() * tape_.size(), Transition{});
        for (int q = 0; q < static_cast<int>(states_.size()); ++q)
            for (int a = 0; a < na; ++a) {
                auto it = rules_.find({q, a});
                if (it != rules_.end() && q != qa && q != qr)
                    t.at(q, a) = Transition{it->second.next, it->second.write, it->second.move};
                else
                    t.at(q, a) = Transition{t.is_halting(q) ? q : qr, a, Move::S};
            }
        t.validate();
        return t;
    }

private:
    struct Rule {
        int next;
        int write;
        Move move;
    };
    int sym(const std::string& a) const
    {
        auto it = std::find(tape_.begin(), tape_.end(), a);
        if (it == tape_.end())
            throw Error("internal: unknown symbol " + a);
        return static_cast<int>(it - tape_.begin());
    }
    std::vector<std::string> tape_;
    std::vector<std::string> input_;
    std::vector<std::string> states_;
    std::map<std::string, int> ids_;
    std::map<std::pair<int, int>, Rule> rules_;
};

const std::vector<std::string> kTokens = {"var", "one", "and", "or", "not", "tt", "ff"};

BoundedTm build_qbf_machine()
{
    std::vector<std::string> tape = {kTmBlank, kTmLeft, kTmRight, "b0", "b1", "c0", "c1", "z", "sep", "gap"};
    for (const auto& t : kTokens)
        tape.push_back(t);
    for (const auto& t : kTokens)
        tape.push_back(t + "_m");
    for (const auto& f : {"A0", "A1", "E0", "E1", "A1m", "E0m"})
        tape.emplace_back(f);
    TmBuilder b(tape, {"b0", "sep", "gap", "var", "one", "and", "or", "not", "tt", "ff", "A1", "E0"});
    const Move L = Move::L, R = Move::R, S = Move::S;
    const std::vector<std::string> tv = {"tt", "ff"};
    auto neg = [](const std::string& v) { return v == "tt" ? std::string("ff") : std::string("tt"); };

    // 1. walk to w3, clear it, copy w2 token by token
    b.on("go_w3", {"sep"}, "go_w3b", R);
    b.otherwise("go_w3", "go_w3", R);
    b.on("go_w3b", {"sep"}, "clear", R);
    b.otherwise("go_w3b", "go_w3b", R);
    b.on("clear", {"sep"}, "cp_seek", L);
    b.otherwise("clear", "clear", R);
    for (const auto& a : tape)
        if (a != kTmLeft && a != kTmRight && a != "sep")
            b.on("clear", a, "clear", "gap", R);
    b.on("cp_seek", {"sep"}, "cp_scan", L);
    b.otherwise("cp_seek", "cp_seek", L);
    for (const auto& t : kTokens) {
        b.on("cp_scan", {t}, "cp_scan", L);
        b.on("cp_scan", {t + "_m"}, "cp_take", R);
    }
    b.on("cp_scan", {"sep"}, "cp_take", R);
    for (const auto& t : kTokens) {
        b.on("cp_take", t, "cp_carry_" + t, t + "_m", R);
        b.on("cp_carry_" + t, {"sep"}, "cp_put_" + t, R);
        b.otherwise("cp_carry_" + t, "cp_carry_" + t, R);
        b.on("cp_put_" + t, "gap", "cp_ret", t, L);
        b.otherwise("cp_put_" + t, "cp_put_" + t, R);
    }
    b.on("cp_take", {"sep"}, "cp_unmark", L);
    b.on("cp_ret", {"sep"}, "cp_scan", L);
    b.otherwise("cp_ret", "cp_ret", L);
    for (const auto& t : kTokens)
        b.on("cp_unmark", t + "_m", "cp_unmark", t, L);
    b.on("cp_unmark", {"sep"}, "sub_go", R);
    b.on("sub_go", {"sep"}, "sub_find", R);
    b.otherwise("sub_go", "sub_go", R);

    // 2. substitute variables
    b.on("sub_find", {"var"}, "sub_stroke", R);
    b.on("sub_find", {"sep"}, "red_back", L);
    b.otherwise("sub_find", "sub_find", R);
    b.on("sub_stroke", {"one_m"}, "sub_stroke", R);
    b.on("sub_stroke", "one", "mk_a", "one_m", L);
    b.otherwise("sub_stroke", "val_a", L);
    b.on("mk_a", {"sep"}, "mk_b", L);
    b.otherwise("mk_a", "mk_a", L);
    b.on("mk_b", {"sep"}, "mk_scan", L);
    b.otherwise("mk_b", "mk_b", L);
    b.on("mk_scan", {"b0", "b1"}, "mk_scan", L);
    b.on("mk_scan", {"c0", "c1", kTmLeft}, "mk_do", R);
    b.on("mk_do", "b0", "bv_a", "c0", R);
    b.on("mk_do", "b1", "bv_a", "c1", R);
    b.on("bv_a", {"sep"}, "bv_b", R);
    b.otherwise("bv_a", "bv_a", R);
    b.on("bv_b", {"sep"}, "bv_c", R);
    b.otherwise("bv_b", "bv_b", R);
    b.on("bv_c", {"var"}, "sub_stroke", R);
    b.otherwise("bv_c", "bv_c", R);
    b.on("val_a", {"sep"}, "val_b", L);
    b.otherwise("val_a", "val_a", L);
    b.on("val_b", {"sep"}, "val_scan", L);
    b.otherwise("val_b", "val_b", L);
    b.on("val_scan", {"b0", "b1"}, "val_scan", L);
    b.on("val_scan", "c0", "un_ff", "b0", L);
    b.on("val_scan", "c1", "un_tt", "b1", L);
    for (const auto& v : tv) {
        b.on("un_" + v, "c0", "un_" + v, "b0", L);
        b.on("un_" + v, "c1", "un_" + v, "b1", L);
        b.on("un_" + v, {"b0", "b1"}, "un_" + v, L);
        b.on("un_" + v, {kTmLeft}, "wr_" + v + "_a", R);
        b.on("wr_" + v + "_a", {"sep"}, "wr_" + v + "_b", R);
        b.otherwise("wr_" + v + "_a", "wr_" + v + "_a", R);
        b.on("wr_" + v + "_b", {"sep"}, "wr_" + v + "_c", R);
        b.otherwise("wr_" + v + "_b", "wr_" + v + "_b", R);
        b.on("wr_" + v + "_c", "var", "clr", v, R);
        b.otherwise("wr_" + v + "_c", "wr_" + v + "_c", R);
    }
    b.on("clr", "one_m", "clr", "gap", R);
    b.otherwise("clr", "sub_find", S);

    // 3. reduce operators
    b.on("red_back", {"sep"}, "red_find", R);
    b.otherwise("red_back", "red_back", L);
    b.on("red_find", {"tt", "ff", "gap"}, "red_find", R);
    b.on("red_find", {"and"}, "rb_and", L);
    b.on("red_find", {"or"}, "rb_or", L);
    b.on("red_find", {"not"}, "rn", L);
    b.on("red_find", {"sep"}, "res", L);
    b.on("rn", {"gap"}, "rn", L);
    for (const auto& v : tv)
        b.on("rn", v, "put_" + neg(v), "gap", R);
    for (const std::string op : {"and", "or"}) {
        b.on("rb_" + op, {"gap"}, "rb_" + op, L);
        for (const auto& v : tv) {
            const std::string st = "ra_" + op + "_" + v;
            b.on("rb_" + op, v, st, "gap", L);
            b.on(st, {"gap"}, st, L);
            for (const auto& u : tv) {
                bool x = u == "tt", y = v == "tt";
                bool r = op == "and" ? (x && y) : (x || y);
                b.on(st, u, std::string("put_") + (r ? "tt" : "ff"), "gap", R);
            }
        }
    }
    for (const auto& r : tv) {
        b.on("put_" + r, {"gap"}, "put_" + r, R);
        for (const std::string op : {"and", "or", "not"})
            b.on("put_" + r, op, "red_back", r, L);
    }
    b.on("res", {"gap"}, "res", L);
    b.on("res", {"tt"}, "fold_tt", R);
    b.on("res", {"ff"}, "fold_ff", R);

    // 4. fold into the last flag
    for (const auto& v : tv) {
        const bool t = v == "tt";
        b.on("fold_" + v, {kTmRight}, "fat_" + v, L);
        b.otherwise("fold_" + v, "fold_" + v, R);
        b.on("fat_" + v, {"sep"}, t ? "acc" : "rej", S);
        b.on("fat_" + v, "A1", "ig3", t ? "A1" : "A0", L);
        b.on("fat_" + v, {"A0"}, "ig3", L);
        b.on("fat_" + v, "E0", "ig3", t ? "E1" : "E0", L);
        b.on("fat_" + v, {"E1"}, "ig3", L);
    }
    b.on("ig3", {"sep"}, "ig2", L);
    b.otherwise("ig3", "ig3", L);
    b.on("ig2", {"sep"}, "ig1", L);
    b.otherwise("ig2", "ig2", L);
    b.on("ig1", {"sep"}, "inc", L);
    b.otherwise("ig1", "ig1", L);

    // 5. increment and fold completed quantifiers
    b.on("inc", "b1", "inc", "z", L);
    b.on("inc", "b0", "zf", "b1", R);
    b.on("inc", {kTmLeft}, "zf", R);
    b.on("zf", {"b0", "b1"}, "zf", R);
    b.on("zf", "z", "flg", "b0", R);
    b.on("zf", {"sep"}, "unf", R);
    b.on("flg", {kTmRight}, "fsk", L);
    b.otherwise("flg", "flg", R);
    b.on("fsk", {"A1m", "E0m"}, "fsk", L);
    b.on("fsk", "A0", "fin_ff", "A1m", L);
    b.on("fsk", "A1", "fin_tt", "A1m", L);
    b.on("fsk", "E0", "fin_ff", "E0m", L);
    b.on("fsk", "E1", "fin_tt", "E0m", L);
    for (const auto& v : tv) {
        const bool t = v == "tt";
        b.on("fin_" + v, {"sep"}, t ? "acc" : "rej", S);
        b.on("fin_" + v, "A1", "ret", t ? "A1" : "A0", L);
        b.on("fin_" + v, {"A0"}, "ret", L);
        b.on("fin_" + v, "E0", "ret", t ? "E1" : "E0", L);
        b.on("fin_" + v, {"E1"}, "ret", L);
    }
    b.on("ret", {kTmLeft}, "zf", R);
    b.otherwise("ret", "ret", L);
    b.on("unf", "A1m", "unf", "A1", R);
    b.on("unf", "E0m", "unf", "E0", R);
    b.on("unf", {kTmRight}, "rs", L);
    b.otherwise("unf", "unf", R);
    b.on("rs", {kTmLeft}, "go_w3", R);
    b.otherwise("rs", "rs", L);

    return b.build("go_w3", "acc", "rej", 0);
}

void postfix(const Schema& s, const std::map<std::string, int>& index, std::vector<std::string>& out)
{
    switch (s->op) {
    case Op::Top: out.push_back("tt"); return;
    case Op::Bottom: out.push_back("ff"); return;
    case Op::Prop:
        out.push_back("var");
        for (int i = 0; i < index.at(s->name); ++i)
            out.push_back("one");
        return;
    case Op::Not:
        postfix(s->left, index, out);
        out.push_back("not");
        return;
    case Op::Or:
    case Op::And:
        postfix(s->left, index, out);
        postfix(s->right, index, out);
        out.push_back(s->op == Op::Or ? "or" : "and");
        return;
    default: throw ValidationError("QBF matrix must be propositional");
    }
}

}  // namespace

bool eval_qbf(const Qbf& q)
{
    q.validate();
    std::map<std::string, bool> env;
    return eval_from(q, 0, env);
}

const BoundedTm& qbf_machine()
{
    static const BoundedTm t = build_qbf_machine();
    return t;
}

std::vector<std::string> qbf_word(const Qbf& q)
{
    q.validate();
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < q.prefix.size(); ++i)
        index[q.prefix[i].var] = static_cast<int>(i) + 1;
    std::vector<std::string> w2;
    postfix(q.matrix, index, w2);
    std::vector<std::string> w(q.prefix.size(), "b0");
    w.push_back("sep");
    w.insert(w.end(), w2.begin(), w2.end());
    w.push_back("sep");
    w.insert(w.end(), w2.size(), "gap");
    w.push_back("sep");
    for (const auto& x : q.prefix)
        w.push_back(x.forall ? "A1" : "E0");
    return w;
}

std::pair<std::vector<std::string>, const BoundedTm*> qbf_to_lba(const Qbf& q)
{
    return {qbf_word(q), &qbf_machine()};
}

bool qbf_to_msc_pipeline(const Qbf& q)
{
    static const Program prog = compile_tm_to_msc(qbf_machine());
    return k_accepts(prog, qbf_word(q), qbf_machine().bound).accepted();
}

// ---------------------------------------------------------------- words to SC

std::string indexed_name(const std::string& base, int i) { return base + "_" + std::to_string(i); }

namespace {

struct WordSpecializer {
    int n;

    Schema at(const Schema& s, int i) const
    {
        switch (s->op) {
        case Op::Bottom:
        case Op::Top: return s;
        case Op::Prop:
            if (s->name == kLeftProp)
                return i == 0 ? s_top() : s_bot();
            if (s->name == kRightProp)
                return i == n + 1 ? s_top() : s_bot();
            if (s->name == kBlankProp)
                return s_bot();
            return i >= 1 && i <= n ? s_prop(indexed_name(s->name, i)) : s_bot();
        case Op::Var: return s_var(indexed_name(s->name, i));
        case Op::Not: {
            Schema a = at(s->left, i);
            if (a->op == Op::Top)
                return s_bot();
            if (a->op == Op::Bottom)
                return s_top();
            return s_not(a);
        }
        case Op::Or: return join(Op::Or, at(s->left, i), at(s->right, i));
        case Op::And: return join(Op::And, at(s->left, i), at(s->right, i));
        case Op::Dia:
        case Op::Box: {
            const Op op = s->op == Op::Dia ? Op::Or : Op::And;
            Schema acc = op == Op::Or ? s_bot() : s_top();
            for (int j : {i - 1, i + 1})
                if (j >= 0 && j <= n + 1)
                    acc = join(op, acc, at(s->left, j));
            return acc;
        }
        default: throw ValidationError("word specialization needs an MSC program");
        }
    }

    static Schema join(Op op, Schema a, Schema b)
    {
        const Op unit = op == Op::Or ? Op::Bottom : Op::Top;
        const Op zero = op == Op::Or ? Op::Top : Op::Bottom;
        if (a->op == zero || b->op == zero)
            return op == Op::Or ? s_top() : s_bot();
        if (a->op == unit)
            return b;
        if (b->op == unit)
            return a;
        return op == Op::Or ? s_or(a, b) : s_and(a, b);
    }
};

}  // namespace

Program msc_word_to_sc(const Program& p, int n)
{
    if (n < 0)
        throw ValidationError("word length must be non-negative");
    if (static_cast<int>(p.inferred_fragment()) > static_cast<int>(Fragment::MSC))
        throw ValidationError("word specialization needs an MSC program, got " +
                              std::string(fragment_name(p.inferred_fragment())));
    WordSpecializer ws{n};
    Program out;
    for (std::size_t x = 0; x < p.size(); ++x)
        for (int i = 0; i <= n + 1; ++i)
            out.add_variable(indexed_name(p.variables[x], i), ws.at(p.base[x], i), ws.at(p.induction[x], i));
    std::vector<std::string> acc, rej;
    for (int a : p.accepting)
        acc.push_back(indexed_name(p.variables[static_cast<std::size_t>(a)], 1));
    for (int r : p.rejecting)
        rej.push_back(indexed_name(p.variables[static_cast<std::size_t>(r)], 1));
    out.set_accepting(acc);
    out.set_rejecting(rej);
    out.semantics = p.semantics;
    out.fragment = Fragment::SC;
    out.validate();
    return out;
}

PointedModel word_to_sc_model(const Program& p, const std::vector<std::string>& word)
{
    const int n = static_cast<int>(word.size());
    std::set<std::string> on, universe;
    for (int i = 1; i <= n; ++i)
        on.insert(indexed_name(word[static_cast<std::size_t>(i - 1)], i));
    for (const auto& q : p.propositions()) {
        if (q == kLeftProp || q == kRightProp || q == kBlankProp)
            continue;
        for (int i = 1; i <= n; ++i)
            universe.insert(indexed_name(q, i));
    }
    universe.insert(on.begin(), on.end());
    return sc_model(on, universe);
}

// ---------------------------------------------------------------- SC satisfiability

namespace {

template <class Accepts>
std::optional<std::set<std::string>> enumerate_valuations(const Program& p, int max_props, Accepts accepts)
{
    if (p.inferred_fragment() != Fragment::SC)
        throw ValidationError("satisfiability is implemented for SC programs only");
    const auto props = p.propositions();
    const int k = static_cast<int>(props.size());
    if (k > max_props)
        throw ResourceError("program has " + std::to_string(k) + " propositions, enumeration cap is " +
                            std::to_string(max_props));
    const std::set<std::string> universe(props.begin(), props.end());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        std::set<std::string> on;
        for (int i = 0; i < k; ++i)
            if ((mask >> i) & 1U)
                on.insert(props[static_cast<std::size_t>(i)]);
        if (accepts(sc_model(on, universe)))
            return on;
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::set<std::string>> sc_sat(const Program& p, int max_props)
{
    Program sync = p;
    sync.semantics = Semantics::Sync;
    return enumerate_valuations(sync, max_props, [&](const PointedModel& pm) { return run(sync, pm).accepted(); });
}

std::optional<std::set<std::string>> sc_async_sat(const Program& p, int max_props)
{
    return enumerate_valuations(p, max_props,
                                [&](const PointedModel& pm) { return solve_async_game(p, pm).winner == Winner::Eloise; });
}

}  // namespace msc
