#pragma once

// Seeded generators shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "msc/model.hpp"
#include "msc/program.hpp"
#include "msc/reductions.hpp"
#include "msc/schema.hpp"

namespace corpus {

using Rng = std::mt19937;

inline int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

struct SchemaShape {
    std::vector<std::string> vars;
    std::vector<std::string> props;
    int depth = 3;
    int max_threshold = 2;
    bool modal = true;
    bool global = false;
    bool negation = true;
};

inline msc::Schema random_schema(Rng& rng, const SchemaShape& sh, int depth)
{
    using namespace msc;
    const int leaves = static_cast<int>(sh.vars.size() + sh.props.size()) + 2;
    if (depth <= 1 || pick(rng, 0, 3) == 0) {
        int i = pick(rng, 0, leaves - 1);
        if (i < static_cast<int>(sh.vars.size()))
            return s_var(sh.vars[static_cast<std::size_t>(i)]);
        i -= static_cast<int>(sh.vars.size());
        if (i < static_cast<int>(sh.props.size()))
            return s_prop(sh.props[static_cast<std::size_t>(i)]);
        return i == static_cast<int>(sh.props.size()) ? s_top() : s_bot();
    }
    std::vector<int> ops = {0, 1};
    if (sh.negation)
        ops.push_back(2);
    if (sh.modal) {
        ops.push_back(3);
        ops.push_back(4);
    }
    if (sh.global) {
        ops.push_back(5);
        ops.push_back(6);
    }
    switch (ops[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(ops.size()) - 1))]) {
    case 0: return s_or(random_schema(rng, sh, depth - 1), random_schema(rng, sh, depth - 1));
    case 1: return s_and(random_schema(rng, sh, depth - 1), random_schema(rng, sh, depth - 1));
    case 2: return s_not(random_schema(rng, sh, depth - 1));
    case 3: return s_dia(pick(rng, 1, sh.max_threshold), random_schema(rng, sh, depth - 1));
    case 4: return s_box(pick(rng, 1, sh.max_threshold), random_schema(rng, sh, depth - 1));
    case 5: return s_gdia(pick(rng, 1, sh.max_threshold), random_schema(rng, sh, depth - 1));
    default: return s_gbox(pick(rng, 1, sh.max_threshold), random_schema(rng, sh, depth - 1));
    }
}

struct ProgramShape {
    int max_rules = 4;
    std::vector<std::string> props = {"p", "q"};
    int depth = 3;
    int max_threshold = 2;
    bool modal = true;
    bool global = false;
    msc::Semantics semantics = msc::Semantics::Sync;
    bool with_rejecting = true;
};

inline msc::Program random_program(Rng& rng, const ProgramShape& ps)
{
    using namespace msc;
    const int n = pick(rng, 1, ps.max_rules);
    std::vector<std::string> vars;
    for (int i = 0; i < n; ++i)
        vars.push_back("X" + std::to_string(i));
    SchemaShape base{{}, ps.props, ps.depth, ps.max_threshold, ps.modal, ps.global, true};
    SchemaShape ind{vars, ps.props, ps.depth, ps.max_threshold, ps.modal, ps.global, true};
    Program p;
    p.semantics = ps.semantics;
    for (int i = 0; i < n; ++i)
        p.add_variable(vars[static_cast<std::size_t>(i)], random_schema(rng, base, ps.depth),
                       random_schema(rng, ind, ps.depth));
    std::vector<std::string> acc, rej;
    const int a = pick(rng, 0, n - 1);
    acc.push_back(vars[static_cast<std::size_t>(a)]);
    if (ps.with_rejecting && n > 1 && pick(rng, 0, 1) == 1) {
        int r = pick(rng, 0, n - 1);
        if (r != a)
            rej.push_back(vars[static_cast<std::size_t>(r)]);
    }
    p.set_accepting(acc);
    p.set_rejecting(rej);
    p.fragment = p.inferred_fragment();
    return p;
}

inline msc::PointedModel random_model(Rng& rng, int max_nodes, const std::vector<std::string>& props)
{
    const int n = pick(rng, 1, max_nodes);
    msc::PointedModel pm;
    pm.model = msc::KripkeModel(n);
    for (const auto& p : props)
        pm.model.props.insert(p);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (pick(rng, 0, 2) == 0)
                pm.model.add_edge(a, b);
    for (int v = 0; v < n; ++v)
        for (const auto& p : props)
            if (pick(rng, 0, 1) == 1)
                pm.model.set_true(v, p);
    pm.point = pick(rng, 0, n - 1);
    return pm;
}

// Every propositional matrix of depth <= d over the leaves (a leaf has depth 1).
inline std::vector<msc::Schema> all_matrices(const std::vector<msc::Schema>& leaves, int d)
{
    using namespace msc;
    if (d <= 1)
        return leaves;
    std::vector<Schema> sub = all_matrices(leaves, d - 1);
    std::vector<Schema> out = leaves;
    for (const auto& a : sub)
        out.push_back(s_not(a));
    for (const auto& a : sub)
        for (const auto& b : sub)
            out.push_back(s_and(a, b));
    for (const auto& a : sub)
        for (const auto& b : sub)
            out.push_back(s_or(a, b));
    return out;
}

// Closed QBFs with at most two variables and matrix depth <= 3. Two-variable formulas use
// variable leaves only, one-variable formulas their single variable, closed matrices T and F;
// every quantifier prefix is taken.
inline std::vector<msc::Qbf> exhaustive_qbfs()
{
    using namespace msc;
    std::vector<Qbf> out;
    for (const auto& m : all_matrices({s_top(), s_bot()}, 3))
        out.push_back(Qbf{{}, m});
    for (const auto& m : all_matrices({s_prop("x")}, 3))
        for (bool f : {false, true})
            out.push_back(Qbf{{{f, "x"}}, m});
    for (const auto& m : all_matrices({s_prop("x"), s_prop("y")}, 3))
        for (bool f1 : {false, true})
            for (bool f2 : {false, true})
                out.push_back(Qbf{{{f1, "x"}, {f2, "y"}}, m});
    return out;
}

inline msc::Schema random_matrix(Rng& rng, const std::vector<std::string>& vars, int depth)
{
    SchemaShape sh{{}, vars, depth, 1, false, false, true};
    msc::Schema s = random_schema(rng, sh, depth);
    return s;
}

inline msc::Qbf random_qbf(Rng& rng, int nvars, int depth)
{
    msc::Qbf q;
    std::vector<std::string> vars;
    for (int i = 0; i < nvars; ++i) {
        vars.push_back(std::string(1, static_cast<char>('x' + i)));
        q.prefix.push_back({pick(rng, 0, 1) == 1, vars.back()});
    }
    q.matrix = random_matrix(rng, vars, depth);
    return q;
}

inline msc::Circuit random_circuit(Rng& rng, int max_inputs, int max_gates)
{
    using msc::Gate;
    msc::Circuit c;
    const int ni = pick(rng, 1, max_inputs);
    for (int i = 0; i < ni; ++i)
        c.gates.push_back(Gate{"i" + std::to_string(i), Gate::Kind::Input, "x" + std::to_string(i), {}});
    const int ng = pick(rng, 1, std::max(1, max_gates - ni));
    for (int g = 0; g < ng; ++g) {
        const int avail = static_cast<int>(c.gates.size());
        Gate gt;
        gt.name = "g" + std::to_string(g);
        const int kind = pick(rng, 0, 2);
        if (kind == 2) {
            gt.kind = Gate::Kind::Not;
            gt.inputs = {pick(rng, 0, avail - 1)};
        } else {
            gt.kind = kind == 0 ? Gate::Kind::And : Gate::Kind::Or;
            const int fan = pick(rng, 1, std::min(3, avail));
            for (int j = 0; j < fan; ++j) {
                int x = pick(rng, 0, avail - 1);
                if (std::find(gt.inputs.begin(), gt.inputs.end(), x) == gt.inputs.end())
                    gt.inputs.push_back(x);
            }
        }
        c.gates.push_back(gt);
    }
    // Gates nobody reads are folded into the output so that it is the only sink.
    std::vector<bool> read(c.gates.size(), false);
    for (const auto& g : c.gates)
        for (int x : g.inputs)
            read[static_cast<std::size_t>(x)] = true;
    Gate out{"out", Gate::Kind::Or, "", {}};
    for (std::size_t i = 0; i < c.gates.size(); ++i)
        if (!read[i])
            out.inputs.push_back(static_cast<int>(i));
    if (out.inputs.size() == 1 && c.gates[static_cast<std::size_t>(out.inputs[0])].kind != Gate::Kind::Input) {
        c.output = out.inputs[0];
    } else {
        if (pick(rng, 0, 1) == 1)
            out.kind = Gate::Kind::And;
        c.gates.push_back(out);
        c.output = static_cast<int>(c.gates.size()) - 1;
    }
    return c;
}

inline std::vector<std::vector<bool>> all_bit_vectors(int n)
{
    std::vector<std::vector<bool>> out;
    for (int m = 0; m < (1 << n); ++m) {
        std::vector<bool> b(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            b[static_cast<std::size_t>(i)] = ((m >> i) & 1) != 0;
        out.push_back(b);
    }
    return out;
}

inline std::vector<std::vector<std::string>> all_words(const std::vector<std::string>& alphabet, int max_len,
                                                       int min_len = 0)
{
    std::vector<std::vector<std::string>> out, layer = {{}};
    for (int len = 0; len <= max_len; ++len) {
        if (len >= min_len)
            out.insert(out.end(), layer.begin(), layer.end());
        std::vector<std::vector<std::string>> next;
        for (const auto& w : layer)
            for (const auto& a : alphabet) {
                auto x = w;
                x.push_back(a);
                next.push_back(x);
            }
        layer = std::move(next);
    }
    return out;
}

}  // namespace corpus
