#include "msc/tmbridge.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>
#include <unordered_map>

#include "msc/errors.hpp"

namespace msc {

namespace {

bool identifier(const std::string& s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

// Makes `base` distinct from everything in `taken` by appending a counter.
std::string fresh(const std::string& base, std::set<std::string>& taken)
{
    std::string s = base;
    for (int i = 1; taken.count(s); ++i)
        s = base + "_" + std::to_string(i);
    taken.insert(s);
    return s;
}

std::string symbol_stem(const std::string& a, int index)
{
    if (a == kTmBlank)
        return "blank";
    if (a == kTmLeft)
        return "left";
    if (a == kTmRight)
        return "right";
    return identifier(a) ? a : "sym" + std::to_string(index);
}

}  // namespace

TmPredicateNames tm_predicate_names(const BoundedTm& t)
{
    TmPredicateNames n;
    std::set<std::string> taken;
    for (std::size_t i = 0; i < t.tape.size(); ++i)
        n.symbol.push_back(fresh("T_" + symbol_stem(t.tape[i], static_cast<int>(i)), taken));
    for (std::size_t i = 0; i < t.states.size(); ++i)
        n.state.push_back(fresh("Q_" + (identifier(t.states[i]) ? t.states[i] : "st" + std::to_string(i)), taken));
    n.left = fresh("H_left", taken);
    n.right = fresh("H_right", taken);
    return n;
}

namespace {

// Shared by compile_tm_to_msc and meta_reduce. With `freeze`, the head is never moved
// onto the right-marker node; instead the whole configuration is held fixed from the
// round in which the head asks to step there.
Program build_tm_program(const BoundedTm& t, bool freeze)
{
    const TmPredicateNames names = tm_predicate_names(t);
    const int nq = static_cast<int>(t.states.size());
    const int na = static_cast<int>(t.tape.size());
    auto Q = [&](int q) { return s_var(names.state[static_cast<std::size_t>(q)]); };
    auto T = [&](int a) { return s_var(names.symbol[static_cast<std::size_t>(a)]); };
    const Schema HL = s_var(names.left);
    const Schema HR = s_var(names.right);
    const Schema pl = s_prop(kLeftProp);
    const Schema pr = s_prop(kRightProp);

    // Halting states keep the head where it is.
    auto delta = [&](int q, int a) { return t.is_halting(q) ? Transition{q, a, Move::S} : t.at(q, a); };
    auto here = [&](int q, int a) { return s_and(Q(q), T(a)); };
    // The head positions reached by `heads`, all moving in the same direction. Grouping
    // keeps one diamond per group instead of one per transition.
    auto phi = [&](Move m, const std::vector<Schema>& hs) {
        if (hs.empty())
            return s_bot();
        const Schema any = s_or_all(hs);
        switch (m) {
        case Move::L: return s_and(HL, s_dia(1, any));
        case Move::S: return any;
        case Move::R: {
            Schema f = s_and(HR, s_dia(1, any));
            return freeze ? s_and(f, s_not(pr)) : f;
        }
        }
        return s_bot();
    };

    std::vector<Schema> heads;
    for (int q = 0; q < nq; ++q)
        heads.push_back(Q(q));
    const Schema head_any = s_or_all(heads);
    std::vector<Schema> by_move[3];
    std::vector<std::array<std::vector<Schema>, 3>> into(static_cast<std::size_t>(nq));
    std::vector<std::vector<Schema>> writes(static_cast<std::size_t>(na));
    std::vector<Schema> want_right;
    for (int q = 0; q < nq; ++q)
        for (int a = 0; a < na; ++a) {
            const Transition tr = delta(q, a);
            const int m = static_cast<int>(tr.move);
            by_move[m].push_back(here(q, a));
            into[static_cast<std::size_t>(tr.next)][static_cast<std::size_t>(m)].push_back(here(q, a));
            writes[static_cast<std::size_t>(tr.write)].push_back(here(q, a));
            if (tr.move == Move::R && !t.is_halting(q))
                want_right.push_back(here(q, a));
        }
    const Schema psi_l = phi(Move::L, by_move[0]);
    const Schema psi_s = phi(Move::S, by_move[1]);
    const Schema psi_r = phi(Move::R, by_move[2]);
    std::vector<Schema> into_state(static_cast<std::size_t>(nq));
    for (int q = 0; q < nq; ++q) {
        std::vector<Schema> parts;
        for (Move m : {Move::L, Move::S, Move::R}) {
            const auto& hs = into[static_cast<std::size_t>(q)][static_cast<std::size_t>(m)];
            if (!hs.empty())
                parts.push_back(phi(m, hs));
        }
        if (!parts.empty())
            into_state[static_cast<std::size_t>(q)] = s_or_all(parts);
    }
    const Schema frozen = s_and(s_dia(1, pr), s_or_all(want_right));

    Program p;
    for (int a = 0; a < na; ++a) {
        const std::string& sym = t.tape[static_cast<std::size_t>(a)];
        Schema base = s_bot();
        if (sym == kTmBlank)
            base = s_prop(kBlankProp);
        else if (sym == kTmLeft)
            base = pl;
        else if (sym == kTmRight)
            base = pr;
        else if (std::find(t.input.begin(), t.input.end(), sym) != t.input.end())
            base = s_prop(sym);
        Schema written = s_or_all(writes[static_cast<std::size_t>(a)]);
        Schema keep = s_and(T(a), s_not(head_any));
        if (freeze) {
            written = s_and(written, s_not(frozen));
            keep = s_and(T(a), s_or(s_not(head_any), frozen));
        }
        p.add_variable(names.symbol[static_cast<std::size_t>(a)], base, s_or(written, keep));
    }
    for (int q = 0; q < nq; ++q) {
        Schema ind = into_state[static_cast<std::size_t>(q)] ? into_state[static_cast<std::size_t>(q)] : s_bot();
        // Once halted, the state spreads along the path so that it reaches the point.
        if (t.is_halting(q))
            ind = s_or(ind, s_dia(1, Q(q)));
        if (freeze)
            ind = s_or(ind, s_and(Q(q), frozen));
        p.add_variable(names.state[static_cast<std::size_t>(q)], q == t.start ? s_dia(1, pl) : s_bot(), ind);
    }
    std::vector<Schema> l = {s_and(HL, s_dia(1, psi_s)), s_and(s_dia(1, HL), s_dia(1, psi_r)), s_and(pl, s_dia(1, psi_r)),
                             s_and(s_not(head_any), s_dia(1, psi_l))};
    std::vector<Schema> r = {s_and(HR, s_dia(1, psi_s)), s_and(s_dia(1, HR), s_dia(1, psi_l)), s_and(pr, s_dia(1, psi_l)),
                             s_and(s_not(head_any), s_dia(1, psi_r))};
    if (freeze) {
        l.push_back(s_and(HL, s_dia(1, frozen)));
        r.push_back(s_and(HR, s_dia(1, frozen)));
    }
    p.add_variable(names.left, pl, s_or_all(l));
    p.add_variable(names.right, s_and(s_not(pl), s_dia(1, s_dia(1, pl))), s_or_all(r));

    std::vector<std::string> acc, rej;
    for (int q : t.accepting)
        acc.push_back(names.state[static_cast<std::size_t>(q)]);
    for (int q : t.rejecting)
        rej.push_back(names.state[static_cast<std::size_t>(q)]);
    p.set_accepting(acc);
    p.set_rejecting(rej);
    p.fragment = Fragment::MSC;
    p.validate();
    return p;
}

}  // namespace

Program compile_tm_to_msc(const BoundedTm& t)
{
    t.validate();
    return build_tm_program(t, false);
}

std::optional<TmConfig> decode_tm_config(const BoundedTm& t, const Program& compiled, const GlobalConfiguration& g)
{
    const TmPredicateNames names = tm_predicate_names(t);
    auto col = [&](const std::string& n) { return compiled.index_of(n); };
    TmConfig c;
    c.head = -1;
    for (int v = 0; v < g.nodes(); ++v) {
        int sym = -1;
        for (std::size_t a = 0; a < names.symbol.size(); ++a)
            if (g.get(v, col(names.symbol[a]))) {
                if (sym >= 0)
                    return std::nullopt;
                sym = static_cast<int>(a);
            }
        if (sym < 0)
            return std::nullopt;
        c.tape.push_back(sym);
        for (std::size_t q = 0; q < names.state.size(); ++q)
            if (g.get(v, col(names.state[q]))) {
                if (c.head >= 0)
                    return std::nullopt;
                c.head = v;
                c.state = static_cast<int>(q);
            }
    }
    if (c.head < 0)
        return std::nullopt;
    for (int v = 0; v < g.nodes(); ++v) {
        if (g.get(v, col(names.left)) != (v == c.head - 1))
            return std::nullopt;
        if (g.get(v, col(names.right)) != (v == c.head + 1))
            return std::nullopt;
    }
    return c;
}

// ---------------------------------------------------------------- flatten

namespace {

bool has_props(const Schema& s)
{
    std::set<std::string> ps;
    collect_props(s, ps);
    return !ps.empty();
}

struct Flattener {
    Program out;
    std::set<std::string> taken;
    std::map<std::string, std::string> prop_pred;
    std::map<std::string, std::string> modal_pred;  // translated modal schema text -> predicate

    Schema prop(const std::string& p)
    {
        auto it = prop_pred.find(p);
        if (it != prop_pred.end())
            return s_var(it->second);
        std::string name = fresh("P_" + p, taken);
        prop_pred.emplace(p, name);
        out.add_variable(name, s_prop(p), s_var(name));
        return s_var(name);
    }

    // A modal schema whose child has already been translated gets its own predicate,
    // which reads one round behind.
    Schema lag(const Schema& modal)
    {
        const std::string key = schema_to_string(modal);
        auto it = modal_pred.find(key);
        if (it != modal_pred.end())
            return s_var(it->second);
        std::string name = fresh("M" + std::to_string(modal_pred.size() + 1), taken);
        modal_pred.emplace(key, name);
        out.add_variable(name, s_bot(), modal);
        return s_var(name);
    }

    Schema tr(const Schema& s, bool top)
    {
        switch (s->op) {
        case Op::Bottom:
        case Op::Top:
        case Op::Var: return s;
        case Op::Prop: return prop(s->name);
        case Op::Not: return s_not(tr(s->left, top));
        case Op::Or: return s_or(tr(s->left, top), tr(s->right, top));
        case Op::And: return s_and(tr(s->left, top), tr(s->right, top));
        default: {
            Schema m = s_modal(s->op, s->threshold, tr(s->left, false));
            return top ? m : lag(m);
        }
        }
    }
};

}  // namespace

bool is_flat(const Program& p)
{
    for (std::size_t i = 0; i < p.size(); ++i)
        if (modal_depth(p.base[i]) > 0 || modal_depth(p.induction[i]) > 1 || has_props(p.induction[i]))
            return false;
    return true;
}

// Every original predicate is recomputed once per period of P rounds, where P covers
// the deepest modal nesting: lagged predicates M need that long to settle. The first
// update uses the base bodies (flag F marks the first period), later ones the induction
// bodies, and between updates the predicates hold. Original round n is visible during
// rounds (n+1)P .. (n+2)P-1.
Program flatten(const Program& p)
{
    if (p.semantics != Semantics::Sync)
        throw ValidationError("flatten needs a synchronous program");
    if (is_flat(p))
        return p;
    int depth = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        depth = std::max({depth, modal_depth(p.base[i]), modal_depth(p.induction[i])});
    const int period = std::max(depth, 1);

    Flattener f;
    f.taken.insert(p.variables.begin(), p.variables.end());
    for (const auto& v : p.variables)
        f.out.add_variable(v, s_bot(), s_bot());  // bodies filled below

    std::vector<std::string> clock;
    if (period > 1)
        for (int i = 0; i < period; ++i)
            clock.push_back(fresh("C" + std::to_string(i), f.taken));
    const std::string first = fresh("F", f.taken);
    Schema tick = period > 1 ? s_var(clock.back()) : s_top();
    for (int i = 0; i < static_cast<int>(clock.size()); ++i)
        f.out.add_variable(clock[static_cast<std::size_t>(i)], i == 0 ? s_top() : s_bot(),
                           s_var(clock[static_cast<std::size_t>((i + period - 1) % period)]));
    f.out.add_variable(first, s_top(), period > 1 ? s_and(s_var(first), s_not(tick)) : s_bot());

    const Schema F = s_var(first);
    for (std::size_t i = 0; i < p.size(); ++i) {
        Schema b = f.tr(p.base[i], true);
        Schema n = f.tr(p.induction[i], true);
        std::vector<Schema> parts = {s_and(s_and(tick, F), b), s_and(s_and(tick, s_not(F)), n)};
        if (period > 1)
            parts.push_back(s_and(s_not(tick), s_var(p.variables[i])));
        f.out.induction[i] = s_or_all(parts);
    }
    std::vector<std::string> acc, rej;
    for (int a : p.accepting)
        acc.push_back(p.variables[static_cast<std::size_t>(a)]);
    for (int r : p.rejecting)
        rej.push_back(p.variables[static_cast<std::size_t>(r)]);
    f.out.set_accepting(acc);
    f.out.set_rejecting(rej);
    f.out.semantics = Semantics::Sync;
    f.out.fragment = f.out.inferred_fragment();
    f.out.validate();
    return f.out;
}

// ---------------------------------------------------------------- program to machine

namespace {

using Cfg = std::uint32_t;

struct LocalEval {
    const Program& p;
    std::map<const SchemaNode*, int> gindex;  // global modal occurrence -> slot
    std::vector<const SchemaNode*> gsub;
    std::vector<int> gcap;

    void collect(const Schema& s)
    {
        if (is_global(s->op) && !gindex.count(s.get())) {
            gindex.emplace(s.get(), static_cast<int>(gsub.size()));
            gsub.push_back(s.get());
            gcap.push_back(s->threshold);
        }
        if (s->left)
            collect(s->left);
        if (s->right)
            collect(s->right);
    }

    int g_states() const
    {
        long n = 1;
        for (int c : gcap) {
            n *= c + 1;
            if (n > 1000000)
                throw ResourceError("too many global count combinations");
        }
        return static_cast<int>(n);
    }
    int g_count(int g, int slot) const
    {
        for (int j = 0; j < slot; ++j)
            g /= gcap[static_cast<std::size_t>(j)] + 1;
        return g % (gcap[static_cast<std::size_t>(slot)] + 1);
    }
    int g_add(int g, Cfg c) const
    {
        int out = 0;
        int mul = 1;
        for (std::size_t j = 0; j < gsub.size(); ++j) {
            int cnt = g_count(g, static_cast<int>(j));
            bool sat = eval(gsub[j]->left, c, {}, 0, nullptr);
            bool counts = gsub[j]->op == Op::GDia ? sat : !sat;
            if (counts)
                cnt = std::min(cnt + 1, gcap[j]);
            out += cnt * mul;
            mul *= gcap[j] + 1;
        }
        return out;
    }

    bool eval(const Schema& s, Cfg c, const std::vector<Cfg>& nbrs, int g, const std::set<std::string>* props) const
    {
        switch (s->op) {
        case Op::Bottom: return false;
        case Op::Top: return true;
        case Op::Prop:
            if (!props)
                throw Error("internal: proposition in a flat induction body");
            return props->count(s->name) > 0;
        case Op::Var: return (c >> p.index_of(s->name)) & 1U;
        case Op::Not: return !eval(s->left, c, nbrs, g, props);
        case Op::Or: return eval(s->left, c, nbrs, g, props) || eval(s->right, c, nbrs, g, props);
        case Op::And: return eval(s->left, c, nbrs, g, props) && eval(s->right, c, nbrs, g, props);
        case Op::Dia:
        case Op::Box: {
            int sat = 0;
            for (Cfg u : nbrs)
                sat += eval(s->left, u, {}, g, props) ? 1 : 0;
            return s->op == Op::Dia ? sat >= s->threshold : static_cast<int>(nbrs.size()) - sat < s->threshold;
        }
        case Op::GDia:
        case Op::GBox: {
            int cnt = g_count(g, gindex.at(s.get()));
            return s->op == Op::GDia ? cnt >= s->threshold : cnt < s->threshold;
        }
        }
        return false;
    }

    Cfg base(const std::set<std::string>& props) const
    {
        Cfg c = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (eval(p.base[i], 0, {}, 0, &props))
                c |= Cfg{1} << i;
        return c;
    }
    Cfg next(Cfg c, const std::vector<Cfg>& nbrs, int g) const
    {
        Cfg out = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (eval(p.induction[i], c, nbrs, g, nullptr))
                out |= Cfg{1} << i;
        return out;
    }
};

}  // namespace

// The machine keeps one program configuration per work cell; the two marker cells
// cannot be written, so their configurations travel in the state. One round:
//   check the cell at position 1 for an accepting / rejecting predicate, then sweep
//   right, computing each cell's new configuration from the stored old configuration
//   of its left neighbour, its own, and the one read on its right, then return left.
// With global modalities an extra pass counts, per global subformula, how many cells
// make it true (capped at its threshold) before the check.
BoundedTm compile_program_to_tm(const Program& input, int k, const std::vector<std::string>& alphabet_in, int m,
                                long max_transitions)
{
    if (k < 0)
        throw ValidationError("bound must be non-negative");
    const Program p = flatten(input);
    if (p.size() > 20)
        throw ResourceError("flattened program has " + std::to_string(p.size()) + " predicates; at most 20 fit a cell");
    const int thr = program_max_threshold(p);
    if (m >= 0 && thr > m)
        throw ValidationError("program threshold " + std::to_string(thr) + " exceeds the declared bound m = " +
                              std::to_string(m));
    std::vector<std::string> alphabet = alphabet_in;
    if (alphabet.empty())
        for (const auto& q : p.propositions())
            if (q != kLeftProp && q != kRightProp && q != kBlankProp)
                alphabet.push_back(q);

    LocalEval le{p, {}, {}, {}};
    for (const auto& s : p.induction)
        le.collect(s);
    const int G = le.g_states();
    const bool global = !le.gsub.empty();

    auto props_of = [&](const std::string& letter) { return std::set<std::string>{letter}; };
    const Cfg cL0 = le.base({kLeftProp});
    const Cfg cR0 = le.base({kRightProp});
    const Cfg cB = le.base({kBlankProp});

    // Configurations that can ever appear anywhere (an over-approximation).
    std::set<Cfg> reach = {cL0, cR0, cB};
    for (const auto& a : alphabet)
        reach.insert(le.base(props_of(a)));
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<Cfg> cur(reach.begin(), reach.end());
        if (cur.size() > 4096)
            throw ResourceError("too many reachable cell configurations");
        for (int g = 0; g < G; ++g)
            for (Cfg c : cur)
                for (Cfg a : cur) {
                    grew |= reach.insert(le.next(c, {a}, g)).second;
                    for (Cfg b : cur)
                        grew |= reach.insert(le.next(c, {a, b}, g)).second;
                }
    }
    const std::vector<Cfg> cfgs(reach.begin(), reach.end());

    BoundedTm t;
    t.bound = k;
    t.tape = {kTmBlank, kTmLeft, kTmRight};
    for (const auto& a : alphabet) {
        if (a == kTmBlank || a == kTmLeft || a == kTmRight)
            throw ValidationError("letter '" + a + "' clashes with a machine symbol");
        t.tape.push_back(a);
    }
    t.input = alphabet;
    std::set<std::string> taken(t.tape.begin(), t.tape.end());
    std::unordered_map<Cfg, int> cfg_symbol;
    std::vector<Cfg> symbol_cfg(t.tape.size(), 0);
    for (Cfg c : cfgs) {
        std::string bits;
        for (std::size_t i = 0; i < p.size(); ++i)
            bits += ((c >> i) & 1U) ? '1' : '0';
        cfg_symbol[c] = static_cast<int>(t.tape.size());
        t.tape.push_back(fresh("c" + bits, taken));
        symbol_cfg.push_back(c);
    }
    const int na = static_cast<int>(t.tape.size());
    const int first_cfg = na - static_cast<int>(cfgs.size());
    const int sym_left = 1, sym_right = 2;

    auto accepting = [&](Cfg c) {
        for (int a : p.accepting)
            if ((c >> a) & 1U)
                return true;
        return false;
    };
    auto rejecting = [&](Cfg c) {
        for (int r : p.rejecting)
            if ((c >> r) & 1U)
                return true;
        return false;
    };

    enum Phase : std::uint8_t { Init, Back, Scan, Back2, Check, Read, Write, Update, WriteLast, Accept, Reject };
    struct Key {
        Phase ph;
        Cfg a, b, c, d;
        int g;
        bool operator<(const Key& o) const { return std::tie(ph, a, b, c, d, g) < std::tie(o.ph, o.a, o.b, o.c, o.d, o.g); }
    };
    std::map<Key, int> ids;
    std::vector<Key> keys;
    std::vector<int> work;
    auto id = [&](const Key& key) {
        auto it = ids.find(key);
        if (it != ids.end())
            return it->second;
        int n = static_cast<int>(keys.size());
        if (static_cast<long>(n + 1) * na > max_transitions)
            throw ResourceError("machine would need more than " + std::to_string(max_transitions) + " transitions");
        ids.emplace(key, n);
        keys.push_back(key);
        work.push_back(n);
        return n;
    };
    const int q_acc = id({Accept, 0, 0, 0, 0, 0});
    const int q_rej = id({Reject, 0, 0, 0, 0, 0});
    const int q0 = id({Init, 0, 0, 0, 0, 0});
    std::vector<std::vector<Transition>> rows;

    auto after_back = [&](Cfg l, Cfg r) {
        if (global)
            return id({Scan, l, r, 0, 0, le.g_add(le.g_add(0, l), r)});
        return id({Check, l, r, 0, 0, 0});
    };

    while (!work.empty()) {
        const int q = work.back();
        work.pop_back();
        std::vector<Transition> row(static_cast<std::size_t>(na));
        const Key key = keys[static_cast<std::size_t>(q)];
        for (int s = 0; s < na; ++s) {
            Transition tr{q_rej, s, Move::S};
            const bool is_cfg = s >= first_cfg;
            const Cfg x = symbol_cfg[static_cast<std::size_t>(s)];
            switch (key.ph) {
            case Accept:
            case Reject: tr = Transition{q, s, Move::S}; break;
            case Init:
                if (s == sym_right)
                    tr = Transition{id({Back, cL0, cR0, 0, 0, 0}), s, Move::L};
                else if (s == 0)
                    tr = Transition{q, cfg_symbol.at(cB), Move::R};
                else if (s > sym_right && !is_cfg)
                    tr = Transition{q, cfg_symbol.at(le.base(props_of(t.tape[static_cast<std::size_t>(s)]))), Move::R};
                break;
            case Back:
                if (s == sym_left)
                    tr = Transition{after_back(key.a, key.b), s, Move::R};
                else if (is_cfg)
                    tr = Transition{q, s, Move::L};
                break;
            case Scan:
                if (s == sym_right)
                    tr = Transition{id({Back2, key.a, key.b, 0, 0, key.g}), s, Move::L};
                else if (is_cfg)
                    tr = Transition{id({Scan, key.a, key.b, 0, 0, le.g_add(key.g, x)}), s, Move::R};
                break;
            case Back2:
                if (s == sym_left)
                    tr = Transition{id({Check, key.a, key.b, 0, 0, key.g}), s, Move::R};
                else if (is_cfg)
                    tr = Transition{q, s, Move::L};
                break;
            case Check: {
                // a = old left marker, b = old right marker
                if (!is_cfg && s != sym_right)
                    break;
                const Cfg c1 = is_cfg ? x : key.b;
                if (accepting(c1)) {
                    tr = Transition{q_acc, s, Move::S};
                } else if (rejecting(c1)) {
                    tr = Transition{q_rej, s, Move::S};
                } else if (s == sym_right) {
                    Cfg nl = le.next(key.a, {key.b}, key.g);
                    Cfg nr = le.next(key.b, {key.a}, key.g);
                    tr = Transition{id({Back, nl, nr, 0, 0, 0}), s, Move::L};
                } else {
                    Cfg nl = le.next(key.a, {x}, key.g);
                    tr = Transition{id({Read, key.a, x, nl, key.b, key.g}), s, Move::R};
                }
                break;
            }
            case Read: {
                // a = previous cell (old), b = current cell (old), c = new left marker, d = old right marker
                if (is_cfg) {
                    Cfg nb = le.next(key.b, {key.a, x}, key.g);
                    tr = Transition{id({Write, nb, key.b, key.c, key.d, key.g}), s, Move::L};
                } else if (s == sym_right) {
                    Cfg nb = le.next(key.b, {key.a, key.d}, key.g);
                    Cfg nr = le.next(key.d, {key.b}, key.g);
                    tr = Transition{id({WriteLast, nb, key.c, nr, 0, 0}), s, Move::L};
                }
                break;
            }
            case Write:
                // a = new value, b = old value of this cell
                if (is_cfg)
                    tr = Transition{id({Update, key.b, key.c, key.d, 0, key.g}), cfg_symbol.at(key.a), Move::R};
                break;
            case Update:
                // a = previous cell (old), b = new left marker, c = old right marker
                if (is_cfg)
                    tr = Transition{id({Read, key.a, x, key.b, key.c, key.g}), s, Move::R};
                break;
            case WriteLast:
                if (is_cfg)
                    tr = Transition{id({Back, key.b, key.c, 0, 0, 0}), cfg_symbol.at(key.a), Move::L};
                break;
            }
            row[static_cast<std::size_t>(s)] = tr;
        }
        if (rows.size() <= static_cast<std::size_t>(q))
            rows.resize(static_cast<std::size_t>(q) + 1);
        rows[static_cast<std::size_t>(q)] = std::move(row);
    }

    static const char* phase_name[] = {"init", "back", "scan", "back2", "check", "read", "write", "update", "wlast", "accept", "reject"};
    for (const Key& key : keys)
        t.states.push_back(std::string(phase_name[key.ph]) + "_" + std::to_string(key.a) + "_" + std::to_string(key.b) + "_" +
                           std::to_string(key.c) + "_" + std::to_string(key.d) + "_" + std::to_string(key.g));
    t.states[static_cast<std::size_t>(q_acc)] = "accept";
    t.states[static_cast<std::size_t>(q_rej)] = "reject";
    t.states[static_cast<std::size_t>(q0)] = "init";
    t.start = q0;
    t.accepting = {q_acc};
    t.rejecting = {q_rej};
    t.delta.reserve(rows.size() * static_cast<std::size_t>(na));
    for (const auto& row : rows)
        t.delta.insert(t.delta.end(), row.begin(), row.end());
    t.validate();
    return t;
}

// ---------------------------------------------------------------- meta-reduction

Program meta_reduce(const BoundedTm& t)
{
    t.validate();
    return build_tm_program(t, true);
}

PointedModel input_reduce(const BoundedTm& t, const std::vector<std::string>& word, long fuel)
{
    const TmResult r = run_tm(t, word, fuel);
    if (r.kind == TmResult::Kind::FuelExhausted)
        throw ResourceError("machine did not halt within " + std::to_string(fuel) + " steps");
    if (r.kind == TmResult::Kind::NonHalting)
        throw ResourceError("machine does not halt on this word");
    const int n = static_cast<int>(word.size());
    return extended_word_model(word, std::max(0, r.max_head - n));
}

PointedModel input_reduce_s(const BoundedTm& t, const std::function<int(int)>& s, const std::vector<std::string>& word)
{
    for (const auto& a : word)
        if (std::find(t.input.begin(), t.input.end(), a) == t.input.end())
            throw ValidationError("'" + a + "' is not an input symbol of the machine");
    const int pad = s(static_cast<int>(word.size()));
    if (pad < 0)
        throw ValidationError("space bound must be non-negative");
    return extended_word_model(word, pad);
}

}  // namespace msc
