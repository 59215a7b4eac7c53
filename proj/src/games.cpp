#include "msc/games.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "msc/errors.hpp"

namespace msc {

int OccTable::add(const Schema& s, const std::vector<std::string>& vars)
{
    Occ o;
    o.s = s;
    if (s->left)
        o.left = add(s->left, vars);
    if (s->right)
        o.right = add(s->right, vars);
    if (s->op == Op::Var) {
        auto it = std::find(vars.begin(), vars.end(), s->name);
        if (it == vars.end())
            throw ValidationError("variable '" + s->name + "' has no column");
        o.var = static_cast<int>(it - vars.begin());
    }
    occ.push_back(std::move(o));
    return static_cast<int>(occ.size()) - 1;
}

std::string OccTable::text(int i) const { return schema_to_string(occ[static_cast<std::size_t>(i)].s); }

OccTable occurrence_table(const Program& p)
{
    OccTable t;
    for (std::size_t i = 0; i < p.size(); ++i) {
        t.base_root.push_back(t.add(p.base[i], p.variables));
        t.ind_root.push_back(t.add(p.induction[i], p.variables));
    }
    return t;
}

namespace {

const char* player(int v) { return v == 0 ? "Eloise" : "Abelard"; }

std::string node_list(const std::vector<int>& xs)
{
    std::string out = "{";
    for (std::size_t i = 0; i < xs.size(); ++i)
        out += (i ? "," : "") + std::to_string(xs[i]);
    return out + "}";
}

// Backward induction for the clocked game. Entry (clock, occ, node) is true iff the verifier
// wins there; the value does not depend on which player verifies. Clock layers are filled
// bottom up because a Var at clock c only looks at clock c-1 (or the base body at 0).
class ClockedValues {
public:
    using VarFn = std::function<bool(int var, int node)>;

    ClockedValues(const OccTable& t, const KripkeModel& m) : t_(t), m_(m), succ_(m.successors()) {}

    // Formula mode: variables are read from a fixed labelled tuple at every clock.
    void set_tuple(VarFn f) { tuple_ = std::move(f); }

    bool val(int clock, int occ, int node)
    {
        ensure(clock);
        return layers_[static_cast<std::size_t>(clock)][idx(occ, node)] != 0;
    }

    void ensure(int clock)
    {
        while (static_cast<int>(layers_.size()) <= clock)
            fill(static_cast<int>(layers_.size()));
    }

    const std::vector<std::vector<int>>& succ() const { return succ_; }

private:
    std::size_t idx(int occ, int node) const
    {
        return static_cast<std::size_t>(occ) * static_cast<std::size_t>(m_.node_count) + static_cast<std::size_t>(node);
    }

    void fill(int c)
    {
        std::vector<char> cur(t_.occ.size() * static_cast<std::size_t>(m_.node_count), 0);
        pass(c, cur);
        // At clock 0 a Var reads the base root of the same layer, which may come later in
        // the table. Base bodies are variable free, so a second pass settles everything.
        if (c == 0 && !tuple_)
            pass(c, cur);
        layers_.push_back(std::move(cur));
    }

    void pass(int c, std::vector<char>& cur) const
    {
        const int n = m_.node_count;
        for (std::size_t o = 0; o < t_.occ.size(); ++o) {
            const auto& x = t_.occ[o];
            auto child = [&](int which, int u) { return cur[idx(which, u)] != 0; };
            for (int v = 0; v < n; ++v) {
                bool r = false;
                switch (x.s->op) {
                case Op::Top: r = true; break;
                case Op::Bottom: r = false; break;
                case Op::Prop: r = m_.holds(v, x.s->name); break;
                case Op::Not: r = !child(x.left, v); break;
                case Op::Or: r = child(x.left, v) || child(x.right, v); break;
                case Op::And: r = child(x.left, v) && child(x.right, v); break;
                case Op::Var:
                    if (tuple_)
                        r = tuple_(x.var, v);
                    else if (c > 0)
                        r = layers_[static_cast<std::size_t>(c - 1)][idx(t_.ind_root[static_cast<std::size_t>(x.var)], v)] != 0;
                    else
                        r = child(t_.base_root[static_cast<std::size_t>(x.var)], v);
                    break;
                default: {
                    // The chooser of a k-set wins iff k candidates are winning for them.
                    const bool dia = x.s->op == Op::Dia || x.s->op == Op::GDia;
                    int good = 0;
                    auto count = [&](int u) { good += child(x.left, u) == dia ? 1 : 0; };
                    if (is_global(x.s->op))
                        for (int u = 0; u < n; ++u)
                            count(u);
                    else
                        for (int u : succ_[static_cast<std::size_t>(v)])
                            count(u);
                    r = dia ? good >= x.s->threshold : good < x.s->threshold;
                }
                }
                cur[idx(static_cast<int>(o), v)] = r ? 1 : 0;
            }
        }
    }

    const OccTable& t_;
    const KripkeModel& m_;
    std::vector<std::vector<int>> succ_;
    VarFn tuple_;
    std::vector<std::vector<char>> layers_;
};

// Eloise's strategy from a position she wins, written out for every position it reaches.
class ClockedWitness {
public:
    ClockedWitness(const OccTable& t, ClockedValues& vals, int nodes, bool clocked, std::size_t limit = 400)
        : t_(t), vals_(vals), n_(nodes), clocked_(clocked), limit_(limit)
    {
    }

    std::vector<std::string> lines;

    void walk(int ver, int node, int occ, int clock)
    {
        if (lines.size() >= limit_)
            return;
        auto key = std::make_tuple(ver, node, occ, clock);
        if (!seen_.insert(key).second)
            return;
        const auto& x = t_.occ[static_cast<std::size_t>(occ)];
        auto wins = [&](int vv, int u, int o, int c) { return (vals_.val(c, o, u)) == (vv == 0); };
        const std::string here = pos(ver, node, occ, clock);
        switch (x.s->op) {
        case Op::Top:
        case Op::Bottom:
        case Op::Prop: return;
        case Op::Not: walk(1 - ver, node, x.left, clock); return;
        case Op::Var:
            if (!clocked_)
                return;
            if (clock > 0)
                walk(ver, node, t_.ind_root[static_cast<std::size_t>(x.var)], clock - 1);
            else
                walk(ver, node, t_.base_root[static_cast<std::size_t>(x.var)], 0);
            return;
        case Op::Or:
        case Op::And: {
            const int chooser = (x.s->op == Op::Or) ? ver : 1 - ver;
            if (chooser == 0) {
                int pick = wins(ver, node, x.left, clock) ? x.left : x.right;
                lines.push_back(here + ": choose " + (pick == x.left ? "left" : "right"));
                walk(ver, node, pick, clock);
            } else {
                walk(ver, node, x.left, clock);
                walk(ver, node, x.right, clock);
            }
            return;
        }
        default: {
            const bool dia = x.s->op == Op::Dia || x.s->op == Op::GDia;
            const int chooser = dia ? ver : 1 - ver;
            std::vector<int> cand;
            if (is_global(x.s->op))
                for (int u = 0; u < n_; ++u)
                    cand.push_back(u);
            else
                cand = vals_.succ()[static_cast<std::size_t>(node)];
            std::vector<int> good;
            for (int u : cand)
                if (wins(ver, u, x.left, clock))
                    good.push_back(u);
            if (chooser == 0) {
                good.resize(static_cast<std::size_t>(x.s->threshold));
                lines.push_back(here + ": choose " + node_list(good));
                for (int u : good)
                    walk(ver, u, x.left, clock);
            } else {
                if (static_cast<int>(cand.size()) < x.s->threshold)
                    return;  // Abelard cannot make his choice and loses
                lines.push_back(here + ": against any " + std::to_string(x.s->threshold) + "-set, pick a node of " + node_list(good));
                for (int u : good)
                    walk(ver, u, x.left, clock);
            }
            return;
        }
        }
    }

    std::string pos(int ver, int node, int occ, int clock) const
    {
        std::string s = "(" + std::string(player(ver)) + ", " + std::to_string(node) + ", " + t_.text(occ);
        if (clocked_)
            s += ", " + std::to_string(clock);
        return s + ")";
    }

private:
    const OccTable& t_;
    ClockedValues& vals_;
    int n_;
    bool clocked_;
    std::size_t limit_;
    std::set<std::tuple<int, int, int, int>> seen_;
};

Program without_rejection(const Program& p)
{
    Program q = p;
    q.rejecting.clear();
    return q;
}

}  // namespace

GameOutcome solve_formula_game(const KripkeModel& m, const GlobalConfiguration& g, int node, const Schema& s,
                               const std::vector<std::string>& vars)
{
    OccTable t;
    int root = t.add(s, vars);
    ClockedValues vals(t, m);
    vals.set_tuple([&](int var, int v) { return g.get(v, var); });
    GameOutcome out;
    out.winner = vals.val(0, root, node) ? Winner::Eloise : Winner::Abelard;
    if (out.winner == Winner::Eloise) {
        ClockedWitness w(t, vals, m.node_count, false);
        w.walk(0, node, root, 0);
        out.witness = std::move(w.lines);
    }
    return out;
}

GameOutcome solve_standard_game_bounded(const Program& p, const PointedModel& pm, int K)
{
    if (K < 0)
        throw ValidationError("clock bound must be non-negative");
    p.validate();
    const OccTable t = occurrence_table(p);
    ClockedValues vals(t, pm.model);
    GameOutcome out;
    out.winner = Winner::Abelard;
    if (p.accepting.empty()) {
        out.diagnostics.push_back("no accepting predicates: Eloise has no initial position");
        return out;
    }
    // Try rounds in increasing order so the reported clock is the least one.
    for (int round = 0; round <= K && out.winner != Winner::Eloise; ++round) {
        for (int a : p.accepting) {
            const int root = round == 0 ? t.base_root[static_cast<std::size_t>(a)] : t.ind_root[static_cast<std::size_t>(a)];
            const int clock = round == 0 ? 0 : round - 1;
            if (vals.val(clock, root, pm.point)) {
                out.winner = Winner::Eloise;
                out.initial_clock = round;
                ClockedWitness w(t, vals, pm.model.node_count, true);
                w.lines.push_back("start: " + w.pos(0, pm.point, root, clock));
                w.walk(0, pm.point, root, clock);
                out.witness = std::move(w.lines);
                break;
            }
        }
    }
    if (out.winner == Winner::Abelard)
        out.diagnostics.push_back("no initial position with clock below " + std::to_string(K) + " is winning for Eloise");
    return out;
}

GameOutcome solve_standard_game(const Program& p, const PointedModel& pm, std::optional<long> max_rounds)
{
    if (p.semantics != Semantics::Sync)
        throw ValidationError("the standard game is defined for synchronous programs");
    const Program q = without_rejection(p);
    GameOutcome out;
    if (q.accepting.empty()) {
        out.winner = Winner::Abelard;
        out.diagnostics.push_back("no accepting predicates: Eloise automatically loses");
        return out;
    }
    const Verdict v = run(q, pm, max_rounds);
    if (!v.accepted()) {
        out.winner = Winner::Abelard;
        out.diagnostics.push_back("run " + v.str() + ": no clock gives Eloise a win");
        return out;
    }
    out.winner = Winner::Eloise;
    out.initial_clock = v.round;
    const OccTable t = occurrence_table(q);
    const double cells = static_cast<double>(t.occ.size()) * pm.model.node_count * static_cast<double>(v.round + 1);
    if (cells > 5e7) {
        out.diagnostics.push_back("strategy omitted: " + std::to_string(v.round) + " rounds is too many to tabulate");
        return out;
    }
    ClockedValues vals(t, pm.model);
    const int round = static_cast<int>(v.round);
    for (int a : q.accepting) {
        const int root = round == 0 ? t.base_root[static_cast<std::size_t>(a)] : t.ind_root[static_cast<std::size_t>(a)];
        const int clock = round == 0 ? 0 : round - 1;
        if (!vals.val(clock, root, pm.point))
            continue;
        ClockedWitness w(t, vals, pm.model.node_count, true);
        w.lines.push_back("start: " + w.pos(0, pm.point, root, clock));
        w.walk(0, pm.point, root, clock);
        out.witness = std::move(w.lines);
        return out;
    }
    throw Error("internal: the run accepted but no initial position wins at that clock");
}

std::string AsyncArena::describe(int pos) const
{
    return "(" + std::string(player(verifier_of(pos))) + ", " + std::to_string(node_of(pos)) + ", " +
           occs.text(occ_of(pos)) + ")";
}

AsyncArena build_async_arena(const Program& p, const PointedModel& pm)
{
    p.validate();
    AsyncArena a;
    a.occs = occurrence_table(p);
    a.nodes = pm.model.node_count;
    const KripkeModel& m = pm.model;
    const auto succ = m.successors();
    const int n = a.nodes;
    a.arena.resize(a.occs.occ.size() * static_cast<std::size_t>(n) * 2);
    for (std::size_t oi = 0; oi < a.occs.occ.size(); ++oi) {
        const auto& x = a.occs.occ[oi];
        const int o = static_cast<int>(oi);
        for (int v = 0; v < n; ++v) {
            for (int ver = 0; ver < 2; ++ver) {
                ArenaNode& an = a.arena[static_cast<std::size_t>(a.pos(ver, v, o))];
                const int fal = 1 - ver;
                switch (x.s->op) {
                case Op::Top: an.terminal = ver; break;
                case Op::Bottom: an.terminal = fal; break;
                case Op::Prop: an.terminal = m.holds(v, x.s->name) ? ver : fal; break;
                case Op::Not: an.succ = {a.pos(fal, v, x.left)}; break;
                case Op::Var:
                    an.chooser = ver;
                    an.succ = {a.pos(ver, v, a.occs.base_root[static_cast<std::size_t>(x.var)]),
                               a.pos(ver, v, a.occs.ind_root[static_cast<std::size_t>(x.var)])};
                    break;
                case Op::Or:
                case Op::And:
                    an.chooser = x.s->op == Op::Or ? ver : fal;
                    an.succ = {a.pos(ver, v, x.left), a.pos(ver, v, x.right)};
                    break;
                default:
                    an.chooser = (x.s->op == Op::Dia || x.s->op == Op::GDia) ? ver : fal;
                    an.k = x.s->threshold;
                    if (is_global(x.s->op))
                        for (int u = 0; u < n; ++u)
                            an.succ.push_back(a.pos(ver, u, x.left));
                    else
                        for (int u : succ[static_cast<std::size_t>(v)])
                            an.succ.push_back(a.pos(ver, u, x.left));
                }
            }
        }
    }
    a.solution = solve_arena(a.arena);
    for (int x : p.accepting) {
        a.initial.push_back(a.pos(0, pm.point, a.occs.base_root[static_cast<std::size_t>(x)]));
        a.initial.push_back(a.pos(0, pm.point, a.occs.ind_root[static_cast<std::size_t>(x)]));
    }
    return a;
}

GameOutcome solve_async_game(const Program& p, const PointedModel& pm)
{
    const AsyncArena a = build_async_arena(p, pm);
    GameOutcome out;
    out.winner = Winner::Abelard;
    if (a.initial.empty()) {
        out.diagnostics.push_back("no accepting predicates: Eloise has no initial position");
        return out;
    }
    int start = -1;
    for (int i : a.initial) {
        Winner w = a.solution.win[static_cast<std::size_t>(i)];
        if (w == Winner::Eloise && start < 0)
            start = i;
        if (w == Winner::NoWinner)
            out.diagnostics.push_back("initial position " + a.describe(i) + ": neither player can force a win");
    }
    if (start < 0)
        return out;
    out.winner = Winner::Eloise;
    out.witness.push_back("start: " + a.describe(start));
    // Follow the attractor ranks; every position visited is won by Eloise.
    std::vector<int> stack{start};
    std::set<int> seen{start};
    while (!stack.empty() && out.witness.size() < 400) {
        int v = stack.back();
        stack.pop_back();
        const ArenaNode& an = a.arena[static_cast<std::size_t>(v)];
        if (an.terminal != ArenaNode::None)
            continue;
        std::vector<int> next;
        if (an.chooser == 0) {
            next = winning_choice(a.arena, a.solution, v);
            if (an.succ.size() > 1 || an.k > 1) {
                std::string what;
                for (int u : next)
                    what += (what.empty() ? "" : " ") + a.describe(u);
                out.witness.push_back(a.describe(v) + ": move to " + what);
            }
        } else {
            const int r = a.solution.rank[static_cast<std::size_t>(v)];
            for (int u : an.succ)
                if (a.solution.win[static_cast<std::size_t>(u)] == Winner::Eloise && a.solution.rank[static_cast<std::size_t>(u)] < r)
                    next.push_back(u);
            if (an.k > 1 || an.succ.size() > 1)
                out.witness.push_back(a.describe(v) + ": reply with a position of lower rank among the " +
                                      std::to_string(next.size()) + " she wins");
        }
        for (int u : next)
            if (seen.insert(u).second)
                stack.push_back(u);
    }
    return out;
}

bool global_challenge_eloise_wins(const Program& p, const PointedModel& pm, const GlobalConfiguration& f,
                                  const GlobalConfiguration* next, int node, int pred)
{
    const bool claimed = f.get(node, pred);
    const Schema& body = next ? p.induction[static_cast<std::size_t>(pred)] : p.base[static_cast<std::size_t>(pred)];
    GlobalConfiguration empty(pm.model.node_count, static_cast<int>(p.size()));
    GameOutcome g = solve_formula_game(pm.model, next ? *next : empty, node, body, p.variables);
    return claimed == (g.winner == Winner::Eloise);
}

std::optional<GlobalStrategy> global_game_eloise_strategy(const Program& p, const PointedModel& pm,
                                                          std::optional<long> max_rounds)
{
    if (p.semantics != Semantics::Sync)
        throw ValidationError("the global game is defined for synchronous programs");
    const Program q = without_rejection(p);
    if (q.accepting.empty())
        return std::nullopt;
    const Verdict v = run(q, pm, max_rounds);
    if (!v.accepted())
        return std::nullopt;
    GlobalStrategy s;
    auto forward = trace_run(q, pm.model, v.round);
    s.trace.assign(forward.rbegin(), forward.rend());
    GlobalConfiguration empty(pm.model.node_count, static_cast<int>(q.size()));
    for (std::size_t i = 0; i < s.trace.size(); ++i) {
        const bool final = i + 1 == s.trace.size();
        for (int node = 0; node < pm.model.node_count; ++node) {
            for (int x = 0; x < static_cast<int>(q.size()); ++x) {
                ChallengeResponse r;
                r.step = static_cast<int>(i);
                r.node = node;
                r.pred = x;
                r.claimed = s.trace[i].get(node, x);
                const Schema& body = final ? q.base[static_cast<std::size_t>(x)] : q.induction[static_cast<std::size_t>(x)];
                r.game = solve_formula_game(pm.model, final ? empty : s.trace[i + 1], node, body, q.variables);
                s.responses.push_back(std::move(r));
            }
        }
    }
    return s;
}

bool global_strategy_survives(const Program& p, const PointedModel& pm, const GlobalStrategy& s)
{
    if (s.trace.empty())
        return false;
    bool initial = false;
    for (int a : p.accepting)
        initial = initial || s.trace.front().get(pm.point, a);
    if (!initial)
        return false;
    for (std::size_t i = 0; i < s.trace.size(); ++i) {
        const GlobalConfiguration* next = i + 1 < s.trace.size() ? &s.trace[i + 1] : nullptr;
        for (int node = 0; node < pm.model.node_count; ++node)
            for (int x = 0; x < static_cast<int>(p.size()); ++x)
                if (!global_challenge_eloise_wins(p, pm, s.trace[i], next, node, x))
                    return false;
    }
    return true;
}

GlobalConfiguration parse_configuration(const std::string& text, const Program& p, int nodes)
{
    GlobalConfiguration g(nodes, static_cast<int>(p.size()));
    int node = -1;
    bool open = false;
    std::string name;
    auto flush = [&]() {
        if (name.empty())
            return;
        int i = p.index_of(name);
        if (i < 0)
            throw ValidationError("unknown predicate '" + name + "' in labelled tuple");
        g.set(node, i);
        name.clear();
    };
    for (char c : text) {
        if (c == '{') {
            if (open)
                throw ValidationError("nested '{' in labelled tuple");
            open = true;
            if (++node >= nodes)
                throw ValidationError("labelled tuple has more than " + std::to_string(nodes) + " groups");
        } else if (c == '}') {
            if (!open)
                throw ValidationError("unbalanced '}' in labelled tuple");
            flush();
            open = false;
        } else if (c == ',' || c == ' ' || c == '\t') {
            if (open)
                flush();
        } else {
            if (!open)
                throw ValidationError("predicate names must appear inside braces");
            name += c;
        }
    }
    if (open)
        throw ValidationError("unterminated '{' in labelled tuple");
    if (node + 1 != nodes)
        throw ValidationError("labelled tuple needs one brace group per node (" + std::to_string(nodes) + ")");
    return g;
}

const char* game_kind_name(GameSession::Kind k)
{
    switch (k) {
    case GameSession::Kind::Standard: return "standard";
    case GameSession::Kind::Async: return "async";
    case GameSession::Kind::Global: return "global";
    }
    return "?";
}

// ---------------------------------------------------------------------------------------
// Referee

struct GameSession::Impl {
    Program prog;
    PointedModel pm;
    Kind kind;
    OccTable t;
    std::vector<std::vector<int>> succ;

    bool finished = false;
    Winner winner = Winner::Abelard;
    std::string reason;
    std::vector<std::string> history;

    // Formula positions (standard and async).
    bool started = false;
    int ver = 0;
    int node = 0;
    int occ = -1;
    int clock = 0;
    std::vector<int> offered;  // a k-set awaiting the other player's pick

    // Global positions.
    enum class Phase { Initial, Declare, Respond, FinalChallenge } phase = Phase::Initial;
    GlobalConfiguration f;
    GlobalConfiguration proposed;

    // Solvers behind suggest().
    std::unique_ptr<ClockedValues> values;
    std::optional<AsyncArena> arena;
    std::optional<GlobalStrategy> strategy;
    bool strategy_done = false;

    Impl(const Program& p, const PointedModel& m, Kind k) : prog(p), pm(m), kind(k)
    {
        prog.validate();
        if (kind != Kind::Async && prog.semantics == Semantics::Async)
            prog.semantics = Semantics::Sync;
        t = occurrence_table(prog);
        succ = pm.model.successors();
        if (prog.accepting.empty())
            end(Winner::Abelard, "no accepting predicates: Eloise automatically loses");
    }

    void end(Winner w, std::string why)
    {
        finished = true;
        winner = w;
        reason = std::move(why);
    }

    const OccTable::Occ& cur() const { return t.occ[static_cast<std::size_t>(occ)]; }

    int chooser() const
    {
        if (kind == Kind::Global)
            return phase == Phase::Initial || phase == Phase::Declare ? 0 : 1;
        if (!started)
            return 0;
        const Op op = cur().s->op;
        const bool verifier_chooses = op == Op::Or || op == Op::Dia || op == Op::GDia || op == Op::Var || op == Op::Not;
        const int c = verifier_chooses ? ver : 1 - ver;
        return offered.empty() ? c : 1 - c;
    }

    std::vector<int> candidates() const
    {
        std::vector<int> out;
        if (is_global(cur().s->op)) {
            for (int u = 0; u < pm.model.node_count; ++u)
                out.push_back(u);
        } else {
            out = succ[static_cast<std::size_t>(node)];
        }
        return out;
    }

    std::string position() const
    {
        std::string s = "(" + std::string(player(ver)) + ", " + std::to_string(node) + ", " + t.text(occ);
        if (kind == Kind::Standard)
            s += ", " + std::to_string(clock);
        return s + ")";
    }

    // Ends the game at terminal positions.
    void settle()
    {
        const Op op = cur().s->op;
        if (op == Op::Top)
            end(ver == 0 ? Winner::Eloise : Winner::Abelard, "game.const: T, the verifier wins");
        else if (op == Op::Bottom)
            end(ver == 0 ? Winner::Abelard : Winner::Eloise, "game.const: F, the falsifier wins");
        else if (op == Op::Prop) {
            const bool h = pm.model.holds(node, cur().s->name);
            const bool verifier = h;
            end((verifier == (ver == 0)) ? Winner::Eloise : Winner::Abelard,
                std::string("game.prop: ") + cur().s->name + (h ? " holds" : " fails") + " at node " + std::to_string(node));
        }
    }

    static std::vector<std::string> words(const std::string& s)
    {
        std::istringstream in(s);
        std::vector<std::string> out;
        std::string w;
        while (in >> w)
            out.push_back(w);
        return out;
    }

    static int to_int(const std::string& s, const std::string& rule)
    {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) || s.size() > 9)
            throw IllegalMove(rule, "'" + s + "' is not a node or clock number");
        return std::stoi(s);
    }

    void start_formula(const std::vector<std::string>& w)
    {
        const std::string rule = "initial position";
        if (w.size() < 3 || w[0] != "start")
            throw IllegalMove(rule, kind == Kind::Standard ? "expected 'start X base' or 'start X iter N'"
                                                           : "expected 'start X base' or 'start X iter'");
        const int x = prog.index_of(w[1]);
        if (x < 0 || !prog.is_accepting(x))
            throw IllegalMove(rule, "'" + w[1] + "' is not an accepting predicate");
        if (w[2] == "base") {
            if (w.size() != 3)
                throw IllegalMove(rule, "a base body takes no clock");
            occ = t.base_root[static_cast<std::size_t>(x)];
            clock = 0;
        } else if (w[2] == "iter") {
            occ = t.ind_root[static_cast<std::size_t>(x)];
            if (kind == Kind::Standard) {
                if (w.size() != 4)
                    throw IllegalMove(rule, "an induction body needs a clock: 'start X iter N'");
                clock = to_int(w[3], rule);
            } else if (w.size() != 3) {
                throw IllegalMove(rule, "the asynchronous game has no clock");
            }
        } else {
            throw IllegalMove(rule, "choose 'base' or 'iter'");
        }
        ver = 0;
        node = pm.point;
        started = true;
        settle();
    }

    void formula_move(const std::vector<std::string>& w)
    {
        const auto& x = cur();
        const Op op = x.s->op;
        const std::string mv = w.empty() ? "" : w[0];
        if (!offered.empty()) {
            const std::string rule = op == Op::Dia ? "game.dia" : op == Op::Box ? "game.box" : op == Op::GDia ? "game.gdia" : "game.gbox";
            if (w.size() != 2 || mv != "pick")
                throw IllegalMove(rule, "expected 'pick u' with u one of " + node_list(offered));
            const int u = to_int(w[1], rule);
            if (std::find(offered.begin(), offered.end(), u) == offered.end())
                throw IllegalMove(rule, std::to_string(u) + " is not in the chosen set " + node_list(offered));
            offered.clear();
            node = u;
            occ = x.left;
            settle();
            return;
        }
        switch (op) {
        case Op::Not:
            if (mv != "continue" || w.size() != 1)
                throw IllegalMove("game.not", "negation is forced: enter 'continue'");
            ver = 1 - ver;
            occ = x.left;
            break;
        case Op::Or:
        case Op::And: {
            const std::string rule = op == Op::And ? "game.and" : "game.or";
            if (w.size() != 1 || (mv != "left" && mv != "right"))
                throw IllegalMove(rule, "choose 'left' or 'right'");
            occ = mv == "left" ? x.left : x.right;
            break;
        }
        case Op::Var:
            if (kind == Kind::Standard) {
                const std::string want = clock > 0 ? "iter" : "base";
                if (w.size() != 1 || (mv != "continue" && mv != want))
                    throw IllegalMove("game.var", clock > 0 ? "clock " + std::to_string(clock) +
                                                                 " > 0: the game continues from the induction body at clock " +
                                                                 std::to_string(clock - 1) + " ('continue')"
                                                           : "at clock 0 the game continues from the base body at clock 0 ('continue')");
                if (clock > 0) {
                    occ = t.ind_root[static_cast<std::size_t>(x.var)];
                    --clock;
                } else {
                    occ = t.base_root[static_cast<std::size_t>(x.var)];
                }
            } else {
                if (w.size() != 1 || (mv != "base" && mv != "iter"))
                    throw IllegalMove("variable rule", "the verifier chooses 'base' or 'iter'");
                occ = mv == "base" ? t.base_root[static_cast<std::size_t>(x.var)] : t.ind_root[static_cast<std::size_t>(x.var)];
            }
            break;
        default: {
            const std::string rule = op == Op::Dia ? "game.dia" : op == Op::Box ? "game.box" : op == Op::GDia ? "game.gdia" : "game.gbox";
            const int k = x.s->threshold;
            const auto cand = candidates();
            const int picker = chooser();
            if (static_cast<int>(cand.size()) < k) {
                end(picker == 0 ? Winner::Abelard : Winner::Eloise,
                    rule + ": " + player(picker) + " cannot choose " + std::to_string(k) + " distinct nodes");
                return;
            }
            if (mv != "set" || static_cast<int>(w.size()) != k + 1)
                throw IllegalMove(rule, "expected 'set' followed by " + std::to_string(k) + " distinct nodes from " + node_list(cand));
            std::vector<int> chosen;
            for (std::size_t i = 1; i < w.size(); ++i) {
                const int u = to_int(w[i], rule);
                if (std::find(cand.begin(), cand.end(), u) == cand.end())
                    throw IllegalMove(rule, std::to_string(u) + (is_global(op) ? " is not a node" : " is not an out-neighbour of " + std::to_string(node)));
                if (std::find(chosen.begin(), chosen.end(), u) != chosen.end())
                    throw IllegalMove(rule, "the chosen nodes must be distinct");
                chosen.push_back(u);
            }
            offered = chosen;
            return;
        }
        }
        settle();
    }

    void global_move(const std::string& line, const std::vector<std::string>& w)
    {
        const std::string mv = w.empty() ? "" : w[0];
        auto tuple_after = [&](const std::string& key) {
            return parse_configuration(line.substr(line.find(key) + key.size()), prog, pm.model.node_count);
        };
        auto challenge = [&](const std::string& rule, const GlobalConfiguration* next) {
            if (w.size() != 3 || mv != "challenge")
                throw IllegalMove(rule, "expected 'challenge v X'");
            const int v = to_int(w[1], rule);
            if (v >= pm.model.node_count)
                throw IllegalMove(rule, std::to_string(v) + " is not a node");
            const int x = prog.index_of(w[2]);
            if (x < 0)
                throw IllegalMove(rule, "'" + w[2] + "' is not a head predicate");
            const bool ok = global_challenge_eloise_wins(prog, pm, f, next, v, x);
            end(ok ? Winner::Eloise : Winner::Abelard,
                rule + ": " + w[2] + (f.get(v, x) ? " in" : " not in") + " f(" + std::to_string(v) + ") and the " +
                    (next ? "induction" : "base") + " body " + (ok ? "agrees" : "disagrees"));
        };
        try {
            switch (phase) {
            case Phase::Initial: {
                if (mv != "init")
                    throw IllegalMove("global initial position", "expected 'init {..} {..} ...'");
                GlobalConfiguration g = tuple_after("init");
                bool ok = false;
                for (int a : prog.accepting)
                    ok = ok || g.get(pm.point, a);
                if (!ok)
                    throw IllegalMove("global initial position", "no accepting predicate holds at the point");
                f = g;
                phase = Phase::Declare;
                return;
            }
            case Phase::Declare:
                if (mv == "final" && w.size() == 1) {
                    phase = Phase::FinalChallenge;
                } else if (mv == "next") {
                    proposed = tuple_after("next");
                    phase = Phase::Respond;
                } else {
                    throw IllegalMove("global.final", "Eloise declares 'final' or proposes 'next {..} ...'");
                }
                return;
            case Phase::Respond:
                if (mv == "pass" && w.size() == 1) {
                    f = proposed;
                    phase = Phase::Declare;
                    return;
                }
                challenge("global.next", &proposed);
                return;
            case Phase::FinalChallenge: challenge("global.final", nullptr); return;
            }
        } catch (const ValidationError& e) {
            throw IllegalMove(phase == Phase::Initial ? "global initial position" : "global.next", e.what());
        }
    }

    // Verifier-wins value of the current clocked position, used for suggestions.
    bool std_value(int c, int o, int v)
    {
        if (!values)
            values = std::make_unique<ClockedValues>(t, pm.model);
        return values->val(c, o, v);
    }

    const AsyncArena& async_arena()
    {
        if (!arena)
            arena = build_async_arena(prog, pm);
        return *arena;
    }

    const std::optional<GlobalStrategy>& global_strategy()
    {
        if (!strategy_done) {
            strategy = global_game_eloise_strategy(prog, pm, 1L << 20);
            strategy_done = true;
        }
        return strategy;
    }
};

GameSession::GameSession(const Program& p, const PointedModel& pm, Kind kind) : impl_(std::make_unique<Impl>(p, pm, kind)) {}
GameSession::~GameSession() = default;

GameSession::Kind GameSession::kind() const { return impl_->kind; }
bool GameSession::finished() const { return impl_->finished; }
Winner GameSession::winner() const { return impl_->winner; }
const std::string& GameSession::reason() const { return impl_->reason; }
Winner GameSession::to_move() const { return impl_->chooser() == 0 ? Winner::Eloise : Winner::Abelard; }
const std::vector<std::string>& GameSession::history() const { return impl_->history; }

std::string GameSession::describe() const
{
    const Impl& s = *impl_;
    if (s.finished)
        return std::string("game over: ") + winner_name(s.winner) + " wins (" + s.reason + ")";
    const std::string who = player(s.chooser());
    if (s.kind == Kind::Global) {
        const auto& names = s.prog.variables;
        switch (s.phase) {
        case Impl::Phase::Initial: return "Eloise chooses an initial labelled tuple";
        case Impl::Phase::Declare: return "position f = " + s.f.str(names) + "; Eloise declares final or proposes the next tuple";
        case Impl::Phase::Respond:
            return "position f = " + s.f.str(names) + ", Eloise proposes g = " + s.proposed.str(names) + "; Abelard may challenge";
        case Impl::Phase::FinalChallenge: return "f = " + s.f.str(names) + " declared final; Abelard challenges a node and predicate";
        }
    }
    if (!s.started)
        return "Eloise chooses an initial position";
    std::string d = "position " + s.position();
    if (!s.offered.empty())
        d += ", chosen set " + node_list(s.offered);
    return d + "; " + who + " to move";
}

std::vector<std::string> GameSession::legal_moves() const
{
    const Impl& s = *impl_;
    std::vector<std::string> out;
    if (s.finished)
        return out;
    if (s.kind == Kind::Global) {
        switch (s.phase) {
        case Impl::Phase::Initial: out.push_back("init {..} ... (one group per node, an accepting predicate at the point)"); break;
        case Impl::Phase::Declare:
            out.push_back("final");
            out.push_back("next {..} ... (one group per node)");
            break;
        case Impl::Phase::Respond: out.push_back("pass"); [[fallthrough]];
        case Impl::Phase::FinalChallenge:
            for (int v = 0; v < s.pm.model.node_count; ++v)
                for (const auto& x : s.prog.variables)
                    out.push_back("challenge " + std::to_string(v) + " " + x);
            break;
        }
        return out;
    }
    if (!s.started) {
        for (int a : s.prog.accepting) {
            const auto& x = s.prog.variables[static_cast<std::size_t>(a)];
            out.push_back("start " + x + " base");
            out.push_back(s.kind == Kind::Standard ? "start " + x + " iter N" : "start " + x + " iter");
        }
        return out;
    }
    if (!s.offered.empty()) {
        for (int u : s.offered)
            out.push_back("pick " + std::to_string(u));
        return out;
    }
    const auto& x = s.cur();
    switch (x.s->op) {
    case Op::Not: out.push_back("continue"); break;
    case Op::Or:
    case Op::And:
        out.push_back("left");
        out.push_back("right");
        break;
    case Op::Var:
        if (s.kind == Kind::Standard) {
            out.push_back("continue");
        } else {
            out.push_back("base");
            out.push_back("iter");
        }
        break;
    default: {
        const auto cand = s.candidates();
        const int k = x.s->threshold;
        if (static_cast<int>(cand.size()) < k) {
            out.push_back("concede (fewer than " + std::to_string(k) + " nodes to choose from)");
            break;
        }
        // All k-subsets, in node order.
        std::vector<int> idx(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            idx[static_cast<std::size_t>(i)] = i;
        while (out.size() < 64) {
            std::string m = "set";
            for (int i : idx)
                m += " " + std::to_string(cand[static_cast<std::size_t>(i)]);
            out.push_back(m);
            int i = k - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == static_cast<int>(cand.size()) - k + i)
                --i;
            if (i < 0)
                break;
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    }
    return out;
}

std::string GameSession::suggest() const
{
    Impl& s = *impl_;
    if (s.finished)
        return "";
    const int me = s.chooser();
    if (s.kind == Kind::Global) {
        const auto& st = s.global_strategy();
        const auto& names = s.prog.variables;
        auto find_step = [&](const GlobalConfiguration& g) -> int {
            if (!st)
                return -1;
            for (std::size_t i = 0; i < st->trace.size(); ++i)
                if (st->trace[i] == g)
                    return static_cast<int>(i);
            return -1;
        };
        switch (s.phase) {
        case Impl::Phase::Initial: {
            if (st)
                return "init " + st->trace.front().str(names);
            GlobalConfiguration all(s.pm.model.node_count, static_cast<int>(s.prog.size()));
            for (int v = 0; v < s.pm.model.node_count; ++v)
                for (int x = 0; x < static_cast<int>(s.prog.size()); ++x)
                    all.set(v, x);
            return "init " + all.str(names);
        }
        case Impl::Phase::Declare: {
            int i = find_step(s.f);
            if (i >= 0 && i + 1 < static_cast<int>(st->trace.size()))
                return "next " + st->trace[static_cast<std::size_t>(i + 1)].str(names);
            return "final";
        }
        case Impl::Phase::Respond:
        case Impl::Phase::FinalChallenge: {
            const GlobalConfiguration* next = s.phase == Impl::Phase::Respond ? &s.proposed : nullptr;
            for (int v = 0; v < s.pm.model.node_count; ++v)
                for (int x = 0; x < static_cast<int>(s.prog.size()); ++x)
                    if (!global_challenge_eloise_wins(s.prog, s.pm, s.f, next, v, x))
                        return "challenge " + std::to_string(v) + " " + names[static_cast<std::size_t>(x)];
            if (next)
                return "pass";
            return "challenge 0 " + names.front();
        }
        }
    }

    if (s.kind == Kind::Async) {
        const AsyncArena& a = s.async_arena();
        if (!s.started) {
            for (std::size_t i = 0; i < a.initial.size(); ++i)
                if (a.solution.win[static_cast<std::size_t>(a.initial[i])] == Winner::Eloise) {
                    const auto& x = s.prog.variables[static_cast<std::size_t>(s.prog.accepting[i / 2])];
                    return "start " + x + (i % 2 == 0 ? " base" : " iter");
                }
            return legal_moves().front();
        }
        const int here = a.pos(s.ver, s.node, s.occ);
        const Winner mine = me == 0 ? Winner::Eloise : Winner::Abelard;
        auto good = [&](int p) { return a.solution.win[static_cast<std::size_t>(p)] == mine; };
        const auto& x = s.cur();
        if (!s.offered.empty()) {
            for (int u : s.offered)
                if (good(a.pos(s.ver, u, x.left)))
                    return "pick " + std::to_string(u);
            return "pick " + std::to_string(s.offered.front());
        }
        const ArenaNode& an = a.arena[static_cast<std::size_t>(here)];
        switch (x.s->op) {
        case Op::Not: return "continue";
        case Op::Var: return good(an.succ[1]) && !good(an.succ[0]) ? "iter" : "base";
        case Op::Or:
        case Op::And: return good(an.succ[0]) ? "left" : good(an.succ[1]) ? "right" : "left";
        default: {
            const auto cand = s.candidates();
            std::vector<int> pick;
            for (int u : cand)
                if (good(a.pos(s.ver, u, x.left)) && static_cast<int>(pick.size()) < x.s->threshold)
                    pick.push_back(u);
            for (int u : cand)
                if (static_cast<int>(pick.size()) < x.s->threshold && std::find(pick.begin(), pick.end(), u) == pick.end())
                    pick.push_back(u);
            if (static_cast<int>(pick.size()) < x.s->threshold)
                return "concede";
            std::string m = "set";
            for (int u : pick)
                m += " " + std::to_string(u);
            return m;
        }
        }
    }

    // Standard game.
    if (!s.started) {
        const Program q = without_rejection(s.prog);
        const Verdict v = run(q, s.pm, 1L << 20);
        if (v.accepted()) {
            const int round = static_cast<int>(v.round);
            for (int a : q.accepting) {
                const auto& x = q.variables[static_cast<std::size_t>(a)];
                if (round == 0 && s.std_value(0, s.t.base_root[static_cast<std::size_t>(a)], s.pm.point))
                    return "start " + x + " base";
                if (round > 0 && s.std_value(round - 1, s.t.ind_root[static_cast<std::size_t>(a)], s.pm.point))
                    return "start " + x + " iter " + std::to_string(round - 1);
            }
        }
        return "start " + s.prog.variables[static_cast<std::size_t>(s.prog.accepting.front())] + " base";
    }
    const auto& x = s.cur();
    auto wins = [&](int ver, int o, int v) { return s.std_value(s.clock, o, v) == (ver == me); };
    if (!s.offered.empty()) {
        for (int u : s.offered)
            if (wins(s.ver, x.left, u))
                return "pick " + std::to_string(u);
        return "pick " + std::to_string(s.offered.front());
    }
    switch (x.s->op) {
    case Op::Not:
    case Op::Var: return "continue";
    case Op::Or:
    case Op::And: return wins(s.ver, x.left, s.node) ? "left" : "right";
    default: {
        const auto cand = s.candidates();
        std::vector<int> pick;
        for (int u : cand)
            if (wins(s.ver, x.left, u) && static_cast<int>(pick.size()) < x.s->threshold)
                pick.push_back(u);
        for (int u : cand)
            if (static_cast<int>(pick.size()) < x.s->threshold && std::find(pick.begin(), pick.end(), u) == pick.end())
                pick.push_back(u);
        if (static_cast<int>(pick.size()) < x.s->threshold)
            return "concede";
        std::string m = "set";
        for (int u : pick)
            m += " " + std::to_string(u);
        return m;
    }
    }
}

void GameSession::apply(const std::string& move)
{
    Impl& s = *impl_;
    if (s.finished)
        throw IllegalMove("game over", "the game has already ended");
    const auto w = Impl::words(move);
    if (s.kind == Kind::Global)
        s.global_move(move, w);
    else if (!s.started)
        s.start_formula(w);
    else
        s.formula_move(w);
    s.history.push_back(move);
}

}  // namespace msc
