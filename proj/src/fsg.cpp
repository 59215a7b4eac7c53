#include "msc/fsg.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "msc/errors.hpp"
#include "msc/eval.hpp"

namespace msc {

bool operator==(const ClockedModel& a, const ClockedModel& b)
{
    return a.clock == b.clock && a.pointed == b.pointed;
}

ClockedClass::ClockedClass(std::initializer_list<ClockedModel> xs)
{
    for (const auto& x : xs)
        insert(x);
}

ClockedClass::ClockedClass(const std::vector<ClockedModel>& xs)
{
    for (const auto& x : xs)
        insert(x);
}

bool ClockedClass::insert(const ClockedModel& m)
{
    if (contains(m))
        return false;
    items_.push_back(m);
    return true;
}

bool ClockedClass::contains(const ClockedModel& m) const
{
    return std::find(items_.begin(), items_.end(), m) != items_.end();
}

void ClockedClass::unite(const ClockedClass& o)
{
    for (const auto& x : o)
        insert(x);
}

bool ClockedClass::subset_of(const ClockedClass& o) const
{
    return std::all_of(items_.begin(), items_.end(), [&](const ClockedModel& m) { return o.contains(m); });
}

bool ClockedClass::operator==(const ClockedClass& o) const
{
    return size() == o.size() && subset_of(o);
}

ClockedClass clocked(const std::vector<PointedModel>& ms, int clock)
{
    ClockedClass c;
    for (const auto& m : ms)
        c.insert(ClockedModel{m, clock});
    return c;
}

ClockedClass iter_class(const ClockedClass& c)
{
    ClockedClass out;
    for (const auto& m : c)
        if (m.clock > 0)
            out.insert(ClockedModel{m.pointed, m.clock - 1});
    return out;
}

ClockedClass init_class(const ClockedClass& c)
{
    ClockedClass out;
    for (const auto& m : c)
        if (m.clock == 0)
            out.insert(m);
    return out;
}

namespace {

ClockedModel repoint(const ClockedModel& m, int node)
{
    ClockedModel r = m;
    r.pointed.point = node;
    return r;
}

// Nodes a variant of m may be pointed at.
std::vector<int> candidates(const ClockedModel& m, bool global)
{
    const KripkeModel& k = m.pointed.model;
    std::vector<int> out;
    if (global) {
        for (int u = 0; u < k.node_count; ++u)
            out.push_back(u);
    } else {
        for (auto [a, b] : k.edges)
            if (a == m.pointed.point)
                out.push_back(b);
    }
    return out;
}

}  // namespace

ClockedClass box_class(const ClockedClass& c)
{
    ClockedClass out;
    for (const auto& m : c)
        for (int u : candidates(m, false))
            out.insert(repoint(m, u));
    return out;
}

ClockedClass gbox_class(const ClockedClass& c)
{
    ClockedClass out;
    for (const auto& m : c)
        for (int u : candidates(m, true))
            out.insert(repoint(m, u));
    return out;
}

ClockedClass successor_image(const SuccessorFunction& f)
{
    ClockedClass out;
    for (const auto& e : f)
        for (int u : e.to)
            out.insert(repoint(e.from, u));
    return out;
}

void check_successor_function(const SuccessorFunction& f, const ClockedClass& c, int m, bool global, bool total,
                              const std::string& rule)
{
    ClockedClass dom;
    for (const auto& e : f) {
        if (!c.contains(e.from))
            throw IllegalMove(rule, "the function is defined outside its class");
        if (!dom.insert(e.from))
            throw IllegalMove(rule, "a model is assigned twice");
        if (static_cast<int>(e.to.size()) != m)
            throw IllegalMove(rule, "each model needs exactly " + std::to_string(m) + " variants");
        std::set<int> seen(e.to.begin(), e.to.end());
        if (static_cast<int>(seen.size()) != m)
            throw IllegalMove(rule, "variants must be pointed at distinct nodes");
        const std::vector<int> ok = candidates(e.from, global);
        for (int u : e.to)
            if (std::find(ok.begin(), ok.end(), u) == ok.end())
                throw IllegalMove(rule, global ? "node out of range" : "variant is not pointed at a successor");
    }
    if (total && dom.size() != c.size())
        throw IllegalMove(rule, "the function must cover the whole class");
}

const char* fsg_player_name(FsgPlayer p) { return p == FsgPlayer::Samson ? "Samson" : "Delilah"; }

const char* fsg_move_name(FsgMoveKind k)
{
    switch (k) {
    case FsgMoveKind::Neg: return "neg";
    case FsgMoveKind::Or: return "or";
    case FsgMoveKind::And: return "and";
    case FsgMoveKind::Dia: return "dia";
    case FsgMoveKind::Box: return "box";
    case FsgMoveKind::GDia: return "gdia";
    case FsgMoveKind::GBox: return "gbox";
    case FsgMoveKind::Sig: return "sig";
    case FsgMoveKind::Var: return "var";
    }
    return "?";
}

bool FsgPosition::in_u(int v) const { return std::binary_search(U.begin(), U.end(), v); }

namespace {

std::string label_text(const ForestLabel& l)
{
    switch (l.op) {
    case Op::Bottom: return "F";
    case Op::Top: return "T";
    case Op::Prop:
    case Op::Var: return l.name;
    case Op::Not: return "!";
    case Op::Or: return "|";
    case Op::And: return "&";
    case Op::Dia: return "<" + std::to_string(l.threshold) + ">";
    case Op::Box: return "[" + std::to_string(l.threshold) + "]";
    case Op::GDia: return "<E" + std::to_string(l.threshold) + ">";
    case Op::GBox: return "[E" + std::to_string(l.threshold) + "]";
    }
    return "?";
}

std::string class_text(const ClockedClass& c)
{
    std::string s = "{";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i)
            s += ", ";
        s += "(" + std::to_string(c[i].pointed.model.node_count) + "n@" + std::to_string(c[i].pointed.point) +
             ",l=" + std::to_string(c[i].clock) + ")";
    }
    return s + "}";
}

}  // namespace

std::string FsgPosition::describe() const
{
    std::ostringstream os;
    os << "resources " << resources() << "/" << budget << "\n";
    for (std::size_t v = 0; v < forest.nodes.size(); ++v) {
        const auto& nd = forest.nodes[v];
        os << (in_u(static_cast<int>(v)) ? "* " : "  ") << v << " " << nd.pred << (nd.iter ? "/iter" : "/base")
           << " parent=" << nd.parent << " label=" << (nd.labeled ? label_text(nd.label) : "-")
           << " L=" << class_text(left[v]) << " R=" << class_text(right[v]) << "\n";
    }
    if (winner)
        os << "winner " << fsg_player_name(*winner) << ": " << reason << "\n";
    return os.str();
}

namespace {

void check_losses(FsgPosition& p)
{
    if (p.winner)
        return;
    if (p.resources() > p.budget) {
        p.winner = FsgPlayer::Delilah;
        p.reason = "resources " + std::to_string(p.resources()) + " exceed the budget " + std::to_string(p.budget);
        return;
    }
    for (std::size_t v = 0; v < p.forest.nodes.size(); ++v) {
        if (p.forest.nodes[v].iter)
            continue;
        for (const auto& m : p.left[v])
            if (m.clock > 0) {
                p.winner = FsgPlayer::Delilah;
                p.reason = "base node " + std::to_string(v) + " holds a left model with a positive clock";
                return;
            }
    }
}

}  // namespace

FsgPosition fsg_start(const ClockedClass& A, const ClockedClass& B, const std::vector<FsgRoot>& roots,
                      const std::vector<ClockedClass>& left0, int budget, const std::vector<std::string>& props)
{
    if (roots.empty())
        throw ValidationError("the initial forest needs at least one root");
    if (left0.size() != roots.size())
        throw ValidationError("one left class per root is required");
    std::set<std::pair<std::string, bool>> tags;
    for (const auto& r : roots)
        if (!tags.insert({r.pred, r.iter}).second)
            throw ValidationError("root (" + r.pred + ", " + (r.iter ? "iter" : "base") + ") given twice");
    for (const auto& r : roots)
        if (!tags.count({r.pred, !r.iter}))
            throw ValidationError("root of " + r.pred + " lacks its " + (r.iter ? "base" : "iter") + " partner");
    ClockedClass covered;
    for (const auto& c : left0) {
        if (!c.subset_of(A))
            throw ValidationError("a left class contains a model outside A");
        covered.unite(c);
    }
    if (!(covered == A))
        throw ValidationError("the left classes do not cover A");

    FsgPosition p;
    p.budget = budget;
    p.props = props;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        int v = p.forest.add_root(roots[i].pred, roots[i].iter);
        p.U.push_back(v);
        p.left.push_back(left0[i]);
        p.right.push_back(roots[i].iter ? init_class(B) : B);
    }
    check_losses(p);
    return p;
}

namespace {

bool label_matches(const ForestLabel& l, const FsgMove& mv)
{
    switch (mv.kind) {
    case FsgMoveKind::Neg: return l.op == Op::Not;
    case FsgMoveKind::Or: return l.op == Op::Or;
    case FsgMoveKind::And: return l.op == Op::And;
    case FsgMoveKind::Dia: return l.op == Op::Dia && l.threshold == mv.threshold;
    case FsgMoveKind::Box: return l.op == Op::Box && l.threshold == mv.threshold;
    case FsgMoveKind::GDia: return l.op == Op::GDia && l.threshold == mv.threshold;
    case FsgMoveKind::GBox: return l.op == Op::GBox && l.threshold == mv.threshold;
    case FsgMoveKind::Sig: return is_leaf(l.op) && l.op != Op::Var && l == mv.symbol;
    case FsgMoveKind::Var: return l.op == Op::Var && l.name == mv.var;
    }
    return false;
}

bool symbol_holds(const ForestLabel& s, const ClockedModel& m)
{
    if (s.op == Op::Top)
        return true;
    if (s.op == Op::Bottom)
        return false;
    return m.pointed.model.holds(m.pointed.point, s.name);
}

}  // namespace

FsgPosition fsg_apply(const FsgPosition& pos, int v, const FsgMove& mv)
{
    if (pos.finished())
        throw IllegalMove("fsg.finished", "the play is already decided");
    if (!pos.in_u(v))
        throw IllegalMove("fsg.node", "node " + std::to_string(v) + " is not open");
    FsgPosition P = pos;
    SyntaxForest& F = P.forest;
    const ForestNode nd = F.nodes[static_cast<std::size_t>(v)];
    const ClockedClass L = pos.left[static_cast<std::size_t>(v)];
    const ClockedClass R = pos.right[static_cast<std::size_t>(v)];
    const bool labeled = nd.labeled;
    if (labeled && !label_matches(nd.label, mv))
        throw IllegalMove("fsg.label", "node " + std::to_string(v) + " is labeled " + label_text(nd.label) +
                                           " and only that move may be played there");
    if (mv.kind != FsgMoveKind::Sig && mv.kind != FsgMoveKind::Var && mv.kind != FsgMoveKind::Neg &&
        mv.kind != FsgMoveKind::Or && mv.kind != FsgMoveKind::And && mv.threshold < 1)
        throw IllegalMove("fsg.threshold", "thresholds start at 1");

    P.U.erase(std::find(P.U.begin(), P.U.end(), v));
    auto open = [&](int u) {
        auto it = std::lower_bound(P.U.begin(), P.U.end(), u);
        if (it == P.U.end() || *it != u)
            P.U.insert(it, u);
    };
    auto child = [&](std::size_t i) {
        if (labeled)
            return nd.children[i];
        int c = F.add_child(v);
        P.left.emplace_back();
        P.right.emplace_back();
        return c;
    };
    auto label = [&](Op op, int k = 0, const std::string& name = "") {
        if (!labeled)
            F.set_label(v, ForestLabel{op, k, name});
    };
    auto at = [](std::vector<ClockedClass>& xs, int u) -> ClockedClass& { return xs[static_cast<std::size_t>(u)]; };
    auto clear_v = [&] {
        at(P.left, v) = {};
        at(P.right, v) = {};
    };
    auto lose = [&](const std::string& why) {
        P.winner = FsgPlayer::Delilah;
        P.reason = why;
        return P;
    };

    switch (mv.kind) {
    case FsgMoveKind::Neg: {
        label(Op::Not);
        int c = child(0);
        at(P.left, c).unite(R);
        at(P.right, c).unite(L);
        clear_v();
        open(c);
        break;
    }
    case FsgMoveKind::Or:
    case FsgMoveKind::And: {
        const bool is_or = mv.kind == FsgMoveKind::Or;
        const ClockedClass& split = is_or ? L : R;
        const std::string rule = is_or ? "fsg.or.split" : "fsg.and.split";
        if (!mv.first.subset_of(split) || !mv.second.subset_of(split))
            throw IllegalMove(rule, "the parts must be subsets of the split class");
        ClockedClass both = mv.first;
        both.unite(mv.second);
        if (!(both == split))
            throw IllegalMove(rule, "the parts must cover the split class");
        label(is_or ? Op::Or : Op::And);
        int c1 = child(0);
        int c2 = child(1);
        if (is_or) {
            at(P.left, c1).unite(mv.first);
            at(P.left, c2).unite(mv.second);
            at(P.right, c1).unite(R);
            at(P.right, c2).unite(R);
        } else {
            at(P.left, c1).unite(L);
            at(P.left, c2).unite(L);
            at(P.right, c1).unite(mv.first);
            at(P.right, c2).unite(mv.second);
        }
        clear_v();
        open(c1);
        open(c2);
        break;
    }
    case FsgMoveKind::Dia:
    case FsgMoveKind::Box:
    case FsgMoveKind::GDia:
    case FsgMoveKind::GBox: {
        const bool global = mv.kind == FsgMoveKind::GDia || mv.kind == FsgMoveKind::GBox;
        const bool dia = mv.kind == FsgMoveKind::Dia || mv.kind == FsgMoveKind::GDia;
        const int m = mv.threshold;
        const ClockedClass& mine = dia ? L : R;    // Samson's total function
        const ClockedClass& hers = dia ? R : L;    // Delilah's partial function
        const std::string name = fsg_move_name(mv.kind);
        for (const auto& x : mine)
            if (static_cast<int>(candidates(x, global).size()) < m) {
                label(mv.kind == FsgMoveKind::Dia    ? Op::Dia
                      : mv.kind == FsgMoveKind::Box  ? Op::Box
                      : mv.kind == FsgMoveKind::GDia ? Op::GDia
                                                     : Op::GBox,
                      m);
                return lose("Samson cannot give an " + std::to_string(m) + (global ? "-global" : "-successor") +
                            " function: a model has too few " + (global ? "nodes" : "successors"));
            }
        check_successor_function(mv.samson_function, mine, m, global, true, "fsg." + name + ".samson");
        check_successor_function(mv.delilah_function, hers, m, global, false, "fsg." + name + ".delilah");
        const ClockedClass image = successor_image(mv.samson_function);
        if (!mv.delilah_pick.subset_of(image))
            throw IllegalMove("fsg." + name + ".pick", "Delilah's pick must come from Samson's variants");
        if (mv.samson_replies.size() != mv.delilah_function.size())
            throw IllegalMove("fsg." + name + ".reply", "Samson answers every model in Delilah's function");
        ClockedClass answered;
        for (std::size_t i = 0; i < mv.samson_replies.size(); ++i) {
            const auto& rep = mv.samson_replies[i];
            const auto& to = mv.delilah_function[i].to;
            if (rep.empty())
                throw IllegalMove("fsg." + name + ".reply", "replies must be non-empty");
            for (int u : rep) {
                if (std::find(to.begin(), to.end(), u) == to.end())
                    throw IllegalMove("fsg." + name + ".reply", "a reply must come from Delilah's variants");
                answered.insert(repoint(mv.delilah_function[i].from, u));
            }
        }
        const Op op = mv.kind == FsgMoveKind::Dia    ? Op::Dia
                      : mv.kind == FsgMoveKind::Box  ? Op::Box
                      : mv.kind == FsgMoveKind::GDia ? Op::GDia
                                                     : Op::GBox;
        label(op, m);
        int c = child(0);
        at(P.left, c).unite(dia ? mv.delilah_pick : answered);
        at(P.right, c).unite(dia ? answered : mv.delilah_pick);
        clear_v();
        open(c);
        break;
    }
    case FsgMoveKind::Sig: {
        const ForestLabel& s = mv.symbol;
        if (s.op != Op::Top && s.op != Op::Bottom && s.op != Op::Prop)
            throw IllegalMove("fsg.sig.symbol", "the symbol must be a proposition, T or F");
        if (s.op == Op::Prop && !pos.props.empty() &&
            std::find(pos.props.begin(), pos.props.end(), s.name) == pos.props.end())
            throw IllegalMove("fsg.sig.symbol", "'" + s.name + "' is not one of the game's propositions");
        label(s.op, 0, s.name);
        clear_v();
        bool sep = std::all_of(L.begin(), L.end(), [&](const ClockedModel& m) { return symbol_holds(s, m); }) &&
                   std::none_of(R.begin(), R.end(), [&](const ClockedModel& m) { return symbol_holds(s, m); });
        P.winner = sep ? FsgPlayer::Samson : FsgPlayer::Delilah;
        P.reason = label_text(s) + (sep ? " separates" : " does not separate") + " the classes at node " +
                   std::to_string(v);
        return P;
    }
    case FsgMoveKind::Var: {
        if (mv.var.empty())
            throw IllegalMove("fsg.var", "a variable name is required");
        if (!nd.iter) {
            label(Op::Var, 0, mv.var);
            return lose("variable move at base node " + std::to_string(v));
        }
        label(Op::Var, 0, mv.var);
        auto target = [&](bool iter) {
            int t = F.find_root(mv.var, iter);
            if (t < 0) {
                t = F.add_root(mv.var, iter);
                P.left.emplace_back();
                P.right.emplace_back();
            }
            F.add_back_edge(v, t);
            return t;
        };
        if (!mv.challenge) {
            const ClockedClass il = iter_class(L);
            const ClockedClass ir = iter_class(R);
            if (il.empty() && ir.empty()) {
                at(P.left, v) = init_class(L);
                at(P.right, v) = init_class(R);
                P.winner = FsgPlayer::Samson;
                P.reason = "no clock left to iterate at node " + std::to_string(v);
                return P;
            }
            int t = target(true);
            at(P.left, t).unite(il);
            at(P.right, t).unite(ir);
            at(P.left, v) = init_class(L);
            at(P.right, v) = init_class(R);
            open(t);
        } else {
            int t = target(false);
            at(P.left, t).unite(init_class(L));
            at(P.right, t).unite(init_class(R));
            clear_v();
            open(t);
        }
        break;
    }
    }
    check_losses(P);
    return P;
}

std::optional<std::vector<int>> find_position_embedding(const FsgPosition& pos, const SyntaxForest& pf)
{
    const SyntaxForest& F = pos.forest;
    const int n = static_cast<int>(F.nodes.size());
    // Parents before children: roots first, then breadth-first.
    std::vector<int> order;
    for (int r : F.roots())
        order.push_back(r);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int c : F.nodes[static_cast<std::size_t>(order[i])].children)
            order.push_back(c);
    std::vector<int> g(static_cast<std::size_t>(n), -1);
    std::vector<bool> used(pf.nodes.size(), false);
    auto compatible = [&](int u, int s) {
        const auto& a = F.nodes[static_cast<std::size_t>(u)];
        const auto& b = pf.nodes[static_cast<std::size_t>(s)];
        if (used[static_cast<std::size_t>(s)] || a.pred != b.pred || a.iter != b.iter)
            return false;
        if (a.labeled && (!b.labeled || !(a.label == b.label)))
            return false;
        return true;
    };
    auto back_edges_ok = [&] {
        for (auto [a, b] : F.back_edges) {
            auto e = std::make_pair(g[static_cast<std::size_t>(a)], g[static_cast<std::size_t>(b)]);
            if (std::find(pf.back_edges.begin(), pf.back_edges.end(), e) == pf.back_edges.end())
                return false;
        }
        return true;
    };
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == order.size())
            return back_edges_ok();
        const int u = order[i];
        const int parent = F.nodes[static_cast<std::size_t>(u)].parent;
        std::vector<int> cand;
        if (parent < 0)
            cand = pf.roots();
        else
            cand = pf.nodes[static_cast<std::size_t>(g[static_cast<std::size_t>(parent)])].children;
        for (int s : cand) {
            if (!compatible(u, s))
                continue;
            g[static_cast<std::size_t>(u)] = s;
            used[static_cast<std::size_t>(s)] = true;
            if (go(i + 1))
                return true;
            used[static_cast<std::size_t>(s)] = false;
            g[static_cast<std::size_t>(u)] = -1;
        }
        return false;
    };
    if (!go(0))
        return std::nullopt;
    return g;
}

bool check_position_embedding(const FsgPosition& pos, const Program& p)
{
    return find_position_embedding(pos, syntax_forest(p)).has_value();
}

namespace {

int modal_nodes(const SyntaxForest& f)
{
    int m = 0;
    for (const auto& nd : f.nodes)
        if (nd.labeled && is_modal(nd.label.op))
            ++m;
    return m;
}

// Largest n <= cap with a, b n-bisimilar; nullopt for full bisimilarity, -1 for none.
std::optional<int> bisim_degree(const PointedModel& a, const PointedModel& b, BisimKind kind, int cap)
{
    if (check_bisimilar(a, b, kind))
        return std::nullopt;
    int best = -1;
    for (int n = 0; n <= cap; ++n) {
        if (!check_bisimilar(a, b, kind, n))
            break;
        best = n;
    }
    return best;
}

// Distinct nodes of `other` (successors of its point, or any node) matched one-to-one with
// the nodes `mine` of `self`, each pair bisimilar for `rounds` (nullopt: unbounded).
std::optional<std::vector<int>> match_variants(const ClockedModel& self, const std::vector<int>& mine,
                                               const ClockedModel& other, bool global, BisimKind kind,
                                               std::optional<int> rounds)
{
    const std::vector<int> cand = candidates(other, global);
    std::vector<std::vector<int>> ok(mine.size());
    for (std::size_t i = 0; i < mine.size(); ++i)
        for (int u : cand)
            if (check_bisimilar(repoint(self, mine[i]).pointed, repoint(other, u).pointed, kind, rounds))
                ok[i].push_back(u);
    std::vector<int> pick(mine.size(), -1);
    std::set<int> taken;
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == mine.size())
            return true;
        for (int u : ok[i]) {
            if (taken.count(u))
                continue;
            taken.insert(u);
            pick[i] = u;
            if (go(i + 1))
                return true;
            taken.erase(u);
        }
        return false;
    };
    if (!go(0))
        return std::nullopt;
    return pick;
}

}  // namespace

std::optional<BisimAdvice> delilah_bisim_advice(const FsgPosition& pos, BisimKind kind)
{
    if (pos.finished())
        return std::nullopt;
    const int K = std::max(1, pos.resources() - 1 + modal_nodes(pos.forest));
    std::optional<BisimAdvice> best;
    for (int v : pos.U)
        for (const auto& a : pos.left[static_cast<std::size_t>(v)])
            for (const auto& b : pos.right[static_cast<std::size_t>(v)]) {
                if (a.clock != b.clock)
                    continue;
                const int need = K * (a.clock + 1);
                auto deg = bisim_degree(a.pointed, b.pointed, kind, need);
                if (deg && *deg < need)
                    continue;
                BisimAdvice adv{v, a, b, deg, need};
                if (!best || (!deg && best->rounds))
                    best = adv;
                if (!deg)
                    return best;
            }
    return best;
}

std::optional<int> DelilahAdvisor::choose_node(const FsgPosition& pos)
{
    cur_ = delilah_bisim_advice(pos, kind_);
    if (!cur_)
        return std::nullopt;
    return cur_->node;
}

void DelilahAdvisor::complete(const FsgPosition& pos, int node, FsgMove& mv) const
{
    if (!cur_ || cur_->node != node)
        throw Error("the advisor only answers at the node it chose");
    const ClockedModel& a = cur_->left;
    const ClockedModel& b = cur_->right;
    std::optional<int> next = cur_->rounds ? std::optional<int>(*cur_->rounds - 1) : std::nullopt;
    switch (mv.kind) {
    case FsgMoveKind::Dia:
    case FsgMoveKind::Box:
    case FsgMoveKind::GDia:
    case FsgMoveKind::GBox: {
        const bool global = mv.kind == FsgMoveKind::GDia || mv.kind == FsgMoveKind::GBox;
        const bool dia = mv.kind == FsgMoveKind::Dia || mv.kind == FsgMoveKind::GDia;
        // Samson's function lives on the side of `self`; Delilah mirrors it on `other`.
        const ClockedModel& self = dia ? a : b;
        const ClockedModel& other = dia ? b : a;
        mv.delilah_function.clear();
        for (const auto& e : mv.samson_function)
            if (e.from == self) {
                if (auto m = match_variants(self, e.to, other, global, kind_, next))
                    mv.delilah_function.push_back(SuccessorAssignment{other, *m});
            }
        mv.delilah_pick = successor_image(mv.samson_function);
        break;
    }
    case FsgMoveKind::Var:
        // Iterating keeps the pair together while clocks remain; at clock 0 only the base
        // rule can still tell them apart, so she challenges.
        mv.challenge = a.clock == 0;
        break;
    default:
        break;
    }
    (void)pos;
}

bool bisim_invariant_holds(const FsgPosition& pos, BisimKind kind, std::optional<int> rounds)
{
    for (int v : pos.U)
        for (const auto& a : pos.left[static_cast<std::size_t>(v)])
            for (const auto& b : pos.right[static_cast<std::size_t>(v)])
                if (a.clock == b.clock && check_bisimilar(a.pointed, b.pointed, kind, rounds))
                    return true;
    return false;
}

UniformSamson::UniformSamson(Program p, std::optional<long> max_rounds)
    : prog_(std::move(p)), pf_(syntax_forest(prog_)), max_rounds_(max_rounds)
{
}

namespace {

struct Acceptance {
    long round = -1;
    std::vector<int> preds;  // accepting predicates true at the point in that round
};

Acceptance first_acceptance(const Program& p, const PointedModel& pm, std::optional<long> max_rounds)
{
    Evaluator ev(p, pm.model);
    Evaluator::State s = ev.initial();
    const long cap = max_rounds.value_or(100000);
    std::set<Evaluator::State> seen;
    for (long r = 0; r <= cap; ++r) {
        Acceptance a;
        for (int x : p.accepting)
            if (ev.holds(s, x, pm.point))
                a.preds.push_back(x);
        if (!a.preds.empty()) {
            a.round = r;
            return a;
        }
        if (!seen.insert(s).second)
            return {};
        s = ev.step(s);
    }
    throw UndeterminedError(cap);
}

}  // namespace

ClockedClass UniformSamson::clock_models(const std::vector<PointedModel>& A) const
{
    ClockedClass out;
    for (const auto& pm : A) {
        Acceptance a = first_acceptance(prog_, pm, max_rounds_);
        if (a.round < 0)
            throw ValidationError("the program does not accept every model of A");
        out.insert(ClockedModel{pm, a.round == 0 ? 0 : static_cast<int>(a.round - 1)});
    }
    return out;
}

std::vector<FsgRoot> UniformSamson::roots() const
{
    std::vector<FsgRoot> out;
    for (int x : prog_.accepting) {
        out.push_back({prog_.variables[static_cast<std::size_t>(x)], false});
        out.push_back({prog_.variables[static_cast<std::size_t>(x)], true});
    }
    return out;
}

std::vector<ClockedClass> UniformSamson::left0(const ClockedClass& A) const
{
    std::vector<ClockedClass> out(2 * prog_.accepting.size());
    for (const auto& cm : A) {
        Acceptance a = first_acceptance(prog_, cm.pointed, max_rounds_);
        for (std::size_t i = 0; i < prog_.accepting.size(); ++i)
            if (std::find(a.preds.begin(), a.preds.end(), prog_.accepting[i]) != a.preds.end())
                out[2 * i + (a.round == 0 ? 0 : 1)].insert(cm);
    }
    return out;
}

void UniformSamson::begin(const FsgPosition& start)
{
    g_.clear();
    observe(start);
}

void UniformSamson::observe(const FsgPosition& after)
{
    const auto& F = after.forest;
    for (std::size_t u = g_.size(); u < F.nodes.size(); ++u) {
        const auto& nd = F.nodes[u];
        int s = -1;
        if (nd.parent < 0) {
            s = pf_.find_root(nd.pred, nd.iter);
        } else {
            const auto& sib = F.nodes[static_cast<std::size_t>(nd.parent)].children;
            auto idx = static_cast<std::size_t>(std::find(sib.begin(), sib.end(), static_cast<int>(u)) - sib.begin());
            const auto& pc = pf_.nodes[static_cast<std::size_t>(g_[static_cast<std::size_t>(nd.parent)])].children;
            if (idx < pc.size())
                s = pc[idx];
        }
        if (s < 0)
            throw Error("position node " + std::to_string(u) + " has no image in the program");
        g_.push_back(s);
    }
}

bool UniformSamson::holds(const ClockedModel& cm, int s) const
{
    const Schema body = forest_subformula(pf_, s);
    const auto& m = cm.pointed.model;
    GlobalConfiguration g = pf_.nodes[static_cast<std::size_t>(s)].iter
                                ? trace_run(prog_, m, cm.clock).back()
                                : GlobalConfiguration(m.node_count, static_cast<int>(prog_.size()));
    return eval_schema(m, g, cm.pointed.point, body, prog_.variables);
}

FsgMove UniformSamson::move(const FsgPosition& pos, int v) const
{
    const int s = g_.at(static_cast<std::size_t>(v));
    const ForestNode& pn = pf_.nodes[static_cast<std::size_t>(s)];
    const ForestLabel& l = pn.label;
    const ClockedClass& L = pos.left[static_cast<std::size_t>(v)];
    const ClockedClass& R = pos.right[static_cast<std::size_t>(v)];
    FsgMove mv;
    switch (l.op) {
    case Op::Top:
    case Op::Bottom:
    case Op::Prop:
        mv.kind = FsgMoveKind::Sig;
        mv.symbol = l;
        break;
    case Op::Var:
        mv.kind = FsgMoveKind::Var;
        mv.var = l.name;
        break;
    case Op::Not: mv.kind = FsgMoveKind::Neg; break;
    case Op::Or:
    case Op::And: {
        const bool is_or = l.op == Op::Or;
        mv.kind = is_or ? FsgMoveKind::Or : FsgMoveKind::And;
        const ClockedClass& split = is_or ? L : R;
        for (const auto& m : split) {
            bool in1 = holds(m, pn.children[0]) == is_or;
            bool in2 = holds(m, pn.children[1]) == is_or;
            if (in1 || !in2)
                mv.first.insert(m);
            if (in2)
                mv.second.insert(m);
        }
        break;
    }
    default: {
        const bool global = is_global(l.op);
        const bool dia = l.op == Op::Dia || l.op == Op::GDia;
        mv.kind = l.op == Op::Dia ? FsgMoveKind::Dia : l.op == Op::Box ? FsgMoveKind::Box
                  : l.op == Op::GDia ? FsgMoveKind::GDia : FsgMoveKind::GBox;
        mv.threshold = l.threshold;
        // Under the strategy's invariant each model on Samson's side has enough variants
        // where the child subformula holds (◇) or fails (□).
        for (const auto& m : dia ? L : R) {
            SuccessorAssignment e{m, {}};
            std::vector<int> rest;
            for (int u : candidates(m, global)) {
                bool h = holds(repoint(m, u), pn.children[0]);
                (h == dia ? e.to : rest).push_back(u);
            }
            for (int u : rest)
                if (static_cast<int>(e.to.size()) < l.threshold)
                    e.to.push_back(u);
            e.to.resize(std::min<std::size_t>(e.to.size(), static_cast<std::size_t>(l.threshold)));
            mv.samson_function.push_back(e);
        }
        break;
    }
    }
    return mv;
}

void UniformSamson::reply(const FsgPosition& pos, int v, FsgMove& mv) const
{
    (void)pos;
    if (mv.kind != FsgMoveKind::Dia && mv.kind != FsgMoveKind::Box && mv.kind != FsgMoveKind::GDia &&
        mv.kind != FsgMoveKind::GBox)
        return;
    const int s = g_.at(static_cast<std::size_t>(v));
    const int c = pf_.nodes[static_cast<std::size_t>(s)].children[0];
    const bool dia = mv.kind == FsgMoveKind::Dia || mv.kind == FsgMoveKind::GDia;
    mv.samson_replies.clear();
    for (const auto& e : mv.delilah_function) {
        int pick = e.to.front();
        for (int u : e.to)
            if (holds(repoint(e.from, u), c) != dia) {
                pick = u;
                break;
            }
        mv.samson_replies.push_back({pick});
    }
}

namespace {

// Canonical bodies by exact size: connectives nest to the right, the operands of a
// connective are non-constant, and the last two operands of a chain are ordered.
class BodyEnumerator {
public:
    BodyEnumerator(std::vector<std::string> props, std::vector<std::string> vars, Fragment frag, int max_thr)
        : props_(std::move(props)), vars_(std::move(vars)), frag_(frag), max_thr_(max_thr)
    {
    }

    const std::vector<Schema>& of_size(int s)
    {
        while (static_cast<int>(memo_.size()) <= s)
            memo_.push_back(build(static_cast<int>(memo_.size())));
        return memo_[static_cast<std::size_t>(s)];
    }

private:
    static bool constant(const Schema& x) { return x->op == Op::Top || x->op == Op::Bottom; }

    std::vector<Schema> build(int s)
    {
        std::vector<Schema> out;
        if (s == 0)
            return {s_bot(), s_top()};
        if (s == 1) {
            for (const auto& p : props_)
                out.push_back(s_prop(p));
            for (const auto& v : vars_)
                out.push_back(s_var(v));
        }
        for (const auto& a : of_size(s - 1))
            if (a->op != Op::Not && !constant(a))
                out.push_back(s_not(a));
        for (Op op : {Op::Or, Op::And})
            for (int sa = 1; sa <= s - 2; ++sa) {
                const int sb = s - 1 - sa;
                for (const auto& a : of_size(sa)) {
                    if (a->op == op || constant(a))
                        continue;
                    for (const auto& b : of_size(sb)) {
                        if (constant(b))
                            continue;
                        if (b->op != op && schema_to_string(b) < schema_to_string(a))
                            continue;
                        out.push_back(op == Op::Or ? s_or(a, b) : s_and(a, b));
                    }
                }
            }
        if (frag_ != Fragment::SC) {
            const int thr = frag_ == Fragment::MSC ? 1 : max_thr_;
            std::vector<Op> ops = {Op::Dia, Op::Box};
            if (frag_ == Fragment::GGMSC) {
                ops.push_back(Op::GDia);
                ops.push_back(Op::GBox);
            }
            for (int m = 1; m <= std::min(thr, s); ++m)
                for (Op op : ops)
                    for (const auto& a : of_size(s - m)) {
                        // ◇⊥ and [E]⊤-style bodies are constants already enumerated.
                        if ((op == Op::Dia || op == Op::GDia) && a->op == Op::Bottom)
                            continue;
                        if ((op == Op::Box || op == Op::GBox) && a->op == Op::Top)
                            continue;
                        out.push_back(s_modal(op, m, a));
                    }
        }
        return out;
    }

    std::vector<std::string> props_;
    std::vector<std::string> vars_;
    Fragment frag_;
    int max_thr_;
    std::deque<std::vector<Schema>> memo_;  // stable references while growing
};

bool accepts(const Program& p, const PointedModel& pm, long max_rounds)
{
    return run(p, pm, max_rounds).accepted();
}

}  // namespace

std::optional<Program> separation_oracle(const std::vector<PointedModel>& A, const std::vector<PointedModel>& B, int k,
                                         const std::vector<std::string>& props, Fragment fragment,
                                         const OracleBounds& bounds)
{
    long tried = 0;
    for (int size = 2; size <= k; ++size)
        for (int n = 1; n <= bounds.max_vars && 2 * n <= size; ++n) {
            std::vector<std::string> vars;
            for (int i = 1; i <= n; ++i)
                vars.push_back("V" + std::to_string(i));
            BodyEnumerator base(props, {}, fragment, bounds.max_threshold);
            BodyEnumerator ind(props, vars, fragment, bounds.max_threshold);
            const int rest = size - 2 * n;
            std::vector<int> sizes(static_cast<std::size_t>(2 * n), 0);
            std::optional<Program> found;
            // Body sizes: base of V_i at 2i, induction of V_i at 2i+1.
            std::function<bool(std::size_t, int)> split = [&](std::size_t i, int left) -> bool {
                if (i + 1 == sizes.size()) {
                    sizes[i] = left;
                    std::vector<const std::vector<Schema>*> lists;
                    for (std::size_t j = 0; j < sizes.size(); ++j)
                        lists.push_back(j % 2 == 0 ? &base.of_size(sizes[j]) : &ind.of_size(sizes[j]));
                    std::vector<std::size_t> idx(lists.size(), 0);
                    if (std::any_of(lists.begin(), lists.end(), [](auto* l) { return l->empty(); }))
                        return false;
                    while (true) {
                        Program p;
                        for (int v = 0; v < n; ++v)
                            p.add_variable(vars[static_cast<std::size_t>(v)],
                                           (*lists[static_cast<std::size_t>(2 * v)])[idx[static_cast<std::size_t>(2 * v)]],
                                           (*lists[static_cast<std::size_t>(2 * v + 1)])[idx[static_cast<std::size_t>(2 * v + 1)]]);
                        p.fragment = fragment;
                        for (int mask = 1; mask < (1 << n); ++mask) {
                            if (++tried > bounds.max_candidates)
                                throw ResourceError("separation oracle: more than " +
                                                    std::to_string(bounds.max_candidates) +
                                                    " candidate programs up to size " + std::to_string(size));
                            p.accepting.clear();
                            for (int v = 0; v < n; ++v)
                                if (mask & (1 << v))
                                    p.accepting.push_back(v);
                            bool ok = std::all_of(A.begin(), A.end(),
                                                  [&](const PointedModel& m) { return accepts(p, m, bounds.max_rounds); }) &&
                                      std::none_of(B.begin(), B.end(),
                                                   [&](const PointedModel& m) { return accepts(p, m, bounds.max_rounds); });
                            if (ok) {
                                found = p;
                                return true;
                            }
                        }
                        std::size_t j = 0;
                        for (; j < idx.size(); ++j) {
                            if (++idx[j] < lists[j]->size())
                                break;
                            idx[j] = 0;
                        }
                        if (j == idx.size())
                            return false;
                    }
                }
                for (int s = left; s >= 0; --s) {
                    sizes[i] = s;
                    if (split(i + 1, left - s))
                        return true;
                }
                return false;
            };
            if (split(0, rest))
                return found;
        }
    return std::nullopt;
}

int fsg_peak_resources(const Program& p)
{
    const SyntaxForest f = syntax_forest(p);
    int constants = 0;
    for (const auto& nd : f.nodes)
        if (nd.label.op == Op::Top || nd.label.op == Op::Bottom)
            ++constants;
    return forest_size(f) + constants;
}

std::uint64_t fully_clocked_bound(int d, int k)
{
    if (d < 0 || k < 0)
        throw ValidationError("fully clocked bound needs non-negative arguments");
    const long e = static_cast<long>(d) * k;
    if (e >= 64)
        throw ResourceError("2^" + std::to_string(e) + " does not fit in 64 bits");
    return std::uint64_t{1} << e;
}

ClockedClass fully_clocked(const std::vector<PointedModel>& D, int max_clock)
{
    ClockedClass c;
    for (int l = 0; l <= max_clock; ++l)
        c.unite(clocked(D, l));
    return c;
}

namespace {

std::vector<std::vector<int>> choose(const std::vector<int>& xs, int m)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (static_cast<int>(cur.size()) == m) {
            out.push_back(cur);
            return;
        }
        if (i == xs.size())
            return;
        cur.push_back(xs[i]);
        go(i + 1);
        cur.pop_back();
        go(i + 1);
    };
    go(0);
    return out;
}

std::vector<ClockedClass> subsets(const ClockedClass& c)
{
    std::vector<ClockedClass> out;
    for (unsigned mask = 0; mask < (1u << c.size()); ++mask) {
        ClockedClass s;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (mask & (1u << i))
                s.insert(c[i]);
        out.push_back(s);
    }
    return out;
}

bool is_modal_move(FsgMoveKind k)
{
    return k == FsgMoveKind::Dia || k == FsgMoveKind::Box || k == FsgMoveKind::GDia || k == FsgMoveKind::GBox;
}
bool is_global_move(FsgMoveKind k) { return k == FsgMoveKind::GDia || k == FsgMoveKind::GBox; }
bool is_dia_move(FsgMoveKind k) { return k == FsgMoveKind::Dia || k == FsgMoveKind::GDia; }


}  // namespace

std::vector<FsgMove> fsg_samson_moves(const FsgPosition& pos, int v, const FsgMoveSpace& sp)
{
    const ForestNode& nd = pos.forest.nodes[static_cast<std::size_t>(v)];
    std::vector<FsgMove> shapes;
    auto add_modal = [&](FsgMoveKind k, int m) {
        FsgMove mv;
        mv.kind = k;
        mv.threshold = m;
        shapes.push_back(mv);
    };
    if (nd.labeled) {
        const ForestLabel& l = nd.label;
        FsgMove mv;
        switch (l.op) {
        case Op::Not: mv.kind = FsgMoveKind::Neg; break;
        case Op::Or: mv.kind = FsgMoveKind::Or; break;
        case Op::And: mv.kind = FsgMoveKind::And; break;
        case Op::Dia: mv.kind = FsgMoveKind::Dia; break;
        case Op::Box: mv.kind = FsgMoveKind::Box; break;
        case Op::GDia: mv.kind = FsgMoveKind::GDia; break;
        case Op::GBox: mv.kind = FsgMoveKind::GBox; break;
        case Op::Var: mv.kind = FsgMoveKind::Var; break;
        default: mv.kind = FsgMoveKind::Sig; break;
        }
        mv.threshold = std::max(1, l.threshold);
        mv.var = l.name;
        mv.symbol = l;
        shapes.push_back(mv);
    } else {
        for (FsgMoveKind k : {FsgMoveKind::Neg, FsgMoveKind::Or, FsgMoveKind::And}) {
            FsgMove mv;
            mv.kind = k;
            shapes.push_back(mv);
        }
        for (int m = 1; m <= sp.max_threshold; ++m) {
            add_modal(FsgMoveKind::Dia, m);
            add_modal(FsgMoveKind::Box, m);
            if (sp.global) {
                add_modal(FsgMoveKind::GDia, m);
                add_modal(FsgMoveKind::GBox, m);
            }
        }
        std::vector<ForestLabel> syms = {{Op::Top, 0, ""}, {Op::Bottom, 0, ""}};
        for (const auto& p : pos.props)
            syms.push_back({Op::Prop, 0, p});
        for (const auto& s : syms) {
            FsgMove mv;
            mv.kind = FsgMoveKind::Sig;
            mv.symbol = s;
            shapes.push_back(mv);
        }
        for (const auto& x : sp.vars) {
            FsgMove mv;
            mv.kind = FsgMoveKind::Var;
            mv.var = x;
            shapes.push_back(mv);
        }
    }
    const ClockedClass& L = pos.left[static_cast<std::size_t>(v)];
    const ClockedClass& R = pos.right[static_cast<std::size_t>(v)];
    std::vector<FsgMove> out;
    for (const auto& mv : shapes) {
        if (mv.kind == FsgMoveKind::Or || mv.kind == FsgMoveKind::And) {
            const ClockedClass& c = mv.kind == FsgMoveKind::Or ? L : R;
            std::vector<int> code(c.size(), 0);
            while (true) {
                FsgMove x = mv;
                for (std::size_t i = 0; i < c.size(); ++i) {
                    if (code[i] != 1)
                        x.first.insert(c[i]);
                    if (code[i] != 0)
                        x.second.insert(c[i]);
                }
                out.push_back(x);
                std::size_t i = 0;
                for (; i < code.size(); ++i) {
                    if (++code[i] < 3)
                        break;
                    code[i] = 0;
                }
                if (i == code.size())
                    break;
            }
        } else if (is_modal_move(mv.kind)) {
            const ClockedClass& c = is_dia_move(mv.kind) ? L : R;
            std::vector<std::vector<std::vector<int>>> opts;
            bool feasible = true;
            for (const auto& m : c) {
                opts.push_back(choose(candidates(m, is_global_move(mv.kind)), mv.threshold));
                feasible = feasible && !opts.back().empty();
            }
            if (!feasible) {
                out.push_back(mv);
                continue;
            }
            std::vector<std::size_t> idx(c.size(), 0);
            while (true) {
                FsgMove x = mv;
                for (std::size_t i = 0; i < c.size(); ++i)
                    x.samson_function.push_back({c[i], opts[i][idx[i]]});
                out.push_back(x);
                std::size_t i = 0;
                for (; i < idx.size(); ++i) {
                    if (++idx[i] < opts[i].size())
                        break;
                    idx[i] = 0;
                }
                if (i == idx.size())
                    break;
            }
        } else {
            out.push_back(mv);
        }
    }
    return out;
}

std::vector<FsgMove> fsg_samson_replies(const FsgMove& mv)
{
    std::vector<FsgMove> out;
    if (!is_modal_move(mv.kind)) {
        out.push_back(mv);
        return out;
    }
    std::vector<std::vector<std::vector<int>>> opts;
    for (const auto& e : mv.delilah_function) {
        std::vector<std::vector<int>> o;
        for (unsigned mask = 1; mask < (1u << e.to.size()); ++mask) {
            std::vector<int> r;
            for (std::size_t i = 0; i < e.to.size(); ++i)
                if (mask & (1u << i))
                    r.push_back(e.to[i]);
            o.push_back(r);
        }
        opts.push_back(o);
    }
    std::vector<std::size_t> idx(opts.size(), 0);
    while (true) {
        FsgMove x = mv;
        x.samson_replies.clear();
        for (std::size_t i = 0; i < opts.size(); ++i)
            x.samson_replies.push_back(opts[i][idx[i]]);
        out.push_back(x);
        std::size_t i = 0;
        for (; i < idx.size(); ++i) {
            if (++idx[i] < opts[i].size())
                break;
            idx[i] = 0;
        }
        if (i == idx.size())
            break;
    }
    return out;
}

std::vector<FsgMove> fsg_delilah_completions(const FsgPosition& pos, int v, const FsgMove& mv)
{
    std::vector<FsgMove> out;
    if (mv.kind == FsgMoveKind::Var) {
        for (bool c : {false, true}) {
            FsgMove x = mv;
            x.challenge = c;
            out.push_back(x);
        }
        return out;
    }
    if (!is_modal_move(mv.kind)) {
        out.push_back(mv);
        return out;
    }
    const ClockedClass& other = is_dia_move(mv.kind) ? pos.right[static_cast<std::size_t>(v)]
                                                     : pos.left[static_cast<std::size_t>(v)];
    // Per model of her class: undefined, or one of its m-sets.
    std::vector<std::vector<std::vector<int>>> opts;
    for (const auto& m : other) {
        auto o = choose(candidates(m, is_global_move(mv.kind)), mv.threshold);
        o.insert(o.begin(), std::vector<int>{});
        opts.push_back(o);
    }
    const auto picks = subsets(successor_image(mv.samson_function));
    std::vector<std::size_t> idx(opts.size(), 0);
    while (true) {
        FsgMove base = mv;
        for (std::size_t i = 0; i < opts.size(); ++i)
            if (!opts[i][idx[i]].empty())
                base.delilah_function.push_back({other[i], opts[i][idx[i]]});
        for (const auto& pk : picks) {
            FsgMove x = base;
            x.delilah_pick = pk;
            out.push_back(x);
        }
        std::size_t i = 0;
        for (; i < idx.size(); ++i) {
            if (++idx[i] < opts[i].size())
                break;
            idx[i] = 0;
        }
        if (i == idx.size())
            break;
    }
    return out;
}


namespace {

class RandomPlayer {
public:
    explicit RandomPlayer(std::uint32_t seed) : rng_(seed) {}

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return pick(0, 1) == 1; }

    std::vector<int> sample(std::vector<int> xs, int m)
    {
        std::shuffle(xs.begin(), xs.end(), rng_);
        xs.resize(static_cast<std::size_t>(std::min<int>(m, static_cast<int>(xs.size()))));
        return xs;
    }

    std::vector<int> nonempty_subset(const std::vector<int>& xs)
    {
        std::vector<int> out;
        for (int x : xs)
            if (coin())
                out.push_back(x);
        if (out.empty())
            out.push_back(xs[static_cast<std::size_t>(pick(0, static_cast<int>(xs.size()) - 1))]);
        return out;
    }

    ClockedClass subset(const ClockedClass& c)
    {
        ClockedClass out;
        for (const auto& m : c)
            if (coin())
                out.insert(m);
        return out;
    }

    FsgMove samson(const FsgPosition& pos, int v, const std::vector<std::string>& vars)
    {
        const ForestNode& nd = pos.forest.nodes[static_cast<std::size_t>(v)];
        FsgMove mv;
        if (nd.labeled) {
            const ForestLabel& l = nd.label;
            switch (l.op) {
            case Op::Not: mv.kind = FsgMoveKind::Neg; break;
            case Op::Or: mv.kind = FsgMoveKind::Or; break;
            case Op::And: mv.kind = FsgMoveKind::And; break;
            case Op::Dia: mv.kind = FsgMoveKind::Dia; break;
            case Op::Box: mv.kind = FsgMoveKind::Box; break;
            case Op::GDia: mv.kind = FsgMoveKind::GDia; break;
            case Op::GBox: mv.kind = FsgMoveKind::GBox; break;
            case Op::Var: mv.kind = FsgMoveKind::Var; break;
            default: mv.kind = FsgMoveKind::Sig; break;
            }
            mv.threshold = std::max(1, l.threshold);
            mv.var = l.name;
            mv.symbol = l;
        } else {
            mv.kind = static_cast<FsgMoveKind>(pick(0, 8));
            mv.threshold = pick(1, 2);
            mv.var = vars[static_cast<std::size_t>(pick(0, static_cast<int>(vars.size()) - 1))];
            const int s = pick(0, static_cast<int>(pos.props.size()) + 1);
            if (s < static_cast<int>(pos.props.size()))
                mv.symbol = ForestLabel{Op::Prop, 0, pos.props[static_cast<std::size_t>(s)]};
            else
                mv.symbol = ForestLabel{s == static_cast<int>(pos.props.size()) ? Op::Top : Op::Bottom, 0, ""};
        }
        const ClockedClass& L = pos.left[static_cast<std::size_t>(v)];
        const ClockedClass& R = pos.right[static_cast<std::size_t>(v)];
        switch (mv.kind) {
        case FsgMoveKind::Or:
        case FsgMoveKind::And:
            for (const auto& m : mv.kind == FsgMoveKind::Or ? L : R) {
                int w = pick(0, 2);
                if (w != 1)
                    mv.first.insert(m);
                if (w != 0)
                    mv.second.insert(m);
            }
            break;
        case FsgMoveKind::Dia:
        case FsgMoveKind::Box:
        case FsgMoveKind::GDia:
        case FsgMoveKind::GBox: {
            const bool global = mv.kind == FsgMoveKind::GDia || mv.kind == FsgMoveKind::GBox;
            const bool dia = mv.kind == FsgMoveKind::Dia || mv.kind == FsgMoveKind::GDia;
            for (const auto& m : dia ? L : R)
                mv.samson_function.push_back({m, sample(candidates(m, global), mv.threshold)});
            break;
        }
        default: break;
        }
        return mv;
    }

    void delilah(const FsgPosition& pos, int v, FsgMove& mv)
    {
        const ClockedClass& L = pos.left[static_cast<std::size_t>(v)];
        const ClockedClass& R = pos.right[static_cast<std::size_t>(v)];
        switch (mv.kind) {
        case FsgMoveKind::Dia:
        case FsgMoveKind::Box:
        case FsgMoveKind::GDia:
        case FsgMoveKind::GBox: {
            const bool global = mv.kind == FsgMoveKind::GDia || mv.kind == FsgMoveKind::GBox;
            const bool dia = mv.kind == FsgMoveKind::Dia || mv.kind == FsgMoveKind::GDia;
            for (const auto& m : dia ? R : L) {
                auto c = candidates(m, global);
                if (static_cast<int>(c.size()) >= mv.threshold && coin())
                    mv.delilah_function.push_back({m, sample(c, mv.threshold)});
            }
            mv.delilah_pick = subset(successor_image(mv.samson_function));
            for (const auto& e : mv.delilah_function)
                mv.samson_replies.push_back(nonempty_subset(e.to));
            break;
        }
        case FsgMoveKind::Var: mv.challenge = coin(); break;
        default: break;
        }
    }

private:
    std::mt19937 rng_;
};

}  // namespace

ReplayStats random_replay(const std::vector<PointedModel>& A, const std::vector<PointedModel>& B, int budget,
                          const std::vector<std::string>& props, int plays, std::uint32_t seed, long step_ceiling)
{
    RandomPlayer rp(seed);
    const std::vector<std::string> vars = {"V1", "V2"};
    ReplayStats st;
    for (int play = 0; play < plays; ++play) {
        ClockedClass Ac;
        for (const auto& m : A)
            Ac.insert(ClockedModel{m, rp.pick(0, 2)});
        ClockedClass Bc;
        for (const auto& m : B)
            for (int l = 0; l <= 2; ++l)
                if (rp.coin())
                    Bc.insert(ClockedModel{m, l});
        std::vector<FsgRoot> roots = {{"V1", false}, {"V1", true}};
        if (rp.coin()) {
            roots.push_back({"V2", false});
            roots.push_back({"V2", true});
        }
        std::vector<ClockedClass> left0(roots.size());
        for (const auto& m : Ac) {
            left0[static_cast<std::size_t>(rp.pick(0, static_cast<int>(roots.size()) - 1))].insert(m);
            if (rp.coin())
                left0[static_cast<std::size_t>(rp.pick(0, static_cast<int>(roots.size()) - 1))].insert(m);
        }
        FsgPosition pos = fsg_start(Ac, Bc, roots, left0, budget, props);
        long moves = 0;
        while (!pos.finished()) {
            if (++moves > step_ceiling)
                throw Error("a random play exceeded " + std::to_string(step_ceiling) + " moves");
            const int v = pos.U[static_cast<std::size_t>(rp.pick(0, static_cast<int>(pos.U.size()) - 1))];
            FsgMove mv = rp.samson(pos, v, vars);
            rp.delilah(pos, v, mv);
            pos = fsg_apply(pos, v, mv);
            if (pos.resources() != forest_size(pos.forest))
                throw Error("resource accounting drifted");
        }
        ++st.plays;
        (*pos.winner == FsgPlayer::Samson ? st.samson_wins : st.delilah_wins)++;
        st.longest = std::max(st.longest, moves);
        st.total_moves += moves;
    }
    return st;
}

}  // namespace msc
