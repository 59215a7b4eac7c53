#include "msc/forest.hpp"

#include <algorithm>

#include "msc/errors.hpp"

namespace msc {

bool operator==(const ForestLabel& a, const ForestLabel& b)
{
    return a.op == b.op && a.threshold == b.threshold && a.name == b.name;
}

int SyntaxForest::add_root(const std::string& pred, bool iter)
{
    ForestNode n;
    n.pred = pred;
    n.iter = iter;
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
}

int SyntaxForest::add_child(int parent)
{
    ForestNode n;
    n.parent = parent;
    n.pred = nodes[static_cast<std::size_t>(parent)].pred;
    n.iter = nodes[static_cast<std::size_t>(parent)].iter;
    nodes.push_back(std::move(n));
    int id = static_cast<int>(nodes.size()) - 1;
    nodes[static_cast<std::size_t>(parent)].children.push_back(id);
    return id;
}

void SyntaxForest::set_label(int node, const ForestLabel& l)
{
    auto& n = nodes[static_cast<std::size_t>(node)];
    n.labeled = true;
    n.label = l;
}

std::vector<int> SyntaxForest::roots() const
{
    std::vector<int> out;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].parent < 0)
            out.push_back(static_cast<int>(i));
    return out;
}

int SyntaxForest::root_of(int node) const
{
    while (nodes[static_cast<std::size_t>(node)].parent >= 0)
        node = nodes[static_cast<std::size_t>(node)].parent;
    return node;
}

int SyntaxForest::find_root(const std::string& pred, bool iter) const
{
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].parent < 0 && nodes[i].pred == pred && nodes[i].iter == iter)
            return static_cast<int>(i);
    return -1;
}

bool SyntaxForest::reaches(int from, int to) const
{
    // Tree walks go downward, so `to` is reachable iff `from` is one of its ancestors.
    for (int cur = to; cur >= 0; cur = nodes[static_cast<std::size_t>(cur)].parent)
        if (cur == from)
            return true;
    return false;
}

void SyntaxForest::add_back_edge(int from, int to)
{
    // A variable root may point back at itself (X := X); anything else below is a tree walk.
    if (from != to && reaches(from, to))
        throw ValidationError("back edge would follow a tree walk");
    auto e = std::make_pair(from, to);
    if (std::find(back_edges.begin(), back_edges.end(), e) == back_edges.end())
        back_edges.push_back(e);
}

void SyntaxForest::validate() const
{
    const int n = static_cast<int>(nodes.size());
    for (int i = 0; i < n; ++i) {
        const auto& nd = nodes[static_cast<std::size_t>(i)];
        // Children are always created after their parent, which also rules out cycles.
        if (nd.parent >= i)
            throw ValidationError("parent index must precede its child");
        if (nd.parent >= 0) {
            const auto& sib = nodes[static_cast<std::size_t>(nd.parent)].children;
            if (std::count(sib.begin(), sib.end(), i) != 1)
                throw ValidationError("tree edges are inconsistent");
        }
        if (nd.labeled) {
            std::size_t want = is_leaf(nd.label.op) ? 0 : is_binary(nd.label.op) ? 2 : 1;
            if (nd.children.size() > want)
                throw ValidationError("node " + std::to_string(i) + " has too many children for its label");
        }
    }
    for (auto [a, b] : back_edges) {
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw ValidationError("back edge endpoint out of range");
        if (a != b && reaches(a, b))
            throw ValidationError("back edge follows a tree walk");
    }
}

namespace {

int build(SyntaxForest& f, int at, const Schema& s)
{
    f.set_label(at, ForestLabel{s->op, s->threshold, s->name});
    if (s->left)
        build(f, f.add_child(at), s->left);
    if (s->right)
        build(f, f.add_child(at), s->right);
    return at;
}

}  // namespace

SyntaxForest syntax_forest(const Program& p)
{
    SyntaxForest f;
    for (std::size_t i = 0; i < p.variables.size(); ++i) {
        int b = build(f, f.add_root(p.variables[i], false), p.base[i]);
        int r = build(f, f.add_root(p.variables[i], true), p.induction[i]);
        f.var_roots.emplace_back(b, r);
    }
    for (std::size_t u = 0; u < f.nodes.size(); ++u) {
        const auto& nd = f.nodes[u];
        if (nd.labeled && nd.label.op == Op::Var) {
            auto [b, r] = f.var_roots[static_cast<std::size_t>(p.index_of(nd.label.name))];
            f.back_edges.emplace_back(static_cast<int>(u), b);
            f.back_edges.emplace_back(static_cast<int>(u), r);
        }
    }
    return f;
}

int forest_size(const SyntaxForest& f)
{
    int total = 0;
    for (const auto& nd : f.nodes) {
        if (nd.parent < 0)
            ++total;
        if (!nd.labeled)
            ++total;
        else if (is_modal(nd.label.op))
            total += nd.label.threshold;
        else if (nd.label.op != Op::Top && nd.label.op != Op::Bottom)
            ++total;
    }
    return total;
}

Schema forest_subformula(const SyntaxForest& f, int u)
{
    const auto& nd = f.nodes[static_cast<std::size_t>(u)];
    if (!nd.labeled)
        throw ValidationError("node " + std::to_string(u) + " is unlabeled");
    const ForestLabel& l = nd.label;
    auto child = [&](std::size_t i) {
        if (nd.children.size() <= i)
            throw ValidationError("node " + std::to_string(u) + " is missing a child");
        return forest_subformula(f, nd.children[i]);
    };
    switch (l.op) {
    case Op::Bottom: return s_bot();
    case Op::Top: return s_top();
    case Op::Prop: return s_prop(l.name);
    case Op::Var: return s_var(l.name);
    case Op::Not: return s_not(child(0));
    case Op::Or: return s_or(child(0), child(1));
    case Op::And: return s_and(child(0), child(1));
    default: return s_modal(l.op, l.threshold, child(0));
    }
}

}  // namespace msc
