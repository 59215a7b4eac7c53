#include "msc/arena.hpp"

#include <deque>

namespace msc {

namespace {

// Least fixpoint for one player, counting how many successors are already won.
void attract(const std::vector<ArenaNode>& nodes, const std::vector<std::vector<int>>& preds, int player,
             std::vector<int>& rank)
{
    const int n = static_cast<int>(nodes.size());
    std::vector<int> need(static_cast<std::size_t>(n), 0);
    std::deque<int> queue;
    int next_rank = 0;
    auto join = [&](int v) {
        rank[static_cast<std::size_t>(v)] = next_rank++;
        queue.push_back(v);
    };
    for (int v = 0; v < n; ++v) {
        const ArenaNode& a = nodes[static_cast<std::size_t>(v)];
        if (a.terminal != ArenaNode::None) {
            need[static_cast<std::size_t>(v)] = -1;
            if (a.terminal == player)
                join(v);
            continue;
        }
        const int deg = static_cast<int>(a.succ.size());
        int t = a.chooser == player ? a.k : deg - a.k + 1;
        need[static_cast<std::size_t>(v)] = t;
        if (t <= 0)
            join(v);
    }
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : preds[static_cast<std::size_t>(u)]) {
            auto& c = need[static_cast<std::size_t>(v)];
            if (rank[static_cast<std::size_t>(v)] >= 0 || c <= 0)
                continue;
            if (--c == 0)
                join(v);
        }
    }
}

}  // namespace

ArenaSolution solve_arena(const std::vector<ArenaNode>& nodes)
{
    const std::size_t n = nodes.size();
    std::vector<std::vector<int>> preds(n);
    for (std::size_t v = 0; v < n; ++v)
        for (int u : nodes[v].succ)
            preds[static_cast<std::size_t>(u)].push_back(static_cast<int>(v));

    std::vector<int> re(n, -1), ra(n, -1);
    attract(nodes, preds, 0, re);
    attract(nodes, preds, 1, ra);

    ArenaSolution sol;
    sol.win.assign(n, Winner::NoWinner);
    sol.rank.assign(n, -1);
    for (std::size_t v = 0; v < n; ++v) {
        if (re[v] >= 0) {
            sol.win[v] = Winner::Eloise;
            sol.rank[v] = re[v];
        } else if (ra[v] >= 0) {
            sol.win[v] = Winner::Abelard;
            sol.rank[v] = ra[v];
        }
    }
    return sol;
}

std::vector<int> winning_choice(const std::vector<ArenaNode>& nodes, const ArenaSolution& sol, int v)
{
    const ArenaNode& a = nodes[static_cast<std::size_t>(v)];
    std::vector<int> out;
    if (a.terminal != ArenaNode::None)
        return out;
    const Winner me = a.chooser == 0 ? Winner::Eloise : Winner::Abelard;
    if (sol.win[static_cast<std::size_t>(v)] != me)
        return out;
    const int r = sol.rank[static_cast<std::size_t>(v)];
    for (int u : a.succ) {
        if (static_cast<int>(out.size()) == a.k)
            break;
        if (sol.win[static_cast<std::size_t>(u)] == me && sol.rank[static_cast<std::size_t>(u)] < r)
            out.push_back(u);
    }
    return out;
}

int winning_reply(const ArenaSolution& sol, int v, const std::vector<int>& offered)
{
    const Winner me = sol.win[static_cast<std::size_t>(v)];
    const int r = sol.rank[static_cast<std::size_t>(v)];
    for (int u : offered)
        if (sol.win[static_cast<std::size_t>(u)] == me && sol.rank[static_cast<std::size_t>(u)] < r)
            return u;
    return -1;
}

}  // namespace msc
