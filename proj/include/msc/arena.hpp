#pragma once

#include <vector>

#include "msc/winner.hpp"

namespace msc {

// A finite two-player arena in the shape shared by every game here. At a non-terminal node
// the chooser names k distinct successors and the opponent picks one of them; k = 1 is an
// ordinary choice. A chooser with fewer than k successors loses on the spot.
struct ArenaNode {
    enum Terminal : int { None = -1, EloiseWins = 0, AbelardWins = 1, Nobody = 2 };
    int terminal = None;
    int chooser = 0;  // 0 Eloise, 1 Abelard
    int k = 1;
    std::vector<int> succ;
};

struct ArenaSolution {
    std::vector<Winner> win;
    // Order in which a node joined its winner's attractor; strategies only ever move to
    // nodes of strictly smaller rank, which bounds every play they allow.
    std::vector<int> rank;
};

ArenaSolution solve_arena(const std::vector<ArenaNode>& nodes);

// For a node won by its chooser: k successors of lower rank won by the chooser.
// For a node won by the opponent: empty (every choice loses).
std::vector<int> winning_choice(const std::vector<ArenaNode>& nodes, const ArenaSolution& sol, int v);

// For a node won by the player who does not choose, and a k-set offered by the chooser:
// an element of that set, of lower rank, won by the replying player.
int winning_reply(const ArenaSolution& sol, int v, const std::vector<int>& offered);

}  // namespace msc
