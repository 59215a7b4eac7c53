#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "msc/arena.hpp"
#include "msc/eval.hpp"
#include "msc/model.hpp"
#include "msc/program.hpp"
#include "msc/winner.hpp"

namespace msc {

struct GameOutcome {
    Winner winner = Winner::Abelard;
    // Eloise's strategy, one "position: move" line per position her strategy reaches.
    std::vector<std::string> witness;
    long initial_clock = -1;  // standard game: the round Eloise commits to
    std::vector<std::string> diagnostics;
};

// Schema occurrences of a program, children listed before parents. Var occurrences carry
// the index of their predicate; base_root / ind_root are the body roots per predicate.
struct OccTable {
    struct Occ {
        Schema s;
        int left = -1;
        int right = -1;
        int var = -1;
    };
    std::vector<Occ> occ;
    std::vector<int> base_root;
    std::vector<int> ind_root;

    // Appends the occurrences of s and returns its root; var_index maps Var names.
    int add(const Schema& s, const std::vector<std::string>& vars);
    std::string text(int i) const;
};
OccTable occurrence_table(const Program& p);

// The formula game on (M_g, node, s). Variables are read from g (columns in `vars` order).
GameOutcome solve_formula_game(const KripkeModel& m, const GlobalConfiguration& g, int node, const Schema& s,
                               const std::vector<std::string>& vars = {});

// Winner from the run (the rejecting set is ignored), strategy from backward induction.
GameOutcome solve_standard_game(const Program& p, const PointedModel& pm, std::optional<long> max_rounds = std::nullopt);

// Backward induction over positions with clock <= K, independent of the evaluator.
// Eloise may start from a base body or from an induction body with clock < K.
GameOutcome solve_standard_game_bounded(const Program& p, const PointedModel& pm, int K);

// The solved asynchronous arena: positions (verifier, node, occurrence).
struct AsyncArena {
    OccTable occs;
    int nodes = 0;
    std::vector<ArenaNode> arena;
    ArenaSolution solution;
    std::vector<int> initial;  // one per accepting predicate: base position, then iter position

    int pos(int verifier, int node, int occ) const { return (occ * nodes + node) * 2 + verifier; }
    int verifier_of(int pos) const { return pos % 2; }
    int node_of(int pos) const { return (pos / 2) % nodes; }
    int occ_of(int pos) const { return pos / 2 / nodes; }
    std::string describe(int pos) const;
};
AsyncArena build_async_arena(const Program& p, const PointedModel& pm);

// Eloise wins iff one of her initial choices is in her attractor. Otherwise the outcome is
// Abelard, and the diagnostics name the initial positions from which nobody can force a win.
GameOutcome solve_async_game(const Program& p, const PointedModel& pm);

// The global game. trace runs from the initial position g_k down to g_0.
struct ChallengeResponse {
    int step = 0;        // index into trace of the challenged position f
    int node = 0;
    int pred = 0;
    bool claimed = false;  // X in f(v)
    GameOutcome game;      // the formula game against the following tuple (or the base body)
};

struct GlobalStrategy {
    std::vector<GlobalConfiguration> trace;
    std::vector<ChallengeResponse> responses;
};

std::optional<GlobalStrategy> global_game_eloise_strategy(const Program& p, const PointedModel& pm,
                                                          std::optional<long> max_rounds = std::nullopt);

// Resolves Abelard's challenge (v, X) against position f. With `next` Eloise has proposed
// that tuple and the induction body is used; without it f was declared final and the base
// body is used. True iff Eloise wins.
bool global_challenge_eloise_wins(const Program& p, const PointedModel& pm, const GlobalConfiguration& f,
                                  const GlobalConfiguration* next, int node, int pred);

// Plays every Abelard challenge (each position, node and predicate) against the strategy.
bool global_strategy_survives(const Program& p, const PointedModel& pm, const GlobalStrategy& s);

// "{X,Y} {} {X}": one brace group per node, names from the program.
GlobalConfiguration parse_configuration(const std::string& text, const Program& p, int nodes);

// Move-validating referee for interactive play. Moves are short text commands; a move that
// breaks a rule throws IllegalMove naming the rule.
class GameSession {
public:
    enum class Kind { Standard, Async, Global };

    GameSession(const Program& p, const PointedModel& pm, Kind kind);
    ~GameSession();
    GameSession(const GameSession&) = delete;
    GameSession& operator=(const GameSession&) = delete;

    Kind kind() const;
    bool finished() const;
    Winner winner() const;            // valid once finished
    const std::string& reason() const;  // why the game ended
    Winner to_move() const;           // the player whose choice is pending
    std::string describe() const;
    std::vector<std::string> legal_moves() const;
    // A move that keeps a win for the player to move when one exists, else any legal move.
    std::string suggest() const;
    void apply(const std::string& move);
    const std::vector<std::string>& history() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

const char* game_kind_name(GameSession::Kind k);

}  // namespace msc
