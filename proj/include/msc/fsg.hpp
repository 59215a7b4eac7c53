#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "msc/bisim.hpp"
#include "msc/forest.hpp"
#include "msc/model.hpp"
#include "msc/program.hpp"

namespace msc {

bool operator==(const ClockedModel& a, const ClockedModel& b);

// A finite set of clocked models. Insertion order is kept, duplicates are dropped.
class ClockedClass {
public:
    ClockedClass() = default;
    ClockedClass(std::initializer_list<ClockedModel> xs);
    explicit ClockedClass(const std::vector<ClockedModel>& xs);

    bool insert(const ClockedModel& m);
    bool contains(const ClockedModel& m) const;
    void unite(const ClockedClass& o);
    bool subset_of(const ClockedClass& o) const;
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    const ClockedModel& operator[](std::size_t i) const { return items_[i]; }
    std::vector<ClockedModel>::const_iterator begin() const { return items_.begin(); }
    std::vector<ClockedModel>::const_iterator end() const { return items_.end(); }
    bool operator==(const ClockedClass& o) const;  // as sets

private:
    std::vector<ClockedModel> items_;
};

ClockedClass clocked(const std::vector<PointedModel>& ms, int clock);
ClockedClass iter_class(const ClockedClass& c);  // positive clocks, decremented
ClockedClass init_class(const ClockedClass& c);  // clock-0 members
ClockedClass box_class(const ClockedClass& c);   // repointed at every successor
ClockedClass gbox_class(const ClockedClass& c);  // repointed at every node

// One entry of an m-successor or m-global function: `from` and the m distinct nodes of
// its model that its variants are pointed at (successors of the point, or any node).
struct SuccessorAssignment {
    ClockedModel from;
    std::vector<int> to;
};
using SuccessorFunction = std::vector<SuccessorAssignment>;

// ◇_f: every variant named by f.
ClockedClass successor_image(const SuccessorFunction& f);
// Throws IllegalMove(rule) unless f is a well-formed function of the kind on a subset of
// c (all of c when `total`).
void check_successor_function(const SuccessorFunction& f, const ClockedClass& c, int m, bool global, bool total,
                              const std::string& rule);

enum class FsgPlayer : std::uint8_t { Samson, Delilah };
const char* fsg_player_name(FsgPlayer p);

enum class FsgMoveKind : std::uint8_t { Neg, Or, And, Dia, Box, GDia, GBox, Sig, Var };
const char* fsg_move_name(FsgMoveKind k);

// A move together with every choice made while it is played. Which fields are read
// depends on the kind:
//   Or: first/second split left. And: first/second split right.
//   Dia, GDia: samson_function on left, delilah_function (partial) on right, delilah_pick
//     from the image of samson_function, samson_replies[i] a non-empty subset of
//     delilah_function[i].to.
//   Box, GBox: the same with left and right exchanged.
//   Sig: symbol (Prop, Top or Bottom). Var: var and challenge.
struct FsgMove {
    FsgMoveKind kind = FsgMoveKind::Sig;
    int threshold = 1;
    ClockedClass first;
    ClockedClass second;
    SuccessorFunction samson_function;
    SuccessorFunction delilah_function;
    ClockedClass delilah_pick;
    std::vector<std::vector<int>> samson_replies;
    ForestLabel symbol;
    std::string var;
    bool challenge = false;
};

struct FsgPosition {
    SyntaxForest forest;  // partial: labels may be missing, (pred, iter) always set
    std::vector<int> U;   // sorted
    std::vector<ClockedClass> left;
    std::vector<ClockedClass> right;
    int budget = 0;
    std::vector<std::string> props;
    std::optional<FsgPlayer> winner;
    std::string reason;

    int resources() const { return forest_size(forest); }
    bool finished() const { return winner.has_value(); }
    bool in_u(int v) const;
    std::string describe() const;
};

// One root of the initial forest: the predicate and whether it is the induction root.
struct FsgRoot {
    std::string pred;
    bool iter = false;
};

// Initial position from Samson's clocked class A, Delilah's finite clocked class B, and
// Samson's roots with their left classes. Base roots receive all of B, induction roots
// init(B).
FsgPosition fsg_start(const ClockedClass& A, const ClockedClass& B, const std::vector<FsgRoot>& roots,
                      const std::vector<ClockedClass>& left0, int budget, const std::vector<std::string>& props);

// Plays `move` at `node`. A broken rule throws IllegalMove naming it (fsg.<rule>); a move
// Samson is unable to make ends the game in Delilah's favour.
FsgPosition fsg_apply(const FsgPosition& pos, int node, const FsgMove& move);

// Injective map from the position's forest into the program's syntax forest that keeps
// roots, (pred, iter) tags, defined labels, tree edges and back edges.
std::optional<std::vector<int>> find_position_embedding(const FsgPosition& pos, const SyntaxForest& program_forest);
bool check_position_embedding(const FsgPosition& pos, const Program& p);

// A node of U with an equal-clock pair on the two sides that is bisimilar for at least
// K * (clock + 1) rounds, K = resources - 1 + (modal nodes of the forest).
struct BisimAdvice {
    int node = -1;
    ClockedModel left;
    ClockedModel right;
    std::optional<int> rounds;  // nullopt: bisimilar without a bound
    int required = 0;
};
std::optional<BisimAdvice> delilah_bisim_advice(const FsgPosition& pos, BisimKind kind = BisimKind::GlobalCounting);

// Delilah's replies that keep a bisimilar pair together on some node of U.
class DelilahAdvisor {
public:
    explicit DelilahAdvisor(BisimKind kind = BisimKind::GlobalCounting) : kind_(kind) {}
    // The node to play next, or nullopt when no node of U holds a bisimilar pair.
    std::optional<int> choose_node(const FsgPosition& pos);
    // Fills Delilah's parts of a move whose Samson parts are set.
    void complete(const FsgPosition& pos, int node, FsgMove& move) const;
    const std::optional<BisimAdvice>& current() const { return cur_; }

private:
    BisimKind kind_;
    std::optional<BisimAdvice> cur_;
};

// True iff some node of U holds an equal-clock pair that is bisimilar (rounds as given).
bool bisim_invariant_holds(const FsgPosition& pos, BisimKind kind, std::optional<int> rounds = std::nullopt);

// Samson playing by a fixed program: every move copies the program's syntax forest so
// that the position always embeds into it.
class UniformSamson {
public:
    UniformSamson(Program p, std::optional<long> max_rounds = 10000);
    const Program& program() const { return prog_; }
    // Clocks for A (first accepting round; A must be accepted), the roots and their
    // left classes. Throws ValidationError when the program rejects a member of A.
    ClockedClass clock_models(const std::vector<PointedModel>& A) const;
    std::vector<FsgRoot> roots() const;
    std::vector<ClockedClass> left0(const ClockedClass& A) const;
    void begin(const FsgPosition& start);
    // Samson's part of the move at `node`; replies are filled by reply().
    FsgMove move(const FsgPosition& pos, int node) const;
    void reply(const FsgPosition& pos, int node, FsgMove& move) const;
    // Extends the embedding with the nodes created by the last move.
    void observe(const FsgPosition& after);
    const std::vector<int>& embedding() const { return g_; }

private:
    bool holds(const ClockedModel& cm, int program_node) const;

    Program prog_;
    SyntaxForest pf_;
    std::optional<long> max_rounds_;
    std::vector<int> g_;
};

// The largest forest size a play of UniformSamson for p can reach: unlabeled nodes cost 1
// while T and F cost nothing once labeled, so this is |p| plus its constant leaves.
int fsg_peak_resources(const Program& p);

struct OracleBounds {
    int max_vars = 2;
    int max_threshold = 1;
    long max_candidates = 20000000;
    long max_rounds = 100000;
};

// The first program of size <= k in canonical enumeration order (by size, then number of
// variables V1..Vn, then bodies and accepting sets) that accepts all of A and none of B.
// Throws ResourceError when the enumeration would exceed bounds.max_candidates.
std::optional<Program> separation_oracle(const std::vector<PointedModel>& A, const std::vector<PointedModel>& B, int k,
                                         const std::vector<std::string>& props, Fragment fragment,
                                         const OracleBounds& bounds = {});

// 2^(d*k), the clock bound above which clocked copies add nothing for d models and
// programs of size k. Throws ResourceError on overflow.
std::uint64_t fully_clocked_bound(int d, int k);
// Every member of D with every clock 0..max_clock.
ClockedClass fully_clocked(const std::vector<PointedModel>& D, int max_clock);

// Move menus for exhaustive search and interactive play.
struct FsgMoveSpace {
    std::vector<std::string> vars = {"V1"};
    int max_threshold = 1;
    bool global = false;
};
// Samson's parts of every move at `node` (splits and functions, no replies). A modal move
// Samson cannot supply is listed once with an empty function; fsg_apply decides it.
std::vector<FsgMove> fsg_samson_moves(const FsgPosition& pos, int node, const FsgMoveSpace& space);
// Every Delilah completion (functions, picks, challenge) of a move whose Samson parts are set.
std::vector<FsgMove> fsg_delilah_completions(const FsgPosition& pos, int node, const FsgMove& move);
// Every way Samson can answer Delilah's function.
std::vector<FsgMove> fsg_samson_replies(const FsgMove& move);

// Random legal plays; every play must end within step_ceiling moves (a longer play
// throws Error). Returns the statistics of the plays.
struct ReplayStats {
    long plays = 0;
    long samson_wins = 0;
    long delilah_wins = 0;
    long longest = 0;
    long total_moves = 0;
};
ReplayStats random_replay(const std::vector<PointedModel>& A, const std::vector<PointedModel>& B, int budget,
                          const std::vector<std::string>& props, int plays, std::uint32_t seed, long step_ceiling = 100000);

}  // namespace msc
