#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <string>
#include <vector>

#include "msc/model.hpp"
#include "msc/program.hpp"

namespace msc {

// One round of a run: which head predicates hold at which node. Stored node-major,
// one fixed-width bit row per node.
class GlobalConfiguration {
public:
    GlobalConfiguration() = default;
    GlobalConfiguration(int nodes, int width);

    int nodes() const { return nodes_; }
    int width() const { return width_; }
    bool get(int node, int var) const;
    void set(int node, int var, bool value = true);
    bool empty() const;
    std::vector<int> row(int node) const;  // indices of the predicates true at node

    bool operator==(const GlobalConfiguration& o) const = default;

    // "{X,Y} {} {X}" style rendering, one braces group per node.
    std::string str(const std::vector<std::string>& names) const;

private:
    int nodes_ = 0;
    int width_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
};

struct Verdict {
    enum class Kind : std::uint8_t { Accepted, Rejected, NeverAccepts };
    Kind kind = Kind::NeverAccepts;
    long round = 0;      // Accepted / Rejected
    long preperiod = 0;  // NeverAccepts
    long period = 0;
    bool tie = false;    // an accepting and a rejecting predicate fired together

    bool accepted() const { return kind == Kind::Accepted; }
    std::string str() const;
};

// Direct recursive evaluation. Var nodes are looked up by name in `vars`, the predicate
// order of g's columns (normally Program::variables).
bool eval_schema(const KripkeModel& m, const GlobalConfiguration& g, int node, const Schema& s,
                 const std::vector<std::string>& vars = {});

// Bit-parallel evaluator for one program on one model. Configurations are kept
// column-major (one node bitset per predicate) while iterating.
class Evaluator {
public:
    using State = std::vector<std::uint64_t>;

    Evaluator(const Program& p, const KripkeModel& m);

    State initial() const;
    State step(const State& s) const;
    bool holds(const State& s, int var, int node) const;
    bool any_accepting(const State& s, int node) const;
    bool any_rejecting(const State& s, int node) const;

    GlobalConfiguration to_config(const State& s) const;
    State from_config(const GlobalConfiguration& g) const;

    int words() const { return words_; }

private:
    struct Node {
        Op op;
        int k;
        int a;  // child / prop index / var index
        int b;
    };
    void compile();
    int intern(const Schema& s);
    void eval_all(const State& vars, std::vector<std::uint64_t>& scratch) const;

    const Program& prog_;
    const KripkeModel& model_;
    int n_ = 0;
    int words_ = 0;
    std::vector<Node> dag_;
    std::vector<int> base_roots_;
    std::vector<int> ind_roots_;
    std::vector<std::string> prop_names_;
    std::vector<std::uint64_t> prop_bits_;
    std::vector<std::uint64_t> pred_masks_;  // per node: its predecessors
    std::vector<std::uint64_t> succ_masks_;  // per node: its successors
    std::vector<std::uint64_t> full_;
    std::map<std::tuple<int, int, int, int>, int> intern_table_;  // only used while compiling
};

GlobalConfiguration initial_config(const Program& p, const KripkeModel& m);
GlobalConfiguration step(const Program& p, const KripkeModel& m, const GlobalConfiguration& g);

// Throws UndeterminedError when max_rounds rounds pass without a verdict.
Verdict run(const Program& p, const PointedModel& pm, std::optional<long> max_rounds = std::nullopt);

// Configurations g_0..g_rounds, with no verdict logic applied.
std::vector<GlobalConfiguration> trace_run(const Program& p, const KripkeModel& m, long rounds);

Verdict k_accepts(const Program& p, const std::vector<std::string>& word, int k,
                  std::optional<long> max_rounds = std::nullopt);

}  // namespace msc
