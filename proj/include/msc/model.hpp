#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace msc {

inline const std::string kBlankProp = "p_blank";
inline const std::string kLeftProp = "p_left";
inline const std::string kRightProp = "p_right";

struct KripkeModel {
    int node_count = 0;
    std::vector<std::pair<int, int>> edges;     // sorted, unique
    std::set<std::string> props;                // declared universe
    std::vector<std::set<std::string>> valuation;

    explicit KripkeModel(int n = 0) : node_count(n), valuation(static_cast<std::size_t>(n)) {}

    void add_edge(int a, int b);
    void set_true(int node, const std::string& p);
    bool holds(int node, const std::string& p) const;
    std::vector<std::vector<int>> successors() const;
    void validate() const;
};

bool operator==(const KripkeModel& a, const KripkeModel& b);

struct PointedModel {
    KripkeModel model;
    int point = 0;
};

bool operator==(const PointedModel& a, const PointedModel& b);

struct ClockedModel {
    PointedModel pointed;
    int clock = 0;
};

PointedModel extended_word_model(const std::vector<std::string>& word, int pad);
PointedModel path_model(int length, const std::vector<std::set<std::string>>& valuation = {});

// The single-node model without edges used for substitution-calculus programs.
PointedModel sc_model(const std::set<std::string>& true_props, const std::set<std::string>& universe = {});

}  // namespace msc
