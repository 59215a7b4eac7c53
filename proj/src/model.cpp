#include "msc/model.hpp"

#include <algorithm>

#include "msc/errors.hpp"

namespace msc {

void KripkeModel::add_edge(int a, int b)
{
    if (a < 0 || b < 0 || a >= node_count || b >= node_count)
        throw ValidationError("edge " + std::to_string(a) + " -> " + std::to_string(b) + " is out of range");
    auto e = std::make_pair(a, b);
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || *it != e)
        edges.insert(it, e);
}

void KripkeModel::set_true(int node, const std::string& p)
{
    if (node < 0 || node >= node_count)
        throw ValidationError("node " + std::to_string(node) + " is out of range");
    props.insert(p);
    valuation[static_cast<std::size_t>(node)].insert(p);
}

bool KripkeModel::holds(int node, const std::string& p) const
{
    return valuation[static_cast<std::size_t>(node)].count(p) > 0;
}

std::vector<std::vector<int>> KripkeModel::successors() const
{
    std::vector<std::vector<int>> out(static_cast<std::size_t>(node_count));
    for (auto [a, b] : edges)
        out[static_cast<std::size_t>(a)].push_back(b);
    return out;
}

void KripkeModel::validate() const
{
    if (node_count < 0 || valuation.size() != static_cast<std::size_t>(node_count))
        throw ValidationError("valuation does not cover the nodes");
    for (auto [a, b] : edges)
        if (a < 0 || b < 0 || a >= node_count || b >= node_count)
            throw ValidationError("edge endpoint out of range");
    for (const auto& vs : valuation)
        for (const auto& p : vs)
            if (!props.count(p))
                throw ValidationError("valuation uses undeclared proposition '" + p + "'");
}

bool operator==(const KripkeModel& a, const KripkeModel& b)
{
    return a.node_count == b.node_count && a.edges == b.edges && a.props == b.props && a.valuation == b.valuation;
}

bool operator==(const PointedModel& a, const PointedModel& b) { return a.point == b.point && a.model == b.model; }

PointedModel extended_word_model(const std::vector<std::string>& word, int pad)
{
    for (const auto& letter : word)
        if (letter == kBlankProp || letter == kLeftProp || letter == kRightProp)
            throw ValidationError("word letter '" + letter + "' is a reserved proposition");
    if (pad < 0)
        throw ValidationError("padding must be non-negative");
    const int n = static_cast<int>(word.size());
    const int last = n + pad + 1;
    PointedModel pm{KripkeModel(last + 1), 1};
    KripkeModel& m = pm.model;
    m.props.insert({kBlankProp, kLeftProp, kRightProp});
    for (const auto& letter : word)
        m.props.insert(letter);
    m.set_true(0, kLeftProp);
    for (int i = 1; i <= n; ++i)
        m.set_true(i, word[static_cast<std::size_t>(i - 1)]);
    for (int j = n + 1; j <= n + pad; ++j)
        m.set_true(j, kBlankProp);
    m.set_true(last, kRightProp);
    for (int i = 0; i < last; ++i) {
        m.add_edge(i, i + 1);
        m.add_edge(i + 1, i);
    }
    return pm;
}

PointedModel path_model(int length, const std::vector<std::set<std::string>>& valuation)
{
    if (length < 1)
        throw ValidationError("path length must be at least 1");
    // Node i stands for w_{i+1}; edges run from w_{j+1} down to w_j.
    PointedModel pm{KripkeModel(length), length - 1};
    for (int i = 1; i < length; ++i)
        pm.model.add_edge(i, i - 1);
    for (std::size_t i = 0; i < valuation.size() && i < static_cast<std::size_t>(length); ++i)
        for (const auto& p : valuation[i])
            pm.model.set_true(static_cast<int>(i), p);
    return pm;
}

PointedModel sc_model(const std::set<std::string>& true_props, const std::set<std::string>& universe)
{
    PointedModel pm{KripkeModel(1), 0};
    pm.model.props = universe;
    for (const auto& p : true_props)
        pm.model.set_true(0, p);
    return pm;
}

}  // namespace msc
