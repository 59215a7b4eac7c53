#pragma once

#include <string>
#include <utility>
#include <vector>

#include "msc/program.hpp"

namespace msc {

struct ForestLabel {
    Op op = Op::Bottom;
    int threshold = 0;
    std::string name;
};

bool operator==(const ForestLabel& a, const ForestLabel& b);

struct ForestNode {
    bool labeled = false;
    ForestLabel label;
    int parent = -1;
    std::vector<int> children;
    std::string pred;   // rho: (pred, base|iter)
    bool iter = false;
};

// Doubles as the partial forest of a formula-size-game position, where labels may be missing.
struct SyntaxForest {
    std::vector<ForestNode> nodes;
    std::vector<std::pair<int, int>> back_edges;
    // Filled by syntax_forest: (base root, iter root) per program variable.
    std::vector<std::pair<int, int>> var_roots;

    int add_root(const std::string& pred, bool iter);
    int add_child(int parent);
    void set_label(int node, const ForestLabel& l);
    std::vector<int> roots() const;
    int root_of(int node) const;
    int find_root(const std::string& pred, bool iter) const;  // first matching root or -1
    void add_back_edge(int from, int to);
    bool reaches(int from, int to) const;  // tree walk from -> to
    void validate() const;
};

SyntaxForest syntax_forest(const Program& p);

int forest_size(const SyntaxForest& f);

// Subschema rooted at u; every node below u must be labeled.
Schema forest_subformula(const SyntaxForest& f, int u);

}  // namespace msc
