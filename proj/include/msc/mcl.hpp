#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "msc/model.hpp"
#include "msc/program.hpp"
#include "msc/winner.hpp"

namespace msc {

enum class MOp : std::uint8_t { Bottom, Top, Prop, Not, Or, And, Dia, Box, GDia, GBox, Label, Claim };

struct MclNode;
using Mcl = std::shared_ptr<const MclNode>;

struct MclNode {
    MOp op = MOp::Bottom;
    int threshold = 0;
    std::string name;  // Prop, Label and Claim
    Mcl left;
    Mcl right;
};

Mcl m_bot();
Mcl m_top();
Mcl m_prop(const std::string& p);
Mcl m_not(Mcl a);
Mcl m_or(Mcl a, Mcl b);
Mcl m_and(Mcl a, Mcl b);
Mcl m_modal(MOp op, int k, Mcl a);
Mcl m_label(const std::string& name, Mcl a);
Mcl m_claim(const std::string& name);

bool mcl_equal(const Mcl& a, const Mcl& b);
std::string mcl_to_string(const Mcl& f);
int mcl_size(const Mcl& f);

// Occurrences are numbered in preorder; parent[i] is -1 for the root.
struct MclTree {
    std::vector<const MclNode*> node;
    std::vector<int> parent;
    std::vector<std::vector<int>> children;
};
MclTree mcl_tree(const Mcl& f);

// Nearest Label ancestor with the claim's name, or nullopt.
std::optional<int> reference_formula(const MclTree& t, int claim_occurrence);
std::vector<int> dangling_claims(const Mcl& f);

Winner solve_mcl_game(const PointedModel& pm, const Mcl& f);

Mcl translate_async_program(const Program& p);
Mcl naive_translate(const Program& p);

}  // namespace msc
