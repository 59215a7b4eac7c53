#pragma once

#include "msc/program.hpp"

namespace msc {

// Negations are pushed down to propositions. A negated variable ¬Y becomes a fresh dual
// predicate Y_d whose rules are the negated rules of Y; duals are added only when some
// negated occurrence needs them, so strong-NNF input comes back unchanged.
Program to_strong_nnf(const Program& p);

// Name used for the dual of `var`: var + "_d", extended until it clashes with nothing in the input.
std::string dual_name(const Program& input, const std::string& var);

bool program_is_strong_nnf(const Program& p);

}  // namespace msc
