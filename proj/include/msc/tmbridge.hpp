#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "msc/eval.hpp"
#include "msc/model.hpp"
#include "msc/program.hpp"
#include "msc/tm.hpp"

namespace msc {

// Predicate names used by the machine-to-program compiler.
struct TmPredicateNames {
    std::vector<std::string> symbol;  // per tape symbol
    std::vector<std::string> state;   // per state
    std::string left;                 // cell left of the head
    std::string right;                // cell right of the head
};
TmPredicateNames tm_predicate_names(const BoundedTm& t);

// The simulating MSC program. Run it on extended_word_model(w, t.bound).
Program compile_tm_to_msc(const BoundedTm& t);

// Reads a machine configuration back from a round of the compiled program. nullopt when
// the round does not encode exactly one head and one symbol per cell.
std::optional<TmConfig> decode_tm_config(const BoundedTm& t, const Program& compiled, const GlobalConfiguration& g);

bool is_flat(const Program& p);
Program flatten(const Program& p);

// A k-bounded machine over `alphabet` (defaults to the program's non-reserved
// propositions) whose verdict on w is the verdict of k_accepts(p, w, k). Non-flat
// programs are flattened first. Thresholds above m raise ValidationError, an
// oversized transition table raises ResourceError.
BoundedTm compile_program_to_tm(const Program& p, int k, const std::vector<std::string>& alphabet = {}, int m = -1,
                                long max_transitions = 4000000);

// The compiled program of a (typically unbounded) machine, frozen once the simulated
// head would step onto the right end marker.
Program meta_reduce(const BoundedTm& t);

// Extended word model with exactly the padding the machine uses on the word.
PointedModel input_reduce(const BoundedTm& t, const std::vector<std::string>& word, long fuel);
// Extended word model with padding s(|w|).
PointedModel input_reduce_s(const BoundedTm& t, const std::function<int(int)>& s, const std::vector<std::string>& word);

}  // namespace msc
