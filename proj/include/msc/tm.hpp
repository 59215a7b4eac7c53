#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace msc {

enum class Move : std::uint8_t { L, S, R };

struct Transition {
    int next = 0;
    int write = 0;
    Move move = Move::S;
};

inline const std::string kTmBlank = "_";
inline const std::string kTmLeft = "L";
inline const std::string kTmRight = "R";

// Deterministic machine working between two end markers on |w| + bound cells.
// bound < 0 marks an unbounded machine (meta-reduction input): the tape then grows
// to the right with blanks and the right marker never appears.
struct BoundedTm {
    int bound = 0;
    std::vector<std::string> states;
    std::vector<std::string> tape;   // full alphabet, contains "_", "L" and "R"
    std::vector<std::string> input;  // input letters, a subset of tape
    int start = 0;
    std::vector<int> accepting;
    std::vector<int> rejecting;
    std::vector<Transition> delta;   // indexed state * |tape| + symbol

    int state_index(const std::string& s) const;
    int symbol_index(const std::string& s) const;
    int blank() const { return symbol_index(kTmBlank); }
    int left() const { return symbol_index(kTmLeft); }
    int right() const { return symbol_index(kTmRight); }
    bool is_accepting(int q) const;
    bool is_rejecting(int q) const;
    bool is_halting(int q) const { return is_accepting(q) || is_rejecting(q); }
    bool unbounded() const { return bound < 0; }

    const Transition& at(int q, int a) const { return delta[static_cast<std::size_t>(q) * tape.size() + static_cast<std::size_t>(a)]; }
    Transition& at(int q, int a) { return delta[static_cast<std::size_t>(q) * tape.size() + static_cast<std::size_t>(a)]; }

    void validate() const;
};

bool operator==(const Transition& a, const Transition& b);
bool operator==(const BoundedTm& a, const BoundedTm& b);

struct TmConfig {
    std::vector<int> tape;
    int head = 1;
    int state = 0;
    bool operator==(const TmConfig&) const = default;
};

struct TmResult {
    enum class Kind : std::uint8_t { Accept, Reject, FuelExhausted, NonHalting };
    Kind kind = Kind::NonHalting;
    long steps = 0;
    int max_head = 1;  // rightmost head index visited
    std::string str() const;
};

TmConfig tm_initial(const BoundedTm& t, const std::vector<std::string>& word);
// One transition; halting configurations are fixed points.
TmConfig tm_step(const BoundedTm& t, const TmConfig& c);

TmResult run_tm(const BoundedTm& t, const std::vector<std::string>& word, std::optional<long> fuel = std::nullopt);

// Configurations c_0..c_n, stopping after the first halting configuration or at max_steps.
std::vector<TmConfig> tm_trace(const BoundedTm& t, const std::vector<std::string>& word, long max_steps);

// Splits "abba" into letters when every input symbol is one character, otherwise on spaces/commas.
std::vector<std::string> split_word(const BoundedTm& t, const std::string& text);
std::vector<std::string> split_word(const std::string& text);

}  // namespace msc
