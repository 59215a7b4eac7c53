#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "msc/model.hpp"
#include "msc/program.hpp"
#include "msc/tm.hpp"

namespace msc {

struct Gate {
    enum class Kind : std::uint8_t { Input, And, Or, Not };
    std::string name;
    Kind kind = Kind::Input;
    std::string var;          // Input gates: the input variable
    std::vector<int> inputs;  // indices of the gates feeding this one
};

struct Circuit {
    std::vector<Gate> gates;
    int output = -1;

    int gate_index(const std::string& name) const;
    // Input variables in order of first declaration; bit vectors follow this order.
    std::vector<std::string> input_vars() const;
    void validate() const;
};

bool operator==(const Circuit& a, const Circuit& b);
bool eval_circuit(const Circuit& c, const std::vector<bool>& bits);

struct Quantifier {
    bool forall = false;
    std::string var;
};

// The matrix reuses the schema AST: Prop nodes are the bound variables.
struct Qbf {
    std::vector<Quantifier> prefix;
    Schema matrix;
    void validate() const;
};

bool operator==(const Qbf& a, const Qbf& b);
bool eval_qbf(const Qbf& q);

// The single machine used for every QBF, and its encoding of a formula.
const BoundedTm& qbf_machine();
std::vector<std::string> qbf_word(const Qbf& q);
std::pair<std::vector<std::string>, const BoundedTm*> qbf_to_lba(const Qbf& q);
bool qbf_to_msc_pipeline(const Qbf& q);

Program circuit_to_sc_async(const Circuit& c);
PointedModel bits_to_model(const Circuit& c, const std::vector<bool>& bits);
bool circuit_async_accepts(const Circuit& c, const std::vector<bool>& bits);

// Specializes an MSC program to extended word models with n letters and padding 0:
// one proposition and one predicate copy per position 1..n.
Program msc_word_to_sc(const Program& p, int n);
// Valuation of the indexed propositions for a word of that length.
PointedModel word_to_sc_model(const Program& p, const std::vector<std::string>& word);
std::string indexed_name(const std::string& base, int i);

// Enumerate valuations of the program's propositions; nullopt if none is accepted.
std::optional<std::set<std::string>> sc_sat(const Program& p, int max_props = 20);
std::optional<std::set<std::string>> sc_async_sat(const Program& p, int max_props = 20);

}  // namespace msc
