#pragma once

#include <string>
#include <vector>

#include "msc/schema.hpp"

namespace msc {

enum class Semantics : std::uint8_t { Sync, Async };

// Rules are stored aligned with `variables`: base[i] and induction[i] belong to variables[i].
struct Program {
    std::vector<std::string> variables;
    std::vector<Schema> base;
    std::vector<Schema> induction;
    std::vector<int> accepting;
    std::vector<int> rejecting;
    Fragment fragment = Fragment::GGMSC;
    Semantics semantics = Semantics::Sync;

    int index_of(const std::string& name) const;
    int add_variable(const std::string& name, Schema base_body, Schema induction_body);
    void set_accepting(const std::vector<std::string>& names);
    void set_rejecting(const std::vector<std::string>& names);
    bool is_accepting(int i) const;
    bool is_rejecting(int i) const;
    std::size_t size() const { return variables.size(); }

    // Throws ValidationError describing the first violated invariant.
    void validate() const;
    Fragment inferred_fragment() const;
    std::vector<std::string> propositions() const;
};

Program make_program(const std::vector<std::pair<std::string, std::pair<Schema, Schema>>>& rules,
                     const std::vector<std::string>& accepting, const std::vector<std::string>& rejecting = {},
                     Semantics sem = Semantics::Sync);

bool program_equal(const Program& a, const Program& b);

int program_size(const Program& p);
int program_max_threshold(const Program& p);

}  // namespace msc
