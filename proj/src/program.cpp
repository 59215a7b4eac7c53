#include "msc/program.hpp"

#include <algorithm>
#include <set>

#include "msc/errors.hpp"

namespace msc {

int Program::index_of(const std::string& name) const
{
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i] == name)
            return static_cast<int>(i);
    return -1;
}

int Program::add_variable(const std::string& name, Schema base_body, Schema induction_body)
{
    if (index_of(name) >= 0)
        throw ValidationError("duplicate head predicate '" + name + "'");
    variables.push_back(name);
    base.push_back(std::move(base_body));
    induction.push_back(std::move(induction_body));
    return static_cast<int>(variables.size()) - 1;
}

static std::vector<int> resolve(const Program& p, const std::vector<std::string>& names, const char* what)
{
    std::vector<int> out;
    for (const auto& n : names) {
        int i = p.index_of(n);
        if (i < 0)
            throw ValidationError(std::string(what) + " predicate '" + n + "' is not a head predicate");
        out.push_back(i);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void Program::set_accepting(const std::vector<std::string>& names) { accepting = resolve(*this, names, "accepting"); }
void Program::set_rejecting(const std::vector<std::string>& names) { rejecting = resolve(*this, names, "rejecting"); }

bool Program::is_accepting(int i) const { return std::binary_search(accepting.begin(), accepting.end(), i); }
bool Program::is_rejecting(int i) const { return std::binary_search(rejecting.begin(), rejecting.end(), i); }

void Program::validate() const
{
    if (base.size() != variables.size() || induction.size() != variables.size())
        throw ValidationError("every head predicate needs exactly one base rule and one induction rule");
    std::set<std::string> seen;
    for (const auto& v : variables)
        if (!seen.insert(v).second)
            throw ValidationError("duplicate head predicate '" + v + "'");
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (!base[i] || !induction[i])
            throw ValidationError("missing rule for '" + variables[i] + "'");
        if (!is_formula(base[i]))
            throw ValidationError("base rule of '" + variables[i] + "' contains a schema variable");
        std::set<std::string> vs;
        collect_vars(induction[i], vs);
        for (const auto& v : vs)
            if (!seen.count(v))
                throw ValidationError("induction rule of '" + variables[i] + "' uses undeclared variable '" + v + "'");
        if (!fits_fragment(base[i], fragment) || !fits_fragment(induction[i], fragment))
            throw ValidationError("rules of '" + variables[i] + "' exceed the declared fragment " +
                                  fragment_name(fragment));
    }
    for (int a : accepting)
        if (a < 0 || a >= static_cast<int>(variables.size()))
            throw ValidationError("accepting index out of range");
    for (int r : rejecting) {
        if (r < 0 || r >= static_cast<int>(variables.size()))
            throw ValidationError("rejecting index out of range");
        if (is_accepting(r))
            throw ValidationError("predicate '" + variables[r] + "' is both accepting and rejecting");
    }
}

Fragment Program::inferred_fragment() const
{
    Fragment f = Fragment::SC;
    for (std::size_t i = 0; i < variables.size(); ++i) {
        f = fragment_join(f, schema_fragment(base[i]));
        f = fragment_join(f, schema_fragment(induction[i]));
    }
    return f;
}

std::vector<std::string> Program::propositions() const
{
    std::set<std::string> ps;
    for (std::size_t i = 0; i < variables.size(); ++i) {
        collect_props(base[i], ps);
        collect_props(induction[i], ps);
    }
    return {ps.begin(), ps.end()};
}

Program make_program(const std::vector<std::pair<std::string, std::pair<Schema, Schema>>>& rules,
                     const std::vector<std::string>& accepting, const std::vector<std::string>& rejecting,
                     Semantics sem)
{
    Program p;
    for (const auto& [name, bodies] : rules)
        p.add_variable(name, bodies.first, bodies.second);
    p.set_accepting(accepting);
    p.set_rejecting(rejecting);
    p.semantics = sem;
    p.fragment = p.inferred_fragment();
    p.validate();
    return p;
}

bool program_equal(const Program& a, const Program& b)
{
    if (a.variables != b.variables || a.accepting != b.accepting || a.rejecting != b.rejecting ||
        a.fragment != b.fragment || a.semantics != b.semantics)
        return false;
    for (std::size_t i = 0; i < a.variables.size(); ++i)
        if (!schema_equal(a.base[i], b.base[i]) || !schema_equal(a.induction[i], b.induction[i]))
            return false;
    return true;
}

int program_size(const Program& p)
{
    int n = 0;
    for (std::size_t i = 0; i < p.variables.size(); ++i)
        n += 2 + schema_size(p.base[i]) + schema_size(p.induction[i]);
    return n;
}

int program_max_threshold(const Program& p)
{
    int m = 0;
    for (std::size_t i = 0; i < p.variables.size(); ++i)
        m = std::max({m, max_threshold(p.base[i]), max_threshold(p.induction[i])});
    return m;
}

}  // namespace msc
