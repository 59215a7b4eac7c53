#include "msc/tm.hpp"

#include <algorithm>
#include <set>

#include "msc/errors.hpp"

namespace msc {

int BoundedTm::state_index(const std::string& s) const
{
    auto it = std::find(states.begin(), states.end(), s);
    return it == states.end() ? -1 : static_cast<int>(it - states.begin());
}

int BoundedTm::symbol_index(const std::string& s) const
{
    auto it = std::find(tape.begin(), tape.end(), s);
    return it == tape.end() ? -1 : static_cast<int>(it - tape.begin());
}

bool BoundedTm::is_accepting(int q) const { return std::find(accepting.begin(), accepting.end(), q) != accepting.end(); }
bool BoundedTm::is_rejecting(int q) const { return std::find(rejecting.begin(), rejecting.end(), q) != rejecting.end(); }

void BoundedTm::validate() const
{
    if (states.empty())
        throw ValidationError("machine has no states");
    if (std::set<std::string>(states.begin(), states.end()).size() != states.size())
        throw ValidationError("duplicate state name");
    if (std::set<std::string>(tape.begin(), tape.end()).size() != tape.size())
        throw ValidationError("duplicate tape symbol");
    if (blank() < 0 || left() < 0 || right() < 0)
        throw ValidationError("tape alphabet must contain the blank '_' and the end markers 'L' and 'R'");
    for (const auto& a : input) {
        int i = symbol_index(a);
        if (i < 0)
            throw ValidationError("input symbol '" + a + "' is not a tape symbol");
        if (i == blank() || i == left() || i == right())
            throw ValidationError("input symbol '" + a + "' must not be the blank or a marker");
    }
    const int nq = static_cast<int>(states.size());
    if (start < 0 || start >= nq)
        throw ValidationError("start state out of range");
    for (int q : accepting)
        if (q < 0 || q >= nq)
            throw ValidationError("accepting state out of range");
    for (int q : rejecting) {
        if (q < 0 || q >= nq)
            throw ValidationError("rejecting state out of range");
        if (is_accepting(q))
            throw ValidationError("state '" + states[static_cast<std::size_t>(q)] + "' is both accepting and rejecting");
    }
    if (delta.size() != states.size() * tape.size())
        throw ValidationError("transition table has the wrong size");
    const int na = static_cast<int>(tape.size());
    for (int q = 0; q < nq; ++q) {
        if (is_halting(q))
            continue;
        for (int a = 0; a < na; ++a) {
            const Transition& tr = at(q, a);
            const std::string where = "delta(" + states[static_cast<std::size_t>(q)] + ", " + tape[static_cast<std::size_t>(a)] + ")";
            if (tr.next < 0 || tr.next >= nq || tr.write < 0 || tr.write >= na)
                throw ValidationError(where + " is missing or out of range");
            if (a == left()) {
                if (tr.write != left() || tr.move == Move::L)
                    throw ValidationError(where + " must keep the left marker and not move left");
            } else if (a == right()) {
                if (unbounded())
                    continue;
                if (tr.write != right() || tr.move == Move::R)
                    throw ValidationError(where + " must keep the right marker and not move right");
            } else if (tr.write == left() || tr.write == right()) {
                throw ValidationError(where + " writes an end marker on a work cell");
            }
        }
    }
}

bool operator==(const Transition& a, const Transition& b)
{
    return a.next == b.next && a.write == b.write && a.move == b.move;
}

bool operator==(const BoundedTm& a, const BoundedTm& b)
{
    return a.bound == b.bound && a.states == b.states && a.tape == b.tape && a.input == b.input &&
           a.start == b.start && a.accepting == b.accepting && a.rejecting == b.rejecting && a.delta == b.delta;
}

std::string TmResult::str() const
{
    switch (kind) {
    case Kind::Accept: return "Accept after " + std::to_string(steps) + " steps";
    case Kind::Reject: return "Reject after " + std::to_string(steps) + " steps";
    case Kind::FuelExhausted: return "FuelExhausted after " + std::to_string(steps) + " steps";
    case Kind::NonHalting: return "NonHalting (configuration repeats)";
    }
    return "?";
}

TmConfig tm_initial(const BoundedTm& t, const std::vector<std::string>& word)
{
    TmConfig c;
    c.tape.push_back(t.left());
    for (const auto& a : word) {
        if (std::find(t.input.begin(), t.input.end(), a) == t.input.end())
            throw ValidationError("'" + a + "' is not an input symbol of the machine");
        c.tape.push_back(t.symbol_index(a));
    }
    if (!t.unbounded()) {
        for (int i = 0; i < t.bound; ++i)
            c.tape.push_back(t.blank());
        c.tape.push_back(t.right());
    } else if (word.empty()) {
        c.tape.push_back(t.blank());
    }
    c.head = 1;
    c.state = t.start;
    return c;
}

TmConfig tm_step(const BoundedTm& t, const TmConfig& c)
{
    if (t.is_halting(c.state))
        return c;
    TmConfig n = c;
    const Transition& tr = t.at(c.state, c.tape[static_cast<std::size_t>(c.head)]);
    n.tape[static_cast<std::size_t>(c.head)] = tr.write;
    n.state = tr.next;
    if (tr.move == Move::L)
        n.head = std::max(0, n.head - 1);
    else if (tr.move == Move::R)
        ++n.head;
    if (n.head >= static_cast<int>(n.tape.size())) {
        if (!t.unbounded())
            throw Error("machine moved past the right end marker");
        n.tape.push_back(t.blank());
    }
    return n;
}

TmResult run_tm(const BoundedTm& t, const std::vector<std::string>& word, std::optional<long> fuel)
{
    TmResult res;
    TmConfig c = tm_initial(t, word);
    auto verdict = [&](const TmConfig& x, long steps) {
        res.steps = steps;
        res.kind = t.is_accepting(x.state) ? TmResult::Kind::Accept : TmResult::Kind::Reject;
        return res;
    };
    if (t.is_halting(c.state))
        return verdict(c, 0);
    if (!fuel && t.unbounded())
        throw ValidationError("an unbounded machine needs a fuel limit");
    // Brent's cycle detection; with a fuel limit the run simply stops.
    TmConfig saved = c;
    long power = 1;
    long lam = 0;
    long steps = 0;
    while (true) {
        if (fuel && steps >= *fuel) {
            res.kind = TmResult::Kind::FuelExhausted;
            res.steps = steps;
            return res;
        }
        c = tm_step(t, c);
        ++steps;
        ++lam;
        res.max_head = std::max(res.max_head, c.head);
        if (t.is_halting(c.state))
            return verdict(c, steps);
        if (!fuel) {
            if (c == saved) {
                res.kind = TmResult::Kind::NonHalting;
                res.steps = steps;
                return res;
            }
            if (lam == power) {
                saved = c;
                power *= 2;
                lam = 0;
            }
        }
    }
}

std::vector<TmConfig> tm_trace(const BoundedTm& t, const std::vector<std::string>& word, long max_steps)
{
    std::vector<TmConfig> out{tm_initial(t, word)};
    for (long i = 0; i < max_steps && !t.is_halting(out.back().state); ++i)
        out.push_back(tm_step(t, out.back()));
    return out;
}

std::vector<std::string> split_word(const std::string& text)
{
    std::vector<std::string> out;
    bool delimited = text.find_first_of(" ,\t") != std::string::npos;
    if (!delimited) {
        for (char ch : text)
            out.emplace_back(1, ch);
        return out;
    }
    std::string cur;
    for (char ch : text) {
        if (ch == ' ' || ch == ',' || ch == '\t') {
            if (!cur.empty())
                out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

std::vector<std::string> split_word(const BoundedTm& t, const std::string& text)
{
    bool single = std::all_of(t.input.begin(), t.input.end(), [](const std::string& a) { return a.size() == 1; });
    if (!single && text.find_first_of(" ,\t") == std::string::npos && !text.empty())
        return {text};
    return split_word(text);
}

}  // namespace msc
