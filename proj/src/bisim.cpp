#include "msc/bisim.hpp"

#include <algorithm>
#include <map>

#include "msc/errors.hpp"

namespace msc {

const char* bisim_kind_name(BisimKind k)
{
    switch (k) {
    case BisimKind::Plain: return "plain";
    case BisimKind::Counting: return "counting";
    case BisimKind::GlobalCounting: return "global_counting";
    }
    return "?";
}

BisimKind parse_bisim_kind(const std::string& s)
{
    if (s == "plain")
        return BisimKind::Plain;
    if (s == "counting")
        return BisimKind::Counting;
    if (s == "global_counting" || s == "global-counting" || s == "global")
        return BisimKind::GlobalCounting;
    throw ValidationError("unknown bisimulation kind '" + s + "'");
}

namespace {

using Partition = std::vector<int>;

int class_count(const Partition& p) { return p.empty() ? 0 : *std::max_element(p.begin(), p.end()) + 1; }

// True iff both sides contain the same number of nodes of every class.
bool balanced(const Partition& p, int na)
{
    std::vector<int> diff(static_cast<std::size_t>(class_count(p)), 0);
    for (std::size_t v = 0; v < p.size(); ++v)
        diff[static_cast<std::size_t>(p[v])] += static_cast<int>(v) < na ? 1 : -1;
    return std::all_of(diff.begin(), diff.end(), [](int d) { return d == 0; });
}

}  // namespace

bool check_bisimilar(const PointedModel& a, const PointedModel& b, BisimKind kind, std::optional<int> rounds)
{
    const int na = a.model.node_count;
    const int n = na + b.model.node_count;
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
    for (auto [x, y] : a.model.edges)
        succ[static_cast<std::size_t>(x)].push_back(y);
    for (auto [x, y] : b.model.edges)
        succ[static_cast<std::size_t>(x + na)].push_back(y + na);

    Partition cls(static_cast<std::size_t>(n));
    {
        std::map<std::set<std::string>, int> ids;
        for (int v = 0; v < n; ++v) {
            const auto& val = v < na ? a.model.valuation[static_cast<std::size_t>(v)]
                                     : b.model.valuation[static_cast<std::size_t>(v - na)];
            cls[static_cast<std::size_t>(v)] = ids.emplace(val, static_cast<int>(ids.size())).first->second;
        }
    }
    const int pa = a.point;
    const int pb = b.point + na;
    const bool global = kind == BisimKind::GlobalCounting;

    int stage = 0;
    while (!rounds || stage < *rounds) {
        if (global && !balanced(cls, na))
            return false;  // a global move at this stage already separates the models
        std::map<std::vector<int>, int> ids;
        Partition next(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) {
            std::vector<int> sig{cls[static_cast<std::size_t>(v)]};
            std::vector<int> cs;
            for (int u : succ[static_cast<std::size_t>(v)])
                cs.push_back(cls[static_cast<std::size_t>(u)]);
            std::sort(cs.begin(), cs.end());
            if (kind == BisimKind::Plain)
                cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
            sig.insert(sig.end(), cs.begin(), cs.end());
            next[static_cast<std::size_t>(v)] = ids.emplace(sig, static_cast<int>(ids.size())).first->second;
        }
        ++stage;
        bool stable = class_count(next) == class_count(cls);
        cls = std::move(next);
        if (stable && !rounds)
            break;
        if (stable) {
            // Nothing changes any more; later stages repeat this one.
            if (cls[static_cast<std::size_t>(pa)] != cls[static_cast<std::size_t>(pb)])
                return false;
            return !global || balanced(cls, na);
        }
    }
    if (cls[static_cast<std::size_t>(pa)] != cls[static_cast<std::size_t>(pb)])
        return false;
    // The unbounded case also needs balance at the fixed point.
    return !global || rounds || balanced(cls, na);
}

}  // namespace msc
