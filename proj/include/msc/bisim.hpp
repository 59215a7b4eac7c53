#pragma once

#include <optional>

#include "msc/model.hpp"

namespace msc {

enum class BisimKind : std::uint8_t { Plain, Counting, GlobalCounting };

// rounds = nullopt means unbounded (refinement to a fixed point).
bool check_bisimilar(const PointedModel& a, const PointedModel& b, BisimKind kind,
                     std::optional<int> rounds = std::nullopt);

const char* bisim_kind_name(BisimKind k);
BisimKind parse_bisim_kind(const std::string& s);

}  // namespace msc
