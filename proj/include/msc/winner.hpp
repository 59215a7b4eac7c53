#pragma once

#include <cstdint>

namespace msc {

enum class Winner : std::uint8_t { Eloise, Abelard, NoWinner };

inline const char* winner_name(Winner w)
{
    switch (w) {
    case Winner::Eloise: return "Eloise";
    case Winner::Abelard: return "Abelard";
    case Winner::NoWinner: return "NoWinner";
    }
    return "?";
}

}  // namespace msc
