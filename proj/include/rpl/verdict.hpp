#pragma once

#include <cstdint>
#include <ostream>
#include <string_view>

namespace rpl {

/// Three-valued satisfaction result. Unknown means "no claim"; it is only
/// produced where a quantifier range could not be covered.
enum class Verdict : std::uint8_t { Satisfied, Falsified, Unknown };

inline std::string_view to_string(Verdict v) noexcept
{
    switch (v) {
    case Verdict::Satisfied: return "Satisfied";
    case Verdict::Falsified: return "Falsified";
    case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

inline std::ostream& operator<<(std::ostream& os, Verdict v) { return os << to_string(v); }

inline constexpr Verdict from_bool(bool b) noexcept { return b ? Verdict::Satisfied : Verdict::Falsified; }

// Strong Kleene tables.

inline constexpr Verdict kleene_not(Verdict a) noexcept
{
    switch (a) {
    case Verdict::Satisfied: return Verdict::Falsified;
    case Verdict::Falsified: return Verdict::Satisfied;
    default: return Verdict::Unknown;
    }
}

inline constexpr Verdict kleene_and(Verdict a, Verdict b) noexcept
{
    if (a == Verdict::Falsified || b == Verdict::Falsified) return Verdict::Falsified;
    if (a == Verdict::Satisfied && b == Verdict::Satisfied) return Verdict::Satisfied;
    return Verdict::Unknown;
}

inline constexpr Verdict kleene_or(Verdict a, Verdict b) noexcept
{
    if (a == Verdict::Satisfied || b == Verdict::Satisfied) return Verdict::Satisfied;
    if (a == Verdict::Falsified && b == Verdict::Falsified) return Verdict::Falsified;
    return Verdict::Unknown;
}

inline constexpr Verdict kleene_implies(Verdict a, Verdict b) noexcept { return kleene_or(kleene_not(a), b); }

}  // namespace rpl
