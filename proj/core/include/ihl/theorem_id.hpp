#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace ihl {

enum class TheoremId {
  P_BOUNDS,
  P_T0,
  P_TLIP,
  P_DPM_MONO,
  P_DERIV,
  P_2TL,
  P_PAIR_SLOPE,
  C_HJ,
  T_DUALITY,
  R_GLOBAL_LIP,
  R_AE_EQUAL,
  O_CLASSICAL,
};

inline constexpr std::array<TheoremId, 12> kAllTheorems{
    TheoremId::P_BOUNDS,   TheoremId::P_T0,         TheoremId::P_TLIP,
    TheoremId::P_DPM_MONO, TheoremId::P_DERIV,      TheoremId::P_2TL,
    TheoremId::P_PAIR_SLOPE, TheoremId::C_HJ,       TheoremId::T_DUALITY,
    TheoremId::R_GLOBAL_LIP, TheoremId::R_AE_EQUAL, TheoremId::O_CLASSICAL,
};

constexpr std::string_view to_string(TheoremId id) noexcept {
  switch (id) {
    case TheoremId::P_BOUNDS: return "P_BOUNDS";
    case TheoremId::P_T0: return "P_T0";
    case TheoremId::P_TLIP: return "P_TLIP";
    case TheoremId::P_DPM_MONO: return "P_DPM_MONO";
    case TheoremId::P_DERIV: return "P_DERIV";
    case TheoremId::P_2TL: return "P_2TL";
    case TheoremId::P_PAIR_SLOPE: return "P_PAIR_SLOPE";
    case TheoremId::C_HJ: return "C_HJ";
    case TheoremId::T_DUALITY: return "T_DUALITY";
    case TheoremId::R_GLOBAL_LIP: return "R_GLOBAL_LIP";
    case TheoremId::R_AE_EQUAL: return "R_AE_EQUAL";
    case TheoremId::O_CLASSICAL: return "O_CLASSICAL";
  }
  return "UNKNOWN";
}

constexpr std::optional<TheoremId> parse_theorem_id(std::string_view name) noexcept {
  for (TheoremId id : kAllTheorems) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

}  // namespace ihl
