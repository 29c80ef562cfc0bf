#include "mve/verdict.hpp"

#include <stdexcept>

namespace mve {

std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Vanishing: return "Vanishing";
    case VerdictStatus::NonVanishing: return "NonVanishing";
    case VerdictStatus::NonVanishingHeuristic: return "NonVanishingHeuristic";
    case VerdictStatus::Unknown: return "Unknown";
    case VerdictStatus::Unsupported: return "Unsupported";
  }
  return "?";
}

void check_verdict(const Verdict& v) {
  switch (v.status) {
    case VerdictStatus::Vanishing:
      if (!v.lower_bound || *v.lower_bound != 0.0)
        throw std::logic_error("Vanishing verdict must carry bound 0");
      break;
    case VerdictStatus::NonVanishing:
    case VerdictStatus::NonVanishingHeuristic:
      if (!v.lower_bound || !(*v.lower_bound > 0.0))
        throw std::logic_error("nonvanishing verdict needs a positive bound");
      break;
    default:
      break;
  }
}

}  // namespace mve
