#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace mve {

enum class VerdictStatus { Vanishing, NonVanishing, NonVanishingHeuristic, Unknown, Unsupported };

std::string_view to_string(VerdictStatus s);

struct Verdict {
  VerdictStatus status = VerdictStatus::Unknown;
  std::optional<double> lower_bound;
  nlohmann::json certificate = nlohmann::json::object();
  std::string theorem;  // which vanishing theorem the verdict applies
  std::string note;
};

// Filling-type constant for 2-complexes in the vanishing dichotomy.
inline constexpr double kTwoComplexConstant = 1.0e6;

// Uniform-uniform growth constants for nonabelian subgroups.
inline double raag_uniform_growth() { return std::log(3.0); }
inline double free_by_cyclic_uniform_growth() { return std::log(3.0) / 6.0; }

// omega(G) >= delta_uniform / (2 C) whenever omega does not vanish.
inline double nonvanishing_bound(double uniform_growth) {
  return uniform_growth / (2.0 * kTwoComplexConstant);
}

// Throws if the status/bound pairing is inconsistent.
void check_verdict(const Verdict& v);

}  // namespace mve
