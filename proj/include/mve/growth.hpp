#pragma once

// Ball enumeration in Cayley graphs, growth-rate estimators and a discrete
// model of the collapsing metric on a tubular group.

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "mve/fbz.hpp"
#include "mve/raag.hpp"
#include "mve/words.hpp"

namespace mve {

inline constexpr std::size_t kDefaultFrontierCap = 5'000'000;

struct FreeModel {
  int rank = 1;
};
struct RaagModel {
  SimplicialGraph graph;
};
struct FbzModel {
  FreeAut aut;
};
// The tubular group of a GLU automorphism with its graph-of-groups
// generators a_v, u_v, x_e.
struct TubularBlockModel {
  GluData data;
};

using GroupModel = std::variant<FreeModel, RaagModel, FbzModel, TubularBlockModel>;

struct BallProfile {
  std::vector<double> radii;
  std::vector<std::size_t> counts;
  bool weighted = false;
  double weight_resolution = 0.0;  // grid spacing of radii when weighted
};

// Exact ball sizes b_0..b_t for the standard generators (basis, plus t for
// Fbz; vertices for Raag).  Throws ResourceLimit when more than frontier_cap
// elements are stored.
BallProfile enumerate_ball(const GroupModel& model, int radius,
                           std::size_t frontier_cap = kDefaultFrontierCap);

// Number of generators (not counting inverses) of the standard set.
int generator_count(const GroupModel& model);

struct RateEstimates {
  // Indexed by radius; absent where undefined.
  std::vector<std::optional<double>> delta;  // log(b_t / b_{t-1})
  std::vector<std::optional<double>> nu;     // log log b_t / log t
};

// Throws DegenerateProfile for profiles shorter than three radii.
RateEstimates rate_estimates(const BallProfile& profile);

// Lower bound for the growth of exponentially growing subgroups, if one
// applies.
std::optional<double> uniform_bound(const GroupModel& model);

struct CollapseWeights {
  double fiber = 1.0;     // per vertex-group generator
  double edge = 1.0;      // per stable letter x_e
  double crossing = 1.0;  // per switch across a tree edge
};

// Weighted ball profile of the tubular group by multi-source Dijkstra over
// (element, vertex) states, sampled on radii k * resolution up to radius.
BallProfile weighted_ball(const GluData& data, const CollapseWeights& weights, double radius,
                          double resolution, std::size_t frontier_cap = kDefaultFrontierCap);

struct CollapseRow {
  double s = 1.0;
  double h = 0.0;            // terminal slope of log N(r)
  double volume = 0.0;       // s * annuli + s^2 * tori
  double omega = 0.0;        // h * sqrt(volume)
  double omega_proxy = 0.0;  // h * sqrt(s * cells)
  std::size_t elements = 0;
};

struct CollapseDemo {
  std::vector<CollapseRow> rows;
  int tori = 0;    // one per vertex
  int annuli = 0;  // one per edge
  int cells = 0;
  bool polynomial = false;
  BallProfile unweighted;  // growth test used to decide polynomial
};

CollapseDemo collapsing_demo(const GluData& data, std::span<const double> s_values, double radius,
                             std::size_t frontier_cap = kDefaultFrontierCap);

}  // namespace mve
