// Acceptance runner: one PASS/FAIL line per criterion.  Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "mve/entropy.hpp"
#include "mve/error.hpp"
#include "mve/fbz.hpp"
#include "mve/gog.hpp"
#include "mve/growth.hpp"
#include "mve/raag.hpp"
#include "oracles.hpp"

using namespace mve;

namespace {

const double kLog2 = std::log(2.0);
const double kLog3 = std::log(3.0);

// Collects failures and a short summary for one criterion.
struct Report {
  bool ok = true;
  std::ostringstream detail;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " FAILED: " << what << ";";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Equal to `digits` significant digits.
bool same_digits(double x, double y, int digits) {
  char a[64], b[64];
  std::snprintf(a, sizeof a, "%.*e", digits - 1, x);
  std::snprintf(b, sizeof b, "%.*e", digits - 1, y);
  return std::string(a) == b;
}

MetricGraph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  MetricGraph g;
  for (int v = 0; v < n; ++v) g.vertices.push_back("v" + std::to_string(v));
  for (auto [a, b] : edges) g.edges.push_back({a, b, 1.0});
  return g;
}

FreeAut fibonacci() { return FreeAut(2, {Word{2}, Word{1, 2}}, {Word{2, -1}, Word{1}}); }

void entropy_formula(Report& r) {
  struct Case {
    const char* name;
    MetricGraph g;
    int rank;
  };
  const std::vector<Case> cases{{"theta", make_graph(2, {{0, 1}, {0, 1}, {0, 1}}), 2},
                                {"K4", make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}), 3}};
  for (const auto& c : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const double target = (3.0 * c.rank - 3.0) * kLog2;
    const auto e = volume_entropy(c.g, 1e-10);
    r.expect(std::abs(e.h - kLog2) < 1e-9, std::string(c.name) + " h");
    r.expect(std::abs(e.omega - target) < 1e-8, std::string(c.name) + " omega");
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      OptimizeOptions options;
      options.seed = seed;
      options.restarts = 1;
      worst = std::max(worst, std::abs(optimize_metric(c.g, options).omega_star - target));
    }
    r.expect(worst < 1e-3, std::string(c.name) + " optimizer");
    const double dt = seconds_since(t0);
    r.expect(dt < 10.0, std::string(c.name) + " runtime");
    r.detail << ' ' << c.name << ": |h-log2|=" << std::abs(e.h - kLog2) << " |omega-target|="
             << std::abs(e.omega - target) << " worst optimizer gap=" << worst << " (" << dt << " s);";
  }
}

void strictness(Report& r) {
  const auto e = volume_entropy(make_graph(1, {{0, 0}, {0, 0}}), 1e-10);
  r.expect(std::abs(e.omega - 2 * kLog3) < 1e-8, "rose omega");
  r.expect(e.omega > 3 * kLog2, "strict inequality");
  r.detail << " rose-2 omega=" << e.omega << " vs 3 log 2=" << 3 * kLog2;
}

void growth_oracles(Report& r) {
  const auto t0 = std::chrono::steady_clock::now();
  const BallProfile f2 = enumerate_ball(FreeModel{2}, 8);
  std::size_t p = 1;
  for (int t = 0; t <= 8; ++t, p *= 3) r.expect(f2.counts[t] == 2 * p - 1, "Free(2) b_" + std::to_string(t));
  const BallProfile z2 = enumerate_ball(RaagModel{SimplicialGraph({"a", "b"}, {{"a", "b"}})}, 30);
  for (std::size_t t = 0; t <= 30; ++t) r.expect(z2.counts[t] == 2 * t * t + 2 * t + 1, "Z2 b_" + std::to_string(t));
  const double delta8 = *rate_estimates(f2).delta[8];
  const auto nu = rate_estimates(z2).nu;
  r.expect(std::abs(delta8 - kLog3) < 1e-3, "delta(8)");
  r.expect(*nu[30] < *nu[10], "nu(30) < nu(10)");
  const double dt = seconds_since(t0);
  r.expect(dt < 30.0, "runtime");
  r.detail << " delta(8)=" << delta8 << " nu(10)=" << *nu[10] << " nu(30)=" << *nu[30] << " (" << dt << " s)";
}

void verdict_table(Report& r) {
  const SimplicialGraph p4({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}});
  const SimplicialGraph c4({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}});
  const SimplicialGraph k3({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
  const Verdict vp = raag_verdict(p4), vc = raag_verdict(c4), vk = raag_verdict(k3);
  r.expect(vp.status == VerdictStatus::Vanishing && vp.lower_bound == 0.0, "P4");
  r.expect(vc.status == VerdictStatus::NonVanishing && vc.lower_bound &&
               same_digits(*vc.lower_bound, 5.493e-7, 4) && same_digits(*vc.lower_bound, kLog3 / 2e6, 12),
           "C4");
  r.expect(vk.status == VerdictStatus::Unsupported, "K3");

  const GluData d = gen::example_glu(1, 1, 1);
  const Verdict vg = fbz_verdict(make_glu(d), d.splitting, 6, 1);
  r.expect(vg.status == VerdictStatus::Vanishing && vg.lower_bound == 0.0 && vg.certificate.contains("glu"),
           "Example 5.3");
  const Verdict vf = fbz_verdict(fibonacci(), std::nullopt, 6, 1);
  r.expect(vf.status == VerdictStatus::NonVanishingHeuristic && vf.lower_bound &&
               same_digits(*vf.lower_bound, 9.155e-8, 4) && same_digits(*vf.lower_bound, kLog3 / 12e6, 12),
           "a->b, b->ab");
  r.detail << " P4 " << to_string(vp.status) << "; C4 " << to_string(vc.status) << ' ' << *vc.lower_bound << "; K3 "
           << to_string(vk.status) << "; GLU " << to_string(vg.status) << "; a->b,b->ab " << to_string(vf.status)
           << ' ' << vf.lower_bound.value_or(0.0);
}

void tubularization(Report& r) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  int passed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const GluData d = gen::random_glu(rng, 5);
    try {
      const Tubularization t = tubularize(d);
      bool ok = shape_verdict(t.gog).status == VerdictStatus::Vanishing;
      for (const auto& v : t.gog.vertices) ok = ok && v.kind == GroupKind::Z2;
      for (const auto& e : t.gog.edges) ok = ok && e.kind == GroupKind::Z;
      ok = ok && abelianization(t.presentation) == abelianization(native_presentation(make_glu(d)));
      if (ok) ++passed;
    } catch (const Error& e) {
      r.detail << " trial " << trial << ": " << e.what() << ";";
    }
  }
  r.expect(passed == 100, "all 100 instances");
  const double dt = seconds_since(t0);
  r.expect(dt < 60.0, "runtime");
  r.detail << ' ' << passed << "/100 sound (" << dt << " s)";
}

void normal_forms(Report& r) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(99);
  std::vector<FreeAut> auts{fibonacci(), make_glu(gen::example_glu(1, 1, 1)), FreeAut(1, {Word{-1}}, {Word{-1}})};
  for (int i = 0; i < 5; ++i) auts.push_back(oracle::random_aut(rng, 2 + i % 2, 5));
  int agree = 0;
  const int pairs = 10000;
  for (int trial = 0; trial < pairs; ++trial) {
    const FreeAut& aut = auts[trial % auts.size()];
    const FreeByCyclic g(aut);
    auto x = oracle::random_mixed(rng, aut.rank(), static_cast<int>(rng() % 7));
    const auto y = oracle::random_mixed(rng, aut.rank(), static_cast<int>(rng() % 7));
    const FbzElement product = g.multiply(fbz_normalize(g, x), fbz_normalize(g, y));
    x.insert(x.end(), y.begin(), y.end());
    if (oracle::to_value(product) == oracle::rewrite_fbz(aut, x, rng)) ++agree;
  }
  r.expect(agree == pairs, "fbz products");
  r.detail << " fbz: " << agree << '/' << pairs << " products agree;";

  std::uint64_t words = 0, mismatches = 0;
  int graphs = 0;
  for (int n = 1; n <= 4; ++n) {
    for (const auto& graph : oracle::graphs_up_to_isomorphism(n)) {
      const auto check = oracle::check_normal_forms(graph, 8);
      words += check.words;
      mismatches += check.mismatches;
      ++graphs;
      if (check.mismatches) r.detail << " mismatch on " << check.first_mismatch << ";";
    }
  }
  r.expect(mismatches == 0, "raag normal forms");
  r.detail << " raag: " << words << " words over " << graphs << " graphs, " << mismatches << " mismatches ("
           << seconds_since(t0) << " s)";
}

void collapse_check(Report& r) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> s{1.0, 0.7, 0.5};
  const GluData pair{{{"v1", "v2"}, {{"e1", 0, 1}}, {}, 0}, {0}, {}, {}};
  const CollapseDemo demo = collapsing_demo(pair, s, 6.0);
  bool decreasing = true;
  for (std::size_t i = 1; i < demo.rows.size(); ++i) decreasing = decreasing && demo.rows[i].omega < demo.rows[i - 1].omega;
  r.expect(demo.rows.size() == 3 && decreasing, "omega strictly decreasing");
  for (const auto& row : demo.rows)
    r.detail << " s=" << row.s << ": h=" << row.h << " omega=" << row.omega << " (proxy " << row.omega_proxy << ");";

  const GluData single{{{"v"}, {}, {}, 0}, {}, {}, {}};
  const CollapseDemo flat = collapsing_demo(single, s, 6.0);
  bool zero = flat.rows.size() == 3;
  for (const auto& row : flat.rows) zero = zero && row.h == 0.0;
  r.expect(zero, "single vertex h = 0");
  const double dt = seconds_since(t0);
  r.expect(dt < 60.0, "runtime");
  r.detail << " single vertex h=0: " << (zero ? "yes" : "no") << " (" << dt << " s)";
}

void invariances(Report& r) {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const MetricGraph g = gen::random_core(rng);
    const double base = volume_entropy(g).omega;
    MetricGraph scaled = g;
    const double c = std::uniform_real_distribution<double>(0.2, 5.0)(rng);
    for (auto& e : scaled.edges) e.length *= c;
    worst = std::max(worst, std::abs(volume_entropy(scaled).omega - base));
    worst = std::max(worst, std::abs(volume_entropy(gen::subdivide(g, rng() % g.edges.size())).omega - base));
  }
  r.expect(worst < 1e-8, "omega invariance");
  int preserved = 0, collapses = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const GraphOfGroups g = gen::random_gog(rng);
    const GraphOfGroups red = reduce_gog(g);
    collapses += static_cast<int>(g.edges.size() - red.edges.size());
    if (euler_characteristic(red) == euler_characteristic(g) &&
        abelianization(presentation(red)) == abelianization(presentation(g)))
      ++preserved;
  }
  r.expect(preserved == 50, "reduce_gog invariants");
  r.detail << " worst omega drift=" << worst << "; reduce_gog preserved invariants on " << preserved
           << "/50 graphs (" << collapses << " collapses)";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Report&)>>> criteria{
      {"entropy formula", entropy_formula},      {"strictness", strictness},
      {"growth oracles", growth_oracles},        {"verdict table", verdict_table},
      {"tubularization soundness", tubularization}, {"normal-form oracles", normal_forms},
      {"collapse demonstration", collapse_check},     {"scale/structure invariances", invariances}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Report r;
    r.detail.precision(6);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(r);
    } catch (const std::exception& e) {
      r.ok = false;
      r.detail << " exception: " << e.what();
    }
    if (!r.ok) ++failures;
    std::printf("%s %zu. %s (%.2f s):%s\n", r.ok ? "PASS" : "FAIL", i + 1, criteria[i].first,
                seconds_since(t0), r.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures;
}
