// Command-line front end: one subcommand per library operation, JSON on
// stdout, a one-line summary on stderr.
//
// Exit codes: 0 success, 1 invalid input, 2 unsupported verdict,
// 3 resource limit.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mve/entropy.hpp"
#include "mve/error.hpp"
#include "mve/fbz.hpp"
#include "mve/gog.hpp"
#include "mve/growth.hpp"
#include "mve/io.hpp"
#include "mve/raag.hpp"
#include "mve/verdict.hpp"

namespace {

using namespace mve;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUnsupported = 2;
constexpr int kResource = 3;

void emit(const json& j) { std::cout << dump_json(j) << '\n'; }

int emit_verdict(const Verdict& v) {
  emit(verdict_to_json(v));
  std::cerr << to_string(v.status);
  if (v.lower_bound) std::cerr << ", lower bound " << round_significant(*v.lower_bound);
  if (!v.theorem.empty()) std::cerr << " (" << v.theorem << ")";
  std::cerr << '\n';
  return v.status == VerdictStatus::Unsupported ? kUnsupported : kOk;
}

GroupModel parse_model(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "free") {
    int n = 0;
    try {
      n = std::stoi(arg);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "free:N needs an integer rank");
    }
    return FreeModel{n};
  }
  if (kind == "raag") return RaagModel{graph_from_json(read_json_file(arg))};
  if (kind == "fbz") return FbzModel{aut_from_json(read_json_file(arg))};
  if (kind == "tubular") return TubularBlockModel{glu_from_json(read_json_file(arg))};
  throw Error(ErrorCode::ParseError, "model must be free:N, raag:FILE, fbz:FILE or tubular:FILE");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad number '" + item + "' in list");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal volume entropy toolkit for free-by-cyclic groups and RAAGs"};
  app.require_subcommand(1);

  std::string input, second, splitting_path, model_spec, s_list = "1,0.7,0.5", direction = "index";
  int max_power = 6, conj_ball = 1, radius = 6, iters = 2000, restarts = 5;
  double tol = 1e-10, demo_radius = 6.0, bound = 0.0;
  long index = 1, dim = 2;
  std::uint64_t seed = 1;
  std::size_t frontier_cap = kDefaultFrontierCap;
  bool csv = false;

  auto* raag = app.add_subcommand("raag-verdict", "vanishing verdict for a RAAG");
  raag->add_option("graph", input, "graph JSON")->required();

  auto* fbz = app.add_subcommand("fbz-verdict", "vanishing verdict for a free-by-cyclic group");
  fbz->add_option("automorphism", input, "automorphism JSON")->required();
  fbz->add_option("--splitting", splitting_path, "primitive splitting JSON");
  fbz->add_option("--max-power", max_power, "largest power searched")->capture_default_str();
  fbz->add_option("--conj-ball", conj_ball, "conjugator length bound")->capture_default_str();

  auto* make = app.add_subcommand("glu-make", "automorphism from GLU data");
  make->add_option("glu", input, "GLU JSON")->required();

  auto* check = app.add_subcommand("glu-check", "match an automorphism against a splitting");
  check->add_option("automorphism", input, "automorphism JSON")->required();
  check->add_option("splitting", second, "splitting JSON")->required();

  auto* tub = app.add_subcommand("glu-tubularize", "verified tubular graph of groups");
  tub->add_option("glu", input, "GLU JSON")->required();

  auto* reduce = app.add_subcommand("gog-reduce", "collapse until reduced");
  reduce->add_option("gog", input, "graph of groups JSON")->required();

  auto* pres = app.add_subcommand("gog-presentation", "presentation and abelianization");
  pres->add_option("gog", input, "graph of groups JSON")->required();

  auto* shape = app.add_subcommand("gog-verdict", "vanishing verdict from the graph-of-groups shape");
  shape->add_option("gog", input, "graph of groups JSON")->required();

  auto* growth = app.add_subcommand("growth", "ball profile and growth estimates");
  growth->add_option("--model", model_spec, "free:N | raag:FILE | fbz:FILE | tubular:FILE")->required();
  growth->add_option("--radius", radius, "ball radius")->capture_default_str();
  growth->add_flag("--csv", csv, "print the profile as CSV");
  growth->add_option("--frontier-cap", frontier_cap, "element cap")->capture_default_str();

  auto* entropy = app.add_subcommand("entropy", "volume entropy of a metric graph");
  entropy->add_option("graph", input, "metric graph JSON")->required();
  entropy->add_option("--tol", tol, "tolerance on the spectral radius")->capture_default_str();

  auto* optimize = app.add_subcommand("optimize", "minimize entropy over volume-one metrics");
  optimize->add_option("graph", input, "metric graph JSON")->required();
  optimize->add_option("--iters", iters, "simplex steps per restart")->capture_default_str();
  optimize->add_option("--seed", seed, "base seed")->capture_default_str();
  optimize->add_option("--restarts", restarts, "number of restarts")->capture_default_str();

  auto* demo = app.add_subcommand("collapse-demo", "discrete collapsing-metric table");
  demo->add_option("glu", input, "GLU JSON")->required();
  demo->add_option("--s", s_list, "comma-separated fiber weights")->capture_default_str();
  demo->add_option("--radius", demo_radius, "weighted radius")->capture_default_str();
  demo->add_option("--frontier-cap", frontier_cap, "state cap")->capture_default_str();

  auto* prop = app.add_subcommand("bound-propagate", "transfer a lower bound along a degree-n map");
  prop->add_option("--index", index, "index or degree n")->required();
  prop->add_option("--dim", dim, "dimension m")->required();
  prop->add_option("--bound", bound, "known lower bound")->required();
  prop->add_option("--direction", direction, "index | monotone")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*raag) return emit_verdict(raag_verdict(graph_from_json(read_json_file(input))));

    if (*fbz) {
      const FreeAut aut = aut_from_json(read_json_file(input));
      std::optional<PrimitiveSplitting> splitting;
      if (!splitting_path.empty()) splitting = splitting_from_json(read_json_file(splitting_path));
      return emit_verdict(fbz_verdict(aut, splitting, max_power, conj_ball));
    }

    if (*make) {
      const FreeAut aut = make_glu(glu_from_json(read_json_file(input)));
      const GrowthProfile profile = growth_profile(aut, 12);
      emit(aut_to_json(aut));
      std::cerr << "rank " << aut.rank() << ", growth " << to_string(profile.classification) << '\n';
      return kOk;
    }

    if (*check) {
      const FreeAut aut = aut_from_json(read_json_file(input));
      const auto data = check_glu(aut, splitting_from_json(read_json_file(second)));
      json out = {{"match", data.has_value()}};
      if (data) out["glu"] = glu_to_json(*data);
      emit(out);
      std::cerr << (data ? "GLU with respect to the splitting" : "no match") << '\n';
      return kOk;
    }

    if (*tub) {
      const Tubularization t = tubularize(glu_from_json(read_json_file(input)));
      emit(tubularization_to_json(t));
      std::cerr << t.gog.vertices.size() << " Z2 vertices, " << t.gog.edges.size()
                << " Z edges, " << t.presentation.relators.size() << " relators verified\n";
      return kOk;
    }

    if (*reduce) {
      const GraphOfGroups g = gog_from_json(read_json_file(input));
      const GraphOfGroups r = reduce_gog(g);
      emit(gog_to_json(r));
      std::cerr << g.edges.size() - r.edges.size() << " edges collapsed\n";
      return kOk;
    }

    if (*pres) {
      const Presentation p = presentation(gog_from_json(read_json_file(input)));
      const AbelianInvariants ab = abelianization(p);
      emit({{"presentation", presentation_to_json(p)}, {"abelianization", abelian_to_json(ab)}});
      std::cerr << p.generators.size() << " generators, " << p.relators.size() << " relators\n";
      return kOk;
    }

    if (*shape) return emit_verdict(shape_verdict(gog_from_json(read_json_file(input))));

    if (*growth) {
      const GroupModel model = parse_model(model_spec);
      const BallProfile profile = enumerate_ball(model, radius, frontier_cap);
      if (csv) {
        std::cout << profile_to_csv(profile);
      } else {
        json out = {{"profile", profile_to_json(profile)}};
        if (profile.counts.size() >= 3) out["estimates"] = rates_to_json(rate_estimates(profile));
        const auto u = uniform_bound(model);
        out["uniform_bound"] = u ? json(*u) : json(nullptr);
        emit(out);
      }
      std::cerr << "b_" << radius << " = " << profile.counts.back() << '\n';
      return kOk;
    }

    if (*entropy) {
      const auto r = volume_entropy(metric_graph_from_json(read_json_file(input)), tol);
      emit(entropy_to_json(r));
      std::cerr << "h = " << round_significant(r.h) << ", omega = " << round_significant(r.omega) << '\n';
      return kOk;
    }

    if (*optimize) {
      OptimizeOptions options;
      options.iterations = iters;
      options.seed = seed;
      options.restarts = restarts;
      const auto r = optimize_metric(metric_graph_from_json(read_json_file(input)), options);
      emit(optimize_to_json(r));
      std::cerr << "omega* = " << round_significant(r.omega_star) << '\n';
      return kOk;
    }

    if (*demo) {
      const auto s_values = parse_list(s_list);
      const auto d = collapsing_demo(glu_from_json(read_json_file(input)), s_values, demo_radius,
                                     frontier_cap);
      emit(collapse_to_json(d));
      for (const auto& row : d.rows)
        std::cerr << "s = " << row.s << ": h = " << round_significant(row.h, 6)
                  << ", omega = " << round_significant(row.omega, 6) << '\n';
      return kOk;
    }

    if (*prop) {
      BoundDirection dir;
      if (direction == "index") dir = BoundDirection::Index;
      else if (direction == "monotone") dir = BoundDirection::Monotone;
      else throw Error(ErrorCode::ParseError, "direction must be index or monotone");
      const double b = propagate_bound(index, dim, bound, dir);
      emit({{"bound", b}, {"index", index}, {"dim", dim}, {"direction", direction}});
      std::cerr << "bound " << round_significant(b) << '\n';
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::ResourceLimit ? kResource : kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
