#include "mve/growth.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "mve/error.hpp"

namespace mve {
namespace {

struct LetterVectorHash {
  std::size_t operator()(const std::vector<Letter>& w) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Letter x : w) {
      h ^= static_cast<std::size_t>(static_cast<unsigned>(x));
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

// Breadth-first search over canonical forms; step(g, i) multiplies g by the
// i-th generator or inverse.
template <class Elem, class Hash, class Step>
BallProfile bfs(Elem identity, int steps, Step step, int radius, std::size_t cap) {
  if (radius < 0) throw Error(ErrorCode::InvalidArgument, "radius must be non-negative");
  BallProfile out;
  std::unordered_set<Elem, Hash> seen{identity};
  std::vector<Elem> frontier{identity};
  out.radii.push_back(0);
  out.counts.push_back(1);
  for (int t = 1; t <= radius; ++t) {
    std::vector<Elem> next;
    for (const Elem& g : frontier) {
      for (int i = 0; i < steps; ++i) {
        Elem h = step(g, i);
        if (seen.insert(h).second) next.push_back(std::move(h));
      }
      if (seen.size() > cap)
        throw Error(ErrorCode::ResourceLimit,
                    "ball exceeds " + std::to_string(cap) + " elements at radius " + std::to_string(t));
    }
    frontier = std::move(next);
    out.radii.push_back(t);
    out.counts.push_back(seen.size());
  }
  return out;
}

std::vector<Letter> signed_letters(int n) {
  std::vector<Letter> out;
  for (int i = 1; i <= n; ++i) {
    out.push_back(i);
    out.push_back(-i);
  }
  return out;
}

BallProfile fbz_ball(const FreeByCyclic& group, const std::vector<FbzElement>& gens, int radius,
                     std::size_t cap) {
  std::vector<FbzElement> steps;
  for (const auto& g : gens) {
    steps.push_back(g);
    steps.push_back(group.inverse(g));
  }
  return bfs<FbzElement, FbzElementHash>(
      group.identity(), static_cast<int>(steps.size()),
      [&](const FbzElement& g, int i) { return group.multiply(g, steps[i]); }, radius, cap);
}

std::vector<FbzElement> standard_fbz_generators(const FreeByCyclic& group) {
  std::vector<FbzElement> gens;
  for (int i = 1; i <= group.rank(); ++i) gens.push_back(group.basis(i));
  gens.push_back(group.stable());
  return gens;
}

}  // namespace

BallProfile enumerate_ball(const GroupModel& model, int radius, std::size_t cap) {
  if (const auto* m = std::get_if<FreeModel>(&model)) {
    if (m->rank < 1) throw Error(ErrorCode::InvalidArgument, "free rank must be positive");
    const auto letters = signed_letters(m->rank);
    return bfs<Word, WordHash>(
        Word{}, static_cast<int>(letters.size()),
        [&](const Word& g, int i) { return g * Word{letters[i]}; }, radius, cap);
  }
  if (const auto* m = std::get_if<RaagModel>(&model)) {
    const auto letters = signed_letters(m->graph.size());
    return bfs<RaagWord, LetterVectorHash>(
        RaagWord{}, static_cast<int>(letters.size()),
        [&](const RaagWord& g, int i) {
          RaagWord w = g;
          w.push_back(letters[i]);
          return raag_normal_form(m->graph, w);
        },
        radius, cap);
  }
  if (const auto* m = std::get_if<FbzModel>(&model)) {
    const FreeByCyclic group(m->aut);
    return fbz_ball(group, standard_fbz_generators(group), radius, cap);
  }
  const auto& data = std::get<TubularBlockModel>(model).data;
  const FreeByCyclic group(make_glu(data));
  return fbz_ball(group, tubularize(data).generator_images, radius, cap);
}

int generator_count(const GroupModel& model) {
  if (const auto* m = std::get_if<FreeModel>(&model)) return m->rank;
  if (const auto* m = std::get_if<RaagModel>(&model)) return m->graph.size();
  if (const auto* m = std::get_if<FbzModel>(&model)) return m->aut.rank() + 1;
  const auto& data = std::get<TubularBlockModel>(model).data;
  return 2 * static_cast<int>(data.splitting.vertices.size()) +
         static_cast<int>(data.splitting.plus_edges.size());
}

RateEstimates rate_estimates(const BallProfile& profile) {
  const auto& b = profile.counts;
  if (b.size() < 3) throw Error(ErrorCode::DegenerateProfile, "need counts up to radius 2 at least");
  RateEstimates out;
  out.delta.resize(b.size());
  out.nu.resize(b.size());
  for (std::size_t t = 1; t < b.size(); ++t) {
    out.delta[t] = std::log(static_cast<double>(b[t]) / static_cast<double>(b[t - 1]));
    if (t >= 2 && b[t] > 1) {
      out.nu[t] = std::log(std::log(static_cast<double>(b[t]))) / std::log(static_cast<double>(t));
    }
  }
  return out;
}

std::optional<double> uniform_bound(const GroupModel& model) {
  if (std::holds_alternative<FbzModel>(model) || std::holds_alternative<TubularBlockModel>(model))
    return free_by_cyclic_uniform_growth();
  if (const auto* m = std::get_if<FreeModel>(&model)) {
    if (m->rank >= 2) return raag_uniform_growth();
    return std::nullopt;
  }
  const auto& graph = std::get<RaagModel>(model).graph;
  for (int u = 0; u < graph.size(); ++u)
    for (int v = u + 1; v < graph.size(); ++v)
      if (!graph.adjacent(u, v)) return raag_uniform_growth();
  return std::nullopt;
}

namespace {

struct State {
  FbzElement g;
  int vertex = 0;
  friend bool operator==(const State&, const State&) = default;
};

struct StateHash {
  std::size_t operator()(const State& s) const noexcept {
    return FbzElementHash{}(s.g) * 131 + static_cast<std::size_t>(s.vertex);
  }
};

struct Move {
  FbzElement step;  // identity for a crossing
  int target = 0;
  double cost = 0.0;
};

}  // namespace

BallProfile weighted_ball(const GluData& data, const CollapseWeights& weights, double radius,
                          double resolution, std::size_t cap) {
  if (!(resolution > 0.0) || !(radius >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "radius and resolution must be positive");
  if (weights.fiber < 0 || weights.edge < 0 || weights.crossing < 0)
    throw Error(ErrorCode::InvalidArgument, "weights must be non-negative");
  const Tubularization tub = tubularize(data);
  const FreeByCyclic group(make_glu(data));
  const int nv = static_cast<int>(tub.gog.vertices.size());
  const int ntree = static_cast<int>(tub.tree_edges.size());

  // Generator images are ordered a_v, u_v per vertex, then x_e per plus edge.
  std::vector<std::vector<Move>> moves(nv);
  for (int v = 0; v < nv; ++v) {
    for (int j = 0; j < 2; ++j) {
      const FbzElement& g = tub.generator_images[2 * v + j];
      moves[v].push_back({g, v, weights.fiber});
      moves[v].push_back({group.inverse(g), v, weights.fiber});
    }
  }
  for (int i = 0; i < static_cast<int>(tub.gog.edges.size()); ++i) {
    const auto& e = tub.gog.edges[i];
    if (i < ntree) {
      moves[e.from].push_back({group.identity(), e.to, weights.crossing});
      moves[e.to].push_back({group.identity(), e.from, weights.crossing});
    } else {
      // x_e runs from the `to` side (o) to the `from` side (tau).
      const FbzElement& x = tub.generator_images[2 * nv + (i - ntree)];
      moves[e.to].push_back({x, e.from, weights.edge});
      moves[e.from].push_back({group.inverse(x), e.to, weights.edge});
    }
  }

  constexpr double kEps = 1e-9;
  std::unordered_map<State, double, StateHash> dist;
  std::unordered_set<FbzElement, FbzElementHash> settled;
  std::vector<double> element_dist;
  using Entry = std::pair<double, State>;
  auto later = [](const Entry& a, const Entry& b) { return a.first > b.first; };
  std::priority_queue<Entry, std::vector<Entry>, decltype(later)> queue(later);
  for (int v = 0; v < nv; ++v) {
    State s{group.identity(), v};
    dist[s] = 0.0;
    queue.push({0.0, s});
  }
  while (!queue.empty()) {
    auto [d, s] = queue.top();
    queue.pop();
    if (d > radius + kEps) break;
    if (d > dist[s]) continue;
    if (settled.insert(s.g).second) element_dist.push_back(d);
    for (const Move& m : moves[s.vertex]) {
      const double nd = d + m.cost;
      if (nd > radius + kEps) continue;
      State t{m.step == group.identity() ? s.g : group.multiply(s.g, m.step), m.target};
      auto [it, fresh] = dist.try_emplace(t, nd);
      if (!fresh) {
        if (nd >= it->second) continue;
        it->second = nd;
      }
      if (dist.size() > cap)
        throw Error(ErrorCode::ResourceLimit,
                    "weighted ball exceeds " + std::to_string(cap) + " states");
      queue.push({nd, std::move(t)});
    }
  }

  BallProfile out;
  out.weighted = true;
  out.weight_resolution = resolution;
  std::sort(element_dist.begin(), element_dist.end());
  const auto steps = static_cast<long>(std::floor(radius / resolution + kEps));
  std::size_t idx = 0;
  for (long k = 0; k <= steps; ++k) {
    const double r = static_cast<double>(k) * resolution;
    while (idx < element_dist.size() && element_dist[idx] <= r + kEps) ++idx;
    out.radii.push_back(r);
    out.counts.push_back(idx);
  }
  return out;
}

CollapseDemo collapsing_demo(const GluData& data, std::span<const double> s_values, double radius,
                             std::size_t cap) {
  if (radius < 3.0) throw Error(ErrorCode::InvalidArgument, "radius must be at least 3");
  for (double s : s_values)
    if (!(s > 0.0 && s <= 1.0)) throw Error(ErrorCode::InvalidArgument, "s must lie in (0, 1]");
  validate(data);

  CollapseDemo demo;
  demo.tori = static_cast<int>(data.splitting.vertices.size());
  demo.annuli = static_cast<int>(data.splitting.tree_edges.size() + data.splitting.plus_edges.size());
  demo.cells = demo.tori + demo.annuli;
  demo.unweighted = enumerate_ball(TubularBlockModel{data}, 6, cap);
  demo.polynomial = !exceeds_cubic_envelope(demo.unweighted.counts);

  constexpr double kResolution = 0.01;
  for (double s : s_values) {
    const BallProfile p = weighted_ball(data, {s, 1.0, 1.0}, radius, kResolution, cap);
    CollapseRow row;
    row.s = s;
    row.elements = p.counts.back();
    if (!demo.polynomial) {
      // Least-squares slope of log N(r) over the upper half of the radii.
      double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
      for (std::size_t k = 0; k < p.radii.size(); ++k) {
        if (p.radii[k] < radius / 2 - 1e-9) continue;
        const double x = p.radii[k], y = std::log(static_cast<double>(p.counts[k]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        n += 1;
      }
      row.h = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    // Under f*(g_P) + s^2 g_X the tori collapse in both directions and the
    // annuli in one.
    row.volume = s * demo.annuli + s * s * demo.tori;
    row.omega = row.h * std::sqrt(row.volume);
    row.omega_proxy = row.h * std::sqrt(s * demo.cells);
    demo.rows.push_back(row);
  }
  return demo;
}

}  // namespace mve
