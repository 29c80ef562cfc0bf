#include "mve/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "mve/error.hpp"

namespace mve {

void throw_invalid_length() {
  throw Error(ErrorCode::InvalidGraph, "edge lengths must be positive");
}

void validate_core_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 1) throw Error(ErrorCode::InvalidGraph, "graph has no vertices");
  std::vector<int> degree(n, 0);
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int components = n;
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw Error(ErrorCode::InvalidGraph, "edge endpoint out of range");
    ++degree[u];
    ++degree[v];
    const int a = find(u), b = find(v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  if (components != 1) throw Error(ErrorCode::InvalidGraph, "graph is disconnected");
  for (int v = 0; v < n; ++v) {
    if (degree[v] <= 1)
      throw Error(ErrorCode::NotCoreGraph, "vertex " + std::to_string(v) + " has degree " +
                                               std::to_string(degree[v]));
  }
  const long betti = static_cast<long>(edges.size()) - n + 1;
  if (betti < 2) throw Error(ErrorCode::DegenerateRank, "first Betti number " + std::to_string(betti));
}

namespace {

std::vector<double> softmax_lengths(const std::vector<double>& theta) {
  std::vector<double> z(theta.size() + 1, 0.0);
  std::copy(theta.begin(), theta.end(), z.begin() + 1);
  const double top = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) sum += v = std::exp(v - top);
  for (double& v : z) v /= sum;
  return z;
}

struct Vertex {
  std::vector<double> x;
  double f = 0.0;
};

}  // namespace

OptimizeResult optimize_metric(const MetricGraph& graph, const OptimizeOptions& options) {
  validate(graph);
  if (options.restarts < 1 || options.iterations < 1)
    throw Error(ErrorCode::InvalidArgument, "restarts and iterations must be positive");
  const int d = static_cast<int>(graph.edges.size()) - 1;
  MetricGraph work = graph;
  OptimizeResult out;
  out.omega_star = std::numeric_limits<double>::infinity();

  auto objective = [&](const std::vector<double>& theta) {
    const auto lengths = softmax_lengths(theta);
    for (std::size_t i = 0; i < lengths.size(); ++i) work.edges[i].length = lengths[i];
    ++out.evaluations;
    return volume_entropy(work, options.tol).omega;
  };

  for (int restart = 0; restart < options.restarts; ++restart) {
    std::mt19937_64 rng(options.seed + static_cast<std::uint64_t>(restart));
    std::uniform_real_distribution<double> start(-0.5, 0.5);
    std::vector<Vertex> simplex(d + 1);
    simplex[0].x.resize(d);
    for (double& c : simplex[0].x) c = start(rng);
    for (int i = 1; i <= d; ++i) {
      simplex[i].x = simplex[0].x;
      simplex[i].x[i - 1] += 0.5;
    }
    for (auto& v : simplex) v.f = objective(v.x);

    auto blend = [&](const std::vector<double>& a, const std::vector<double>& b, double t) {
      std::vector<double> r(d);
      for (int i = 0; i < d; ++i) r[i] = a[i] + t * (b[i] - a[i]);
      return r;
    };
    for (int it = 0; it < options.iterations; ++it) {
      std::sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
      if (simplex.back().f - simplex.front().f < 1e-13) break;
      std::vector<double> centroid(d, 0.0);
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) centroid[i] += simplex[j].x[i] / d;
      Vertex& worst = simplex.back();
      Vertex reflected{blend(centroid, worst.x, -1.0), 0.0};
      reflected.f = objective(reflected.x);
      if (reflected.f < simplex.front().f) {
        Vertex expanded{blend(centroid, worst.x, -2.0), 0.0};
        expanded.f = objective(expanded.x);
        worst = expanded.f < reflected.f ? expanded : reflected;
      } else if (reflected.f < simplex[d - 1].f) {
        worst = reflected;
      } else {
        const bool outside = reflected.f < worst.f;
        Vertex contracted{blend(centroid, outside ? reflected.x : worst.x, 0.5), 0.0};
        contracted.f = objective(contracted.x);
        if (contracted.f < (outside ? reflected.f : worst.f)) {
          worst = contracted;
        } else {
          for (int j = 1; j <= d; ++j) {
            simplex[j].x = blend(simplex[0].x, simplex[j].x, 0.5);
            simplex[j].f = objective(simplex[j].x);
          }
        }
      }
    }
    const auto best = std::min_element(simplex.begin(), simplex.end(),
                                       [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    out.restart_omegas.push_back(best->f);
    if (best->f < out.omega_star) {
      out.omega_star = best->f;
      out.lengths = softmax_lengths(best->x);
    }
  }
  return out;
}

}  // namespace mve
