#pragma once

// Volume entropy of finite metric graphs.  The entropy h is the unique s > 0
// at which the non-backtracking transfer matrix
//   M(s)[e][f] = exp(-s l_f)   for tau(e) = o(f), f != e-bar
// has spectral radius 1.

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace mve {

template <class Scalar>
struct BasicMetricGraph {
  struct Edge {
    int from = 0;
    int to = 0;
    Scalar length = Scalar(1);
  };
  std::vector<std::string> vertices;
  std::vector<Edge> edges;

  Scalar volume() const {
    Scalar v(0);
    for (const auto& e : edges) v += e.length;
    return v;
  }
};

using MetricGraph = BasicMetricGraph<double>;

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Structural checks shared by every scalar type.  Throws InvalidGraph
// (bad endpoints, disconnected), NotCoreGraph (a vertex of degree <= 1) and
// DegenerateRank (first Betti number < 2).
void validate_core_graph(int vertex_count, const std::vector<std::pair<int, int>>& edges);
[[noreturn]] void throw_invalid_length();

template <class Scalar>
void validate(const BasicMetricGraph<Scalar>& g);

// Directed edge 2i runs from -> to along edge i, 2i+1 runs back.
template <class Scalar>
DenseMatrix<Scalar> transfer_matrix(const BasicMetricGraph<Scalar>& g, Scalar s) {
  const int m = static_cast<int>(g.edges.size());
  auto origin = [&](int d) { return d % 2 == 0 ? g.edges[d / 2].from : g.edges[d / 2].to; };
  auto terminus = [&](int d) { return d % 2 == 0 ? g.edges[d / 2].to : g.edges[d / 2].from; };
  DenseMatrix<Scalar> M = DenseMatrix<Scalar>::Zero(2 * m, 2 * m);
  for (int e = 0; e < 2 * m; ++e) {
    for (int f = 0; f < 2 * m; ++f) {
      if (terminus(e) != origin(f) || f == (e ^ 1)) continue;
      using std::exp;
      M(e, f) = exp(-s * g.edges[f / 2].length);
    }
  }
  return M;
}

template <class Scalar>
struct SpectralEstimate {
  Scalar rho = Scalar(0);
  Scalar lower = Scalar(0);  // Collatz-Wielandt bounds on rho
  Scalar upper = Scalar(0);
  int iterations = 0;
};

// Perron root of an irreducible non-negative matrix.  Power iteration runs on
// I + M, which is primitive even when M is periodic, and stops once the
// Collatz-Wielandt bounds are within tol / 10.  x is the starting vector
// (ones if empty) and receives the final iterate.
template <class Scalar>
SpectralEstimate<Scalar> perron_root(const DenseMatrix<Scalar>& M, Scalar tol,
                                     DenseVector<Scalar>& x, int max_iterations = 10000) {
  const auto n = M.rows();
  if (x.size() != n || !(x.minCoeff() > Scalar(0))) x = DenseVector<Scalar>::Ones(n);
  SpectralEstimate<Scalar> est;
  for (int it = 1; it <= max_iterations; ++it) {
    DenseVector<Scalar> y = M * x + x;
    const DenseVector<Scalar> ratio = y.cwiseQuotient(x);
    est.lower = ratio.minCoeff() - Scalar(1);
    est.upper = ratio.maxCoeff() - Scalar(1);
    est.iterations = it;
    x = y / y.sum();
    if (est.upper - est.lower < tol / Scalar(10)) break;
  }
  est.rho = (est.lower + est.upper) / Scalar(2);
  return est;
}

template <class Scalar>
struct EntropyResult {
  Scalar h = Scalar(0);
  Scalar vol = Scalar(0);
  Scalar omega = Scalar(0);  // h * vol
  int iterations = 0;        // bisection steps
  Scalar residual = Scalar(0);  // |rho(M(h)) - 1|
};

template <class Scalar>
EntropyResult<Scalar> volume_entropy(const BasicMetricGraph<Scalar>& g, Scalar tol = Scalar(1e-10)) {
  validate(g);
  DenseVector<Scalar> x;
  auto rho = [&](Scalar s) { return perron_root<Scalar>(transfer_matrix(g, s), tol, x).rho; };

  Scalar lo(0), hi(1);
  while (rho(hi) >= Scalar(1)) {
    lo = hi;
    hi *= Scalar(2);
  }
  EntropyResult<Scalar> out;
  Scalar mid = (lo + hi) / Scalar(2);
  for (int it = 1; it <= 200; ++it) {
    mid = (lo + hi) / Scalar(2);
    const Scalar r = rho(mid);
    out.iterations = it;
    out.residual = r > Scalar(1) ? r - Scalar(1) : Scalar(1) - r;
    if (out.residual <= tol) break;
    (r > Scalar(1) ? lo : hi) = mid;
    if (!(hi - lo > Scalar(0))) break;
  }
  out.h = mid;
  out.vol = g.volume();
  out.omega = out.h * out.vol;
  return out;
}

struct OptimizeOptions {
  int iterations = 2000;  // Nelder-Mead steps per restart
  std::uint64_t seed = 1;
  int restarts = 5;
  double tol = 1e-10;     // entropy tolerance per evaluation
};

struct OptimizeResult {
  std::vector<double> lengths;  // volume 1
  double omega_star = 0.0;
  int evaluations = 0;
  std::vector<double> restart_omegas;
};

// Minimizes h over lengths of volume 1 parametrized by softmax(theta) with
// theta_0 = 0.  Input lengths are ignored.
OptimizeResult optimize_metric(const MetricGraph& graph, const OptimizeOptions& options = {});

// --- template definitions ---

template <class Scalar>
void validate(const BasicMetricGraph<Scalar>& g) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.edges.size());
  for (const auto& e : g.edges) {
    if (!(e.length > Scalar(0))) throw_invalid_length();
    edges.emplace_back(e.from, e.to);
  }
  validate_core_graph(static_cast<int>(g.vertices.size()), edges);
}

}  // namespace mve
