#pragma once

// Right-angled Artin groups A_Gamma on simplicial graphs.

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mve/gog.hpp"
#include "mve/verdict.hpp"
#include "mve/words.hpp"

namespace mve {

class SimplicialGraph {
 public:
  SimplicialGraph() = default;
  // Throws InvalidGraph on loops, repeated edges, duplicate or unknown labels.
  SimplicialGraph(std::vector<std::string> labels,
                  const std::vector<std::pair<std::string, std::string>>& edges);

  int size() const noexcept { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }
  // 0-based vertex indices.
  bool adjacent(int u, int v) const { return adjacency_[u * size() + v] != 0; }
  // Letters x, y commute in A_Gamma: same generator or adjacent vertices.
  bool commute(Letter x, Letter y) const {
    const int i = generator_index(x) - 1, j = generator_index(y) - 1;
    return i == j || adjacency_[i * size() + j] != 0;
  }
  const std::vector<int>& neighbours(int v) const { return neighbours_[v]; }
  int index_of(std::string_view label) const;  // throws UnknownVertex

  // Same graph with vertices renamed / reordered: new vertex i is old perm[i].
  SimplicialGraph permuted(std::span<const int> perm) const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<char> adjacency_;
  std::vector<std::vector<int>> neighbours_;
};

// A word in A_Gamma: letters index vertices (1-based), sign marks inverse.
using RaagWord = std::vector<Letter>;

// Shortlex-least geodesic representative (letter order a < a^-1 < b < ...
// following vertex declaration order).  Throws UnknownVertex.
RaagWord raag_normal_form(const SimplicialGraph& graph, std::span<const Letter> letters);

RaagWord parse_raag_word(const SimplicialGraph& graph, std::string_view text);
std::string format_raag_word(const SimplicialGraph& graph, std::span<const Letter> w);

enum class TwoGeneratorClass { Abelian, FreeOfRankTwo };

std::string_view to_string(TwoGeneratorClass c);

// Two elements of a RAAG generate Z^k or F_2.  Throws TrivialInput.
TwoGeneratorClass two_generator_class(const SimplicialGraph& graph, std::span<const Letter> g,
                                      std::span<const Letter> h);

// Structural queries.
bool has_triangle(const SimplicialGraph& graph, std::vector<int>* witness = nullptr);
bool is_forest(const SimplicialGraph& graph);
// Simple cycle as a vertex sequence, empty if the graph is a forest.
std::vector<int> find_cycle(const SimplicialGraph& graph);
// Edge sets (indices into edges()) of the biconnected components.
std::vector<std::vector<int>> biconnected_components(const SimplicialGraph& graph);
std::vector<int> spanning_forest(const SimplicialGraph& graph);

Verdict raag_verdict(const SimplicialGraph& graph);

// Splitting of A_Gamma for a forest Gamma: subdivide every edge, put Z on
// original vertices and Z^2 on midpoints, collapse one isomorphic edge per
// original vertex, and join components by trivial edges.
GraphOfGroups forest_splitting(const SimplicialGraph& graph);

}  // namespace mve
