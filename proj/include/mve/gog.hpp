#pragma once

// Graphs of groups whose vertex groups are 1, Z, Z^2 or BS(1,-1) and whose
// edge groups are 1 or Z.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mve/verdict.hpp"
#include "mve/words.hpp"

namespace mve {

enum class GroupKind { Trivial, Z, Z2, BS11 };

std::string_view to_string(GroupKind k);
GroupKind parse_group_kind(std::string_view s);

// Image of the edge-group generator.  Meaning depends on the target kind:
//   Z     x            (y = 0)
//   Z2    (x, y)       in the basis (a, b)
//   BS11  a^x t^y      normal form in <a, t | t a t^-1 a>
// Trivial edges carry (0, 0).
struct Injection {
  long x = 0;
  long y = 0;
  friend bool operator==(const Injection&, const Injection&) = default;
};

struct GogVertex {
  std::string id;
  GroupKind kind = GroupKind::Z;
  friend bool operator==(const GogVertex&, const GogVertex&) = default;
};

// An edge pair {e, e-bar}; the stored orientation runs from -> to, and
// inj_from / inj_to are h_e and h_{e-bar}.
struct GogEdge {
  std::string id;
  int from = 0;
  int to = 0;
  GroupKind kind = GroupKind::Z;
  Injection inj_from;
  Injection inj_to;
  friend bool operator==(const GogEdge&, const GogEdge&) = default;
};

struct GraphOfGroups {
  std::vector<GogVertex> vertices;
  std::vector<GogEdge> edges;
  friend bool operator==(const GraphOfGroups&, const GraphOfGroups&) = default;
};

// Throws InvalidGraphOfGroups.
void validate(const GraphOfGroups& g);

struct OrientedEdge {
  int edge = 0;
  bool reversed = false;
};

int origin(const GraphOfGroups& g, OrientedEdge e);
int terminus(const GraphOfGroups& g, OrientedEdge e);
const Injection& origin_injection(const GraphOfGroups& g, OrientedEdge e);

// Non-loop with h_e an isomorphism onto the origin vertex group.
bool is_collapsible(const GraphOfGroups& g, OrientedEdge e);

// The merged vertex keeps the terminus group; injections at the removed
// origin are pushed through h_{e-bar} o h_e^-1.  Throws NotCollapsible.
GraphOfGroups collapse(const GraphOfGroups& g, OrientedEdge e);

// Collapses the lowest-index collapsible edge until none remain.
GraphOfGroups reduce_gog(const GraphOfGroups& g);

// chi(1) = 1, chi(Z) = chi(Z^2) = chi(BS(1,-1)) = 0.
long euler_characteristic(const GraphOfGroups& g);

// (a^x t^y)^k in BS(1,-1).
Injection bs11_power(const Injection& elem, long k);

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;  // letters index generators (1-based)
};

// Edge indices of a spanning tree chosen by breadth-first search from
// vertex 0, preferring lower edge indices.
std::vector<int> default_spanning_tree(const GraphOfGroups& g);

// Throws NotATree when tree_edges is not a spanning tree.
Presentation presentation(const GraphOfGroups& g, std::span<const int> tree_edges);
Presentation presentation(const GraphOfGroups& g);

struct AbelianInvariants {
  int free_rank = 0;
  std::vector<std::int64_t> torsion;  // invariant factors > 1, divisibility chain
  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

// Smith normal form of the exponent-sum matrix.
AbelianInvariants abelianization(const Presentation& p);
AbelianInvariants smith_invariants(std::vector<std::vector<std::int64_t>> matrix,
                                   int columns);

Verdict shape_verdict(const GraphOfGroups& g);

enum class BoundDirection { Index, Monotone };

// Lower bound for omega(G) from omega(H) >= bound, where H has index n (or
// maps n-monotonically) and the dimension is m: bound * n^(-1/m).
double propagate_bound(long n, long m, double bound, BoundDirection direction);

}  // namespace mve
