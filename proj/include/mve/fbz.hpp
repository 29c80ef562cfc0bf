#pragma once

// Free-by-cyclic groups G = <F_n, t | t x t^-1 = aut(x)> and geometrically
// linear unipotent (GLU) automorphisms relative to a primitive free
// splitting.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mve/gog.hpp"
#include "mve/verdict.hpp"
#include "mve/words.hpp"

namespace mve {

// t^k u.
struct FbzElement {
  long k = 0;
  Word u;
  friend bool operator==(const FbzElement&, const FbzElement&) = default;
};

struct FbzElementHash {
  std::size_t operator()(const FbzElement& g) const noexcept {
    return WordHash{}(g.u) * 31 + static_cast<std::size_t>(g.k);
  }
};

// A letter of a word over the F_n basis and the stable letter t.
struct MixedLetter {
  bool stable = false;
  Letter letter = 1;  // +-index, or +-1 for t
  friend bool operator==(const MixedLetter&, const MixedLetter&) = default;
};

// "b t a- t-"
std::vector<MixedLetter> parse_mixed_word(std::string_view text);

class FreeByCyclic {
 public:
  explicit FreeByCyclic(FreeAut aut) : aut_(std::move(aut)) {}

  const FreeAut& automorphism() const noexcept { return aut_; }
  int rank() const noexcept { return aut_.rank(); }

  FbzElement identity() const { return {}; }
  FbzElement basis(int index) const;  // (0, x_index)
  FbzElement stable() const { return {1, {}}; }
  FbzElement from_word(const Word& u) const;

  // aut^j(u) for any integer j.
  Word twist(const Word& u, long j) const;

  // (k,u)(k',u') = (k+k', aut^{-k'}(u) u')
  FbzElement multiply(const FbzElement& a, const FbzElement& b) const;
  FbzElement inverse(const FbzElement& a) const;
  FbzElement power(const FbzElement& a, long n) const;
  FbzElement commutator(const FbzElement& a, const FbzElement& b) const;

 private:
  FreeAut aut_;
};

// Normal form of a mixed word.  Throws IndexOutOfRange.
FbzElement fbz_normalize(const FreeByCyclic& group, std::span<const MixedLetter> word);
std::string format_fbz_element(const FbzElement& g);

// Graph Y' with Z vertex groups, trivial edge groups, a spanning tree and a
// choice of one orientation for each edge outside the tree.  The free basis
// is a_v for each vertex (indices 1..|V| in declaration order) followed by
// x_e for each plus edge.
struct SplittingEdge {
  std::string id;
  int from = 0;
  int to = 0;
  friend bool operator==(const SplittingEdge&, const SplittingEdge&) = default;
};

struct PrimitiveSplitting {
  std::vector<std::string> vertices;
  std::vector<SplittingEdge> tree_edges;
  std::vector<SplittingEdge> plus_edges;
  int basepoint = 0;

  int rank() const { return static_cast<int>(vertices.size() + plus_edges.size()); }
  int vertex_generator(int v) const { return v + 1; }
  int plus_generator(int i) const { return static_cast<int>(vertices.size()) + i + 1; }
  friend bool operator==(const PrimitiveSplitting&, const PrimitiveSplitting&) = default;
};

// Tree structure rooted at the basepoint.  Throws InvalidGluData if the tree
// edges do not form a spanning tree.
struct RootedTree {
  std::vector<int> order;        // breadth-first from the basepoint
  std::vector<int> parent;       // -1 at the basepoint
  std::vector<int> parent_edge;  // index into tree_edges, -1 at the basepoint
};
RootedTree root_tree(const PrimitiveSplitting& s);

// p indexed like tree_edges (oriented away from the basepoint); q, r like
// plus_edges.
struct GluData {
  PrimitiveSplitting splitting;
  std::vector<long> p;
  std::vector<long> q;
  std::vector<long> r;
  friend bool operator==(const GluData&, const GluData&) = default;
};

void validate(const GluData& data);  // throws InvalidGluData

// w_v = a_{o(e1)}^{p_e1} ... a_{o(em)}^{p_em} along the tree path v0 -> v.
std::vector<Word> tree_words(const GluData& data);

FreeAut make_glu(const GluData& data);

// Throws RankMismatch.
std::optional<GluData> check_glu(const FreeAut& aut, const PrimitiveSplitting& splitting);

struct GluCertificate {
  int power = 1;
  Word conjugator;  // ad_g o aut^power is GLU
  GluData data;
};

// All reduced words of length <= max_length in shortlex order.
std::vector<Word> ball_words(int rank, int max_length);

// Searches k = 1..max_power and conjugators |g| <= conj_ball; the first match
// in (k, shortlex g) order wins.  No result is not a proof of absence.
std::optional<GluCertificate> glu_power_search(const FreeAut& aut,
                                               const PrimitiveSplitting& splitting,
                                               int max_power, int conj_ball);

struct Tubularization {
  GraphOfGroups gog;             // Z^2 vertices (a_v, u_v = w_v^-1 t), Z edges
  std::vector<int> tree_edges;   // gog edge indices forming the maximal tree
  Presentation presentation;     // w.r.t. tree_edges
  std::vector<FbzElement> generator_images;  // one per presentation generator
};

// Builds the tubular graph of groups and checks that the generator images
// satisfy every relator and hit every generator of G.  Throws
// TubularizationInconsistent.
Tubularization tubularize(const GluData& data);

// <x_1..x_n, t | t x_i t^-1 aut(x_i)^-1>
Presentation native_presentation(const FreeAut& aut);

enum class SubgroupClass { Trivial, Z, Z2, KleinBottle, ExponentialHeuristic, Unknown };

std::string_view to_string(SubgroupClass c);

// Ball counts b_j <= c j^3 with c = b_3 / 27; three consecutive excesses
// flag exponential growth.
bool exceeds_cubic_envelope(std::span<const std::size_t> ball_counts);

SubgroupClass subgroup_classify(const FreeByCyclic& group, std::span<const FbzElement> gens,
                                int radius, std::size_t frontier_cap = 5'000'000);

Verdict fbz_verdict(const FreeAut& aut, const std::optional<PrimitiveSplitting>& splitting,
                    int max_power, int conj_ball);

}  // namespace mve
