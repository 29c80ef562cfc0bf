#include "mve/fbz.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "mve/error.hpp"
#include "mve/io.hpp"

namespace mve {

std::vector<MixedLetter> parse_mixed_word(std::string_view text) {
  std::vector<MixedLetter> out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (token == "t" || token == "t-") {
      out.push_back({true, token == "t" ? 1 : -1});
      continue;
    }
    const Word w = parse_word(token);
    for (Letter x : w.letters()) out.push_back({false, x});
  }
  return out;
}

FbzElement FreeByCyclic::basis(int index) const {
  if (index < 1 || index > rank()) throw Error(ErrorCode::IndexOutOfRange, "basis index");
  return {0, Word::generator(index)};
}

FbzElement FreeByCyclic::from_word(const Word& u) const {
  if (u.max_index() > rank()) throw Error(ErrorCode::IndexOutOfRange, "letter beyond rank");
  return {0, u};
}

Word FreeByCyclic::twist(const Word& u, long j) const {
  Word w = u;
  for (; j > 0; --j) w = apply(aut_, w);
  for (; j < 0; ++j) w = apply_inverse(aut_, w);
  return w;
}

FbzElement FreeByCyclic::multiply(const FbzElement& a, const FbzElement& b) const {
  return {a.k + b.k, twist(a.u, -b.k) * b.u};
}

// (t^k u)^-1 = u^-1 t^-k = t^-k aut^k(u^-1)
FbzElement FreeByCyclic::inverse(const FbzElement& a) const {
  return {-a.k, twist(a.u.inverse(), a.k)};
}

FbzElement FreeByCyclic::power(const FbzElement& a, long n) const {
  FbzElement base = n < 0 ? inverse(a) : a;
  unsigned long e = n < 0 ? -static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
  FbzElement acc;
  while (e != 0) {
    if (e & 1) acc = multiply(acc, base);
    e >>= 1;
    if (e != 0) base = multiply(base, base);
  }
  return acc;
}

FbzElement FreeByCyclic::commutator(const FbzElement& a, const FbzElement& b) const {
  return multiply(multiply(a, b), multiply(inverse(a), inverse(b)));
}

FbzElement fbz_normalize(const FreeByCyclic& group, std::span<const MixedLetter> word) {
  FbzElement g;
  for (const MixedLetter& m : word) {
    if (m.stable) {
      if (m.letter != 1 && m.letter != -1) throw Error(ErrorCode::IndexOutOfRange, "bad t letter");
      g.k += m.letter;
      g.u = group.twist(g.u, -m.letter);
    } else {
      if (m.letter == 0 || generator_index(m.letter) > group.rank())
        throw Error(ErrorCode::IndexOutOfRange, "letter beyond rank");
      g.u *= Word{m.letter};
    }
  }
  return g;
}

std::string format_fbz_element(const FbzElement& g) {
  return "(" + std::to_string(g.k) + ", " + format_word(g.u) + ")";
}

RootedTree root_tree(const PrimitiveSplitting& s) {
  const int n = static_cast<int>(s.vertices.size());
  if (n == 0) throw Error(ErrorCode::InvalidGluData, "splitting has no vertices");
  if (s.basepoint < 0 || s.basepoint >= n) throw Error(ErrorCode::InvalidGluData, "bad basepoint");
  {
    std::set<std::string> names(s.vertices.begin(), s.vertices.end());
    if (static_cast<int>(names.size()) != n)
      throw Error(ErrorCode::InvalidGluData, "duplicate vertex names");
    std::set<std::string> ids;
    for (const auto* list : {&s.tree_edges, &s.plus_edges}) {
      for (const auto& e : *list) {
        if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
          throw Error(ErrorCode::InvalidGluData, "edge endpoint out of range");
        if (!ids.insert(e.id).second) throw Error(ErrorCode::InvalidGluData, "duplicate edge id " + e.id);
      }
    }
  }
  if (static_cast<int>(s.tree_edges.size()) != n - 1)
    throw Error(ErrorCode::InvalidGluData, "tree needs |V| - 1 edges");

  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbour, edge)
  for (int i = 0; i < static_cast<int>(s.tree_edges.size()); ++i) {
    const auto& e = s.tree_edges[i];
    if (e.from == e.to) throw Error(ErrorCode::InvalidGluData, "tree edge is a loop");
    adj[e.from].push_back({e.to, i});
    adj[e.to].push_back({e.from, i});
  }
  RootedTree t;
  t.parent.assign(n, -1);
  t.parent_edge.assign(n, -1);
  std::vector<char> seen(n, 0);
  std::deque<int> queue{s.basepoint};
  seen[s.basepoint] = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    t.order.push_back(u);
    for (auto [v, i] : adj[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      t.parent[v] = u;
      t.parent_edge[v] = i;
      queue.push_back(v);
    }
  }
  if (static_cast<int>(t.order.size()) != n)
    throw Error(ErrorCode::InvalidGluData, "tree edges do not span the graph");
  return t;
}

void validate(const GluData& data) {
  root_tree(data.splitting);
  if (data.p.size() != data.splitting.tree_edges.size())
    throw Error(ErrorCode::InvalidGluData, "p must have one entry per tree edge");
  if (data.q.size() != data.splitting.plus_edges.size() ||
      data.r.size() != data.splitting.plus_edges.size())
    throw Error(ErrorCode::InvalidGluData, "q and r must have one entry per plus edge");
}

namespace {

// Child endpoint of each tree edge.
std::vector<int> tree_children(const RootedTree& t, std::size_t edges) {
  std::vector<int> child(edges, -1);
  for (int v = 0; v < static_cast<int>(t.parent_edge.size()); ++v)
    if (t.parent_edge[v] >= 0) child[t.parent_edge[v]] = v;
  return child;
}

std::vector<Word> tree_words(const GluData& data, const RootedTree& t) {
  const auto& s = data.splitting;
  std::vector<Word> w(s.vertices.size());
  for (int v : t.order) {
    if (t.parent[v] < 0) continue;
    const int u = t.parent[v];
    w[v] = w[u] * Word::generator_power(s.vertex_generator(u), data.p[t.parent_edge[v]]);
  }
  return w;
}

}  // namespace

std::vector<Word> tree_words(const GluData& data) {
  validate(data);
  return tree_words(data, root_tree(data.splitting));
}

FreeAut make_glu(const GluData& data) {
  validate(data);
  const auto& s = data.splitting;
  const RootedTree t = root_tree(s);
  const auto w = tree_words(data, t);
  const int n = s.rank();

  std::vector<Word> images(n), inverse_images(n);
  for (int v = 0; v < static_cast<int>(s.vertices.size()); ++v) {
    images[v] = w[v] * Word::generator(s.vertex_generator(v)) * w[v].inverse();
  }
  for (int i = 0; i < static_cast<int>(s.plus_edges.size()); ++i) {
    const auto& e = s.plus_edges[i];
    images[s.plus_generator(i) - 1] =
        w[e.from] * Word::generator_power(s.vertex_generator(e.from), data.q[i]) *
        Word::generator(s.plus_generator(i)) *
        Word::generator_power(s.vertex_generator(e.to), data.r[i]) * w[e.to].inverse();
  }

  // Inverse: aut^-1(a_v) = aut^-1(w_v)^-1 a_v aut^-1(w_v), filled in tree order
  // since w_v only involves ancestors of v.
  for (int v : t.order) {
    const Word pre = apply_images(inverse_images, w[v]);
    inverse_images[v] = pre.inverse() * Word::generator(s.vertex_generator(v)) * pre;
  }
  for (int i = 0; i < static_cast<int>(s.plus_edges.size()); ++i) {
    const auto& e = s.plus_edges[i];
    const Word left = w[e.from] * Word::generator_power(s.vertex_generator(e.from), data.q[i]);
    const Word right = Word::generator_power(s.vertex_generator(e.to), data.r[i]) * w[e.to].inverse();
    inverse_images[s.plus_generator(i) - 1] = apply_images(inverse_images, left).inverse() *
                                              Word::generator(s.plus_generator(i)) *
                                              apply_images(inverse_images, right).inverse();
  }
  return FreeAut(n, std::move(images), std::move(inverse_images));
}

namespace {

// Matches w = x^m y x^-m with x, y distinct generators; returns m.
std::optional<long> match_conjugate(const Word& w, int x, int y) {
  if (w.size() % 2 == 0) return std::nullopt;
  const std::size_t half = w.size() / 2;
  if (w[half] != y) return std::nullopt;
  const long m = half == 0 ? 0 : (w[0] == x ? static_cast<long>(half) : -static_cast<long>(half));
  if (Word::generator_power(x, m) * Word{y} * Word::generator_power(x, -m) != w) return std::nullopt;
  return m;
}

// Matches w = a^q x b^r; returns (q, r).
std::optional<std::pair<long, long>> match_sandwich(const Word& w, int a, int x, int b) {
  const auto& l = w.letters();
  const auto it = std::find(l.begin(), l.end(), x);
  if (it == l.end()) return std::nullopt;
  const long before = it - l.begin();
  const long after = l.end() - it - 1;
  const long q = before == 0 ? 0 : (l.front() == a ? before : -before);
  const long r = after == 0 ? 0 : (l.back() == b ? after : -after);
  if (Word::generator_power(a, q) * Word{x} * Word::generator_power(b, r) != w) return std::nullopt;
  return std::pair{q, r};
}

}  // namespace

std::optional<GluData> check_glu(const FreeAut& aut, const PrimitiveSplitting& splitting) {
  const RootedTree t = root_tree(splitting);
  if (aut.rank() != splitting.rank())
    throw Error(ErrorCode::RankMismatch, "automorphism rank " + std::to_string(aut.rank()) +
                                             " but splitting rank " + std::to_string(splitting.rank()));
  GluData data{splitting, std::vector<long>(splitting.tree_edges.size(), 0),
               std::vector<long>(splitting.plus_edges.size(), 0),
               std::vector<long>(splitting.plus_edges.size(), 0)};
  std::vector<Word> w(splitting.vertices.size());
  for (int v : t.order) {
    const int gen = splitting.vertex_generator(v);
    if (t.parent[v] < 0) {
      if (aut.image(gen) != Word::generator(gen)) return std::nullopt;
      continue;
    }
    const int u = t.parent[v];
    const Word inner = w[u].inverse() * aut.image(gen) * w[u];
    const auto m = match_conjugate(inner, splitting.vertex_generator(u), gen);
    if (!m) return std::nullopt;
    data.p[t.parent_edge[v]] = *m;
    w[v] = w[u] * Word::generator_power(splitting.vertex_generator(u), *m);
  }
  for (int i = 0; i < static_cast<int>(splitting.plus_edges.size()); ++i) {
    const auto& e = splitting.plus_edges[i];
    const int gen = splitting.plus_generator(i);
    const Word inner = w[e.from].inverse() * aut.image(gen) * w[e.to];
    const auto qr = match_sandwich(inner, splitting.vertex_generator(e.from), gen,
                                   splitting.vertex_generator(e.to));
    if (!qr) return std::nullopt;
    data.q[i] = qr->first;
    data.r[i] = qr->second;
  }
  if (make_glu(data).images() != aut.images()) return std::nullopt;
  return data;
}

std::vector<Word> ball_words(int rank, int max_length) {
  std::vector<Word> out{Word{}};
  std::vector<Letter> alphabet;
  for (int i = 1; i <= rank; ++i) {
    alphabet.push_back(i);
    alphabet.push_back(-i);
  }
  std::size_t level_begin = 0;
  for (int len = 1; len <= max_length; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t j = level_begin; j < level_end; ++j) {
      for (Letter x : alphabet) {
        const auto& l = out[j].letters();
        if (!l.empty() && l.back() == -x) continue;
        std::vector<Letter> next = l;
        next.push_back(x);
        out.emplace_back(next);
      }
    }
    level_begin = level_end;
  }
  return out;
}

std::optional<GluCertificate> glu_power_search(const FreeAut& aut,
                                               const PrimitiveSplitting& splitting,
                                               int max_power, int conj_ball) {
  if (aut.rank() != splitting.rank()) return std::nullopt;
  const auto conjugators = ball_words(aut.rank(), std::max(conj_ball, 0));
  FreeAut current = aut;
  for (int k = 1; k <= max_power; ++k) {
    if (k > 1) current = compose(aut, current);
    for (const Word& g : conjugators) {
      if (auto data = check_glu(conjugate_by(current, g), splitting)) {
        return GluCertificate{k, g, std::move(*data)};
      }
    }
  }
  return std::nullopt;
}

namespace {

FbzElement evaluate(const FreeByCyclic& group, const Word& relator,
                    const std::vector<FbzElement>& images) {
  FbzElement acc;
  for (Letter x : relator.letters()) {
    const FbzElement& g = images[generator_index(x) - 1];
    acc = group.multiply(acc, x > 0 ? g : group.inverse(g));
  }
  return acc;
}

}  // namespace

Tubularization tubularize(const GluData& data) {
  validate(data);
  const auto& s = data.splitting;
  const RootedTree t = root_tree(s);
  const auto w = tree_words(data, t);
  const auto child = tree_children(t, s.tree_edges.size());
  const int nv = static_cast<int>(s.vertices.size());

  Tubularization out;
  for (const auto& name : s.vertices) out.gog.vertices.push_back({name, GroupKind::Z2});
  // Vertex group at v: coordinates (a_v, u_v) with u_v = w_v^-1 t.
  for (int i = 0; i < static_cast<int>(s.tree_edges.size()); ++i) {
    const int v = child[i], u = t.parent[v];
    // u_v = a_u^-p u_u
    out.gog.edges.push_back({s.tree_edges[i].id, u, v, GroupKind::Z, {-data.p[i], 1}, {0, 1}});
    out.tree_edges.push_back(i);
  }
  for (int i = 0; i < static_cast<int>(s.plus_edges.size()); ++i) {
    const auto& e = s.plus_edges[i];
    // x_e (a_tau^r u_tau) x_e^-1 = a_o^-q u_o
    out.gog.edges.push_back({e.id, e.to, e.from, GroupKind::Z, {data.r[i], 1}, {-data.q[i], 1}});
  }
  out.presentation = presentation(out.gog, out.tree_edges);

  const FreeByCyclic group(make_glu(data));
  for (int v = 0; v < nv; ++v) {
    out.generator_images.push_back(group.basis(s.vertex_generator(v)));
    out.generator_images.push_back(
        group.multiply(group.from_word(w[v].inverse()), group.stable()));
  }
  for (int i = 0; i < static_cast<int>(s.plus_edges.size()); ++i)
    out.generator_images.push_back(group.basis(s.plus_generator(i)));

  if (out.generator_images.size() != out.presentation.generators.size())
    throw Error(ErrorCode::TubularizationInconsistent, "generator count mismatch");
  for (std::size_t i = 0; i < out.presentation.relators.size(); ++i) {
    if (evaluate(group, out.presentation.relators[i], out.generator_images) != group.identity())
      throw Error(ErrorCode::TubularizationInconsistent,
                  "relator " + std::to_string(i + 1) + " does not hold in G");
  }
  auto hit = [&](const FbzElement& g) {
    return std::find(out.generator_images.begin(), out.generator_images.end(), g) !=
           out.generator_images.end();
  };
  if (!hit(group.stable()))
    throw Error(ErrorCode::TubularizationInconsistent, "t is not a generator image");
  for (int i = 1; i <= group.rank(); ++i) {
    if (!hit(group.basis(i)))
      throw Error(ErrorCode::TubularizationInconsistent, "basis element " + generator_name(i) + " missed");
  }
  return out;
}

Presentation native_presentation(const FreeAut& aut) {
  const int n = aut.rank();
  Presentation p;
  for (int i = 1; i <= n; ++i) p.generators.push_back(generator_name(i));
  p.generators.push_back("t");
  const Word t = Word::generator(n + 1);
  for (int i = 1; i <= n; ++i)
    p.relators.push_back(t * Word::generator(i) * t.inverse() * aut.image(i).inverse());
  return p;
}

std::string_view to_string(SubgroupClass c) {
  switch (c) {
    case SubgroupClass::Trivial: return "Trivial";
    case SubgroupClass::Z: return "Z";
    case SubgroupClass::Z2: return "Z2";
    case SubgroupClass::KleinBottle: return "KleinBottle";
    case SubgroupClass::ExponentialHeuristic: return "ExponentialHeuristic";
    case SubgroupClass::Unknown: return "Unknown";
  }
  return "?";
}

bool exceeds_cubic_envelope(std::span<const std::size_t> b) {
  if (b.size() < 7) return false;
  const double c = static_cast<double>(b[3]) / 27.0;
  int run = 0;
  for (std::size_t j = 4; j < b.size(); ++j) {
    const double jj = static_cast<double>(j);
    run = static_cast<double>(b[j]) > c * jj * jj * jj ? run + 1 : 0;
    if (run >= 3) return true;
  }
  return false;
}

SubgroupClass subgroup_classify(const FreeByCyclic& group, std::span<const FbzElement> input,
                                int radius, std::size_t frontier_cap) {
  std::vector<FbzElement> gens;
  for (const auto& g : input) {
    if (g.u.max_index() > group.rank()) throw Error(ErrorCode::IndexOutOfRange, "letter beyond rank");
    if (g != group.identity()) gens.push_back(g);
  }
  if (gens.empty()) return SubgroupClass::Trivial;

  bool abelian = true;
  for (std::size_t i = 0; i < gens.size() && abelian; ++i)
    for (std::size_t j = i + 1; j < gens.size() && abelian; ++j)
      abelian = group.commutator(gens[i], gens[j]) == group.identity();

  if (abelian) {
    // Free-by-cyclic groups are torsion free, so the subgroup is Z^m with
    // m <= 2.  With a pivot g0 of nonzero t-exponent k0, the elements
    // g_j^(k0/d) g0^(-k_j/d) lie in F_n; any nontrivial one adds a second
    // independent direction.  Inside F_n commuting elements share a root.
    auto pivot = std::find_if(gens.begin(), gens.end(), [](const FbzElement& g) { return g.k != 0; });
    if (pivot == gens.end()) return SubgroupClass::Z;
    for (const auto& g : gens) {
      const long d = std::gcd(pivot->k, g.k);
      const FbzElement c = group.multiply(group.power(g, pivot->k / d),
                                          group.power(*pivot, -g.k / d));
      if (c != group.identity()) return SubgroupClass::Z2;
    }
    return SubgroupClass::Z;
  }

  if (gens.size() == 2) {
    for (int flip = 0; flip < 2; ++flip) {
      const FbzElement& g = gens[flip];
      const FbzElement& h = gens[1 - flip];
      if (group.multiply(group.multiply(h, g), group.inverse(h)) == group.inverse(g))
        return SubgroupClass::KleinBottle;
    }
  }

  std::vector<FbzElement> steps;
  for (const auto& g : gens) {
    steps.push_back(g);
    steps.push_back(group.inverse(g));
  }
  std::unordered_set<FbzElement, FbzElementHash> seen{group.identity()};
  std::vector<FbzElement> frontier{group.identity()};
  std::vector<std::size_t> counts{1};
  for (int j = 1; j <= radius; ++j) {
    std::vector<FbzElement> next;
    for (const auto& x : frontier) {
      for (const auto& s : steps) {
        FbzElement y = group.multiply(x, s);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
      if (seen.size() > frontier_cap) {
        return exceeds_cubic_envelope(counts) ? SubgroupClass::ExponentialHeuristic
                                              : SubgroupClass::Unknown;
      }
    }
    frontier = std::move(next);
    counts.push_back(seen.size());
    if (exceeds_cubic_envelope(counts)) return SubgroupClass::ExponentialHeuristic;
  }
  return SubgroupClass::Unknown;
}

Verdict fbz_verdict(const FreeAut& aut, const std::optional<PrimitiveSplitting>& splitting,
                    int max_power, int conj_ball) {
  Verdict v;
  v.theorem = "Theorem 1.1";
  if (splitting) {
    if (auto cert = glu_power_search(aut, *splitting, max_power, conj_ball)) {
      v.status = VerdictStatus::Vanishing;
      v.lower_bound = 0.0;
      v.certificate = {{"power", cert->power},
                       {"conjugator", format_word(cert->conjugator)},
                       {"glu", glu_to_json(cert->data)}};
      v.note = "a power of the automorphism is GLU up to conjugation";
      return v;
    }
  }
  const GrowthProfile profile = growth_profile(aut, 12);
  if (profile.classification == GrowthClass::ExponentialHeuristic) {
    v.status = VerdictStatus::NonVanishingHeuristic;
    v.lower_bound = nonvanishing_bound(free_by_cyclic_uniform_growth());
    v.certificate = {{"growth_lengths", profile.lengths},
                     {"classification", to_string(profile.classification)},
                     {"witness_ratio", profile.witness_ratio}};
    v.note = "exponential growth detected heuristically; no power can be GLU";
    return v;
  }
  v.status = VerdictStatus::Unknown;
  v.certificate = {{"growth_lengths", profile.lengths},
                   {"classification", to_string(profile.classification)}};
  v.note = splitting ? "no GLU power found within the search bounds"
                     : "no splitting supplied and growth is not exponential";
  return v;
}

}  // namespace mve
