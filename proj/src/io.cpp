#include "mve/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mve/error.hpp"

namespace mve {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

// Runs f, turning nlohmann type errors into ParseError.
template <class F>
auto guarded(const char* context, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    bad(std::string(context) + ": " + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<std::string> string_list(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array()) bad(std::string("'") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& s : a) out.push_back(s.get<std::string>());
  return out;
}

int lookup(const std::map<std::string, int>& index, const std::string& name) {
  const auto it = index.find(name);
  if (it == index.end()) bad("unknown vertex '" + name + "'");
  return it->second;
}

std::map<std::string, int> index_of(const std::vector<std::string>& names) {
  std::map<std::string, int> index;
  for (int i = 0; i < static_cast<int>(names.size()); ++i) {
    if (!index.emplace(names[i], i).second) bad("duplicate vertex '" + names[i] + "'");
  }
  return index;
}

Injection injection_from_json(const json& j) {
  if (j.is_number_integer()) return {j.get<long>(), 0};
  if (!j.is_array() || j.size() != 2) bad("injection must be [x, y] or an integer");
  return {j[0].get<long>(), j[1].get<long>()};
}

std::string presentation_word(const Presentation& p, const Word& w) {
  std::string out;
  for (Letter x : w.letters()) {
    if (!out.empty()) out += ' ';
    out += p.generators[generator_index(x) - 1];
    if (x < 0) out += '-';
  }
  return out;
}

json optional_list(const std::vector<std::optional<double>>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x ? json(*x) : json(nullptr));
  return out;
}

}  // namespace

double round_significant(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

json canonical_numbers(const json& j) {
  if (j.is_number_float()) return round_significant(j.get<double>());
  if (j.is_array()) {
    json out = json::array();
    for (const auto& x : j) out.push_back(canonical_numbers(x));
    return out;
  }
  if (j.is_object()) {
    json out = json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = canonical_numbers(it.value());
    return out;
  }
  return j;
}

std::string dump_json(const json& j) { return canonical_numbers(j).dump(2); }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad(path + ": " + e.what());
  }
}

FreeAut aut_from_json(const json& j) {
  return guarded("automorphism", [&] {
    const int rank = field(j, "rank").get<int>();
    std::vector<Word> images, inverse_images;
    for (const auto& s : string_list(j, "images")) images.push_back(parse_word(s));
    for (const auto& s : string_list(j, "inverse_images")) inverse_images.push_back(parse_word(s));
    return FreeAut(rank, std::move(images), std::move(inverse_images));
  });
}

json aut_to_json(const FreeAut& aut) {
  json images = json::array(), inverse = json::array();
  for (const auto& w : aut.images()) images.push_back(format_word(w));
  for (const auto& w : aut.inverse_images()) inverse.push_back(format_word(w));
  return {{"rank", aut.rank()}, {"images", images}, {"inverse_images", inverse}};
}

SimplicialGraph graph_from_json(const json& j) {
  return guarded("graph", [&] {
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : field(j, "edges")) {
      if (!e.is_array() || e.size() != 2) bad("graph edges must be [u, v] pairs");
      edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    return SimplicialGraph(string_list(j, "vertices"), edges);
  });
}

json graph_to_json(const SimplicialGraph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({g.labels()[u], g.labels()[v]});
  return {{"vertices", g.labels()}, {"edges", edges}};
}

PrimitiveSplitting splitting_from_json(const json& j) {
  return guarded("splitting", [&] {
    PrimitiveSplitting s;
    s.vertices = string_list(j, "vertices");
    const auto index = index_of(s.vertices);
    int next_id = 1;
    auto read_edges = [&](const char* key, std::vector<SplittingEdge>& out) {
      const json& list = j.contains(key) ? j.at(key) : json::array();
      if (!list.is_array()) bad(std::string("'") + key + "' must be an array");
      for (const auto& e : list) {
        SplittingEdge edge;
        std::string id = "e" + std::to_string(next_id++);
        if (e.is_array()) {
          if (e.size() != 2) bad("edge pairs must have two endpoints");
          edge.from = lookup(index, e[0].get<std::string>());
          edge.to = lookup(index, e[1].get<std::string>());
        } else {
          edge.from = lookup(index, field(e, "from").get<std::string>());
          edge.to = lookup(index, field(e, "to").get<std::string>());
          if (e.contains("id")) id = e.at("id").get<std::string>();
        }
        edge.id = id;
        out.push_back(edge);
      }
    };
    read_edges("tree_edges", s.tree_edges);
    read_edges("plus_edges", s.plus_edges);
    s.basepoint = j.contains("basepoint") ? lookup(index, j.at("basepoint").get<std::string>()) : 0;
    root_tree(s);
    return s;
  });
}

json splitting_to_json(const PrimitiveSplitting& s) {
  auto edges = [&](const std::vector<SplittingEdge>& list) {
    json out = json::array();
    for (const auto& e : list)
      out.push_back({{"id", e.id}, {"from", s.vertices[e.from]}, {"to", s.vertices[e.to]}});
    return out;
  };
  return {{"vertices", s.vertices},
          {"tree_edges", edges(s.tree_edges)},
          {"plus_edges", edges(s.plus_edges)},
          {"basepoint", s.vertices[s.basepoint]}};
}

GluData glu_from_json(const json& j) {
  return guarded("GLU data", [&] {
    GluData d;
    d.splitting = splitting_from_json(j);
    auto read = [&](const char* key, const std::vector<SplittingEdge>& edges) {
      const json& m = j.contains(key) ? j.at(key) : json::object();
      if (!m.is_object()) bad(std::string("'") + key + "' must map edge ids to integers");
      std::set<std::string> expected;
      std::vector<long> out;
      for (const auto& e : edges) {
        expected.insert(e.id);
        if (!m.contains(e.id))
          throw Error(ErrorCode::InvalidGluData, std::string("'") + key + "' has no entry for edge " + e.id);
        out.push_back(m.at(e.id).get<long>());
      }
      for (auto it = m.begin(); it != m.end(); ++it) {
        if (!expected.count(it.key()))
          throw Error(ErrorCode::InvalidGluData, std::string("'") + key + "' names unknown edge " + it.key());
      }
      return out;
    };
    d.p = read("p", d.splitting.tree_edges);
    d.q = read("q", d.splitting.plus_edges);
    d.r = read("r", d.splitting.plus_edges);
    validate(d);
    return d;
  });
}

json glu_to_json(const GluData& d) {
  json out = splitting_to_json(d.splitting);
  json p = json::object(), q = json::object(), r = json::object();
  for (std::size_t i = 0; i < d.p.size(); ++i) p[d.splitting.tree_edges[i].id] = d.p[i];
  for (std::size_t i = 0; i < d.q.size(); ++i) {
    q[d.splitting.plus_edges[i].id] = d.q[i];
    r[d.splitting.plus_edges[i].id] = d.r[i];
  }
  out["p"] = p;
  out["q"] = q;
  out["r"] = r;
  return out;
}

GraphOfGroups gog_from_json(const json& j) {
  return guarded("graph of groups", [&] {
    GraphOfGroups g;
    std::vector<std::string> ids;
    for (const auto& v : field(j, "vertices")) {
      g.vertices.push_back({field(v, "id").get<std::string>(),
                            parse_group_kind(field(v, "kind").get<std::string>())});
      ids.push_back(g.vertices.back().id);
    }
    const auto index = index_of(ids);
    int next_id = 1;
    for (const auto& e : field(j, "edges")) {
      GogEdge edge;
      edge.id = e.contains("id") ? e.at("id").get<std::string>() : "e" + std::to_string(next_id);
      ++next_id;
      edge.from = lookup(index, field(e, "from").get<std::string>());
      edge.to = lookup(index, field(e, "to").get<std::string>());
      edge.kind = parse_group_kind(field(e, "kind").get<std::string>());
      if (e.contains("inj_from")) edge.inj_from = injection_from_json(e.at("inj_from"));
      if (e.contains("inj_to")) edge.inj_to = injection_from_json(e.at("inj_to"));
      g.edges.push_back(edge);
    }
    validate(g);
    return g;
  });
}

json gog_to_json(const GraphOfGroups& g) {
  json vertices = json::array(), edges = json::array();
  for (const auto& v : g.vertices) vertices.push_back({{"id", v.id}, {"kind", to_string(v.kind)}});
  for (const auto& e : g.edges) {
    edges.push_back({{"id", e.id},
                     {"from", g.vertices[e.from].id},
                     {"to", g.vertices[e.to].id},
                     {"kind", to_string(e.kind)},
                     {"inj_from", {e.inj_from.x, e.inj_from.y}},
                     {"inj_to", {e.inj_to.x, e.inj_to.y}}});
  }
  return {{"vertices", vertices}, {"edges", edges}};
}

json presentation_to_json(const Presentation& p) {
  json relators = json::array();
  for (const auto& w : p.relators) relators.push_back(presentation_word(p, w));
  return {{"generators", p.generators}, {"relators", relators}};
}

json abelian_to_json(const AbelianInvariants& a) {
  return {{"free_rank", a.free_rank}, {"torsion", a.torsion}};
}

json tubularization_to_json(const Tubularization& t) {
  json tree = json::array();
  for (int i : t.tree_edges) tree.push_back(t.gog.edges[i].id);
  json images = json::object();
  for (std::size_t i = 0; i < t.generator_images.size(); ++i) {
    images[t.presentation.generators[i]] = {{"k", t.generator_images[i].k},
                                            {"u", format_word(t.generator_images[i].u)}};
  }
  return {{"graph_of_groups", gog_to_json(t.gog)},
          {"tree_edges", tree},
          {"presentation", presentation_to_json(t.presentation)},
          {"generator_images", images},
          {"verified", true}};
}

MetricGraph metric_graph_from_json(const json& j) {
  return guarded("metric graph", [&] {
    MetricGraph g;
    g.vertices = string_list(j, "vertices");
    const auto index = index_of(g.vertices);
    for (const auto& e : field(j, "edges")) {
      MetricGraph::Edge edge;
      if (e.is_array()) {
        if (e.size() != 2) bad("metric edges must be objects or [u, v] pairs");
        edge.from = lookup(index, e[0].get<std::string>());
        edge.to = lookup(index, e[1].get<std::string>());
      } else {
        edge.from = lookup(index, field(e, "from").get<std::string>());
        edge.to = lookup(index, field(e, "to").get<std::string>());
        if (e.contains("length")) edge.length = e.at("length").get<double>();
      }
      g.edges.push_back(edge);
    }
    return g;
  });
}

json metric_graph_to_json(const MetricGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back({{"from", g.vertices[e.from]}, {"to", g.vertices[e.to]}, {"length", e.length}});
  return {{"vertices", g.vertices}, {"edges", edges}};
}

json verdict_to_json(const Verdict& v) {
  json out = {{"status", to_string(v.status)}};
  if (v.lower_bound) out["lower_bound"] = *v.lower_bound;
  out["certificate"] = v.certificate;
  out["paper_theorem"] = v.theorem;
  if (!v.note.empty()) out["note"] = v.note;
  return out;
}

json entropy_to_json(const EntropyResult<double>& r) {
  return {{"h", r.h}, {"vol", r.vol}, {"omega", r.omega}, {"residual", r.residual},
          {"iterations", r.iterations}};
}

json optimize_to_json(const OptimizeResult& r) {
  return {{"omega_star", r.omega_star},
          {"lengths", r.lengths},
          {"restart_omegas", r.restart_omegas},
          {"evaluations", r.evaluations}};
}

json profile_to_json(const BallProfile& p) {
  json out = {{"radii", p.radii}, {"counts", p.counts}, {"weighted", p.weighted}};
  if (p.weighted) out["weight_resolution"] = p.weight_resolution;
  return out;
}

std::string profile_to_csv(const BallProfile& p) {
  std::ostringstream out;
  out << "radius,count\n";
  for (std::size_t i = 0; i < p.counts.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", p.radii[i]);
    out << buf << ',' << p.counts[i] << '\n';
  }
  return out.str();
}

json rates_to_json(const RateEstimates& r) {
  return {{"delta", optional_list(r.delta)}, {"nu", optional_list(r.nu)}};
}

json collapse_to_json(const CollapseDemo& d) {
  json rows = json::array();
  for (const auto& row : d.rows) {
    rows.push_back({{"s", row.s},
                    {"h", row.h},
                    {"volume", row.volume},
                    {"omega", row.omega},
                    {"omega_proxy", row.omega_proxy},
                    {"elements", row.elements}});
  }
  return {{"rows", rows},
          {"tori", d.tori},
          {"annuli", d.annuli},
          {"polynomial", d.polynomial},
          {"unweighted_counts", d.unweighted.counts}};
}

}  // namespace mve
