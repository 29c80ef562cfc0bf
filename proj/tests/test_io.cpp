#include <doctest.h>

#include "mve/error.hpp"
#include "mve/io.hpp"

using namespace mve;

namespace {

std::string data(const std::string& name) { return std::string(MVE_DATA_DIR) + "/" + name; }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ResourceLimit;
}

}  // namespace

TEST_CASE("number rounding") {
  CHECK(round_significant(0.1 + 0.2) == 0.3);
  CHECK(round_significant(1.0 / 3.0, 4) == 0.3333);
  const json j = canonical_numbers(json{{"x", 2.0794415416798357}, {"n", 3}, {"v", {0.30000000000000004}}});
  CHECK(dump_json(j) == "{\n  \"n\": 3,\n  \"v\": [\n    0.3\n  ],\n  \"x\": 2.07944154168\n}");
}

TEST_CASE("schemas round trip") {
  for (const char* f : {"fibonacci.json", "glu_aut.json", "swap.json"}) {
    const FreeAut a = aut_from_json(read_json_file(data(f)));
    CHECK(aut_from_json(aut_to_json(a)) == a);
  }
  for (const char* f : {"c4.json", "p4.json", "k3.json"}) {
    const SimplicialGraph g = graph_from_json(read_json_file(data(f)));
    const SimplicialGraph back = graph_from_json(graph_to_json(g));
    CHECK(back.labels() == g.labels());
    CHECK(back.edges() == g.edges());
  }
  const PrimitiveSplitting s = splitting_from_json(read_json_file(data("splitting.json")));
  CHECK(s.tree_edges.at(0).id == "e1");
  CHECK(s.plus_edges.at(0).id == "e2");
  CHECK(splitting_from_json(splitting_to_json(s)) == s);
  const GluData d = glu_from_json(read_json_file(data("glu.json")));
  CHECK(d.p == std::vector<long>{1});
  CHECK(glu_from_json(glu_to_json(d)) == d);
  const GraphOfGroups g = gog_from_json(read_json_file(data("gog_z2_loop.json")));
  CHECK(gog_from_json(gog_to_json(g)) == g);
  const MetricGraph m = metric_graph_from_json(read_json_file(data("theta.json")));
  CHECK(m.edges.size() == 3);
  CHECK(metric_graph_from_json(metric_graph_to_json(m)).edges.size() == 3);
}

TEST_CASE("schema errors") {
  CHECK(code_of([] { read_json_file("/nonexistent.json"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { aut_from_json(json{{"rank", 2}}); }) == ErrorCode::ParseError);
  CHECK(code_of([] { aut_from_json(json::parse(R"({"rank":1,"images":["b"],"inverse_images":["b"]})")); }) ==
        ErrorCode::IndexOutOfRange);
  json glu = read_json_file(data("glu.json"));
  glu["p"] = {{"e9", 1}};
  CHECK(code_of([&] { glu_from_json(glu); }) == ErrorCode::InvalidGluData);
  json gog = read_json_file(data("gog_z2_loop.json"));
  gog["edges"][0]["kind"] = "Z2";
  CHECK(code_of([&] { gog_from_json(gog); }) == ErrorCode::InvalidGraphOfGroups);
  CHECK(code_of([] { graph_from_json(json::parse(R"({"vertices":["a"],"edges":[["a","b"]]})")); }) ==
        ErrorCode::InvalidGraph);
}

TEST_CASE("verdict json omits absent bounds") {
  Verdict v;
  v.status = VerdictStatus::Unsupported;
  v.theorem = "Theorem 1.2";
  const json j = verdict_to_json(v);
  CHECK(j["status"] == "Unsupported");
  CHECK_FALSE(j.contains("lower_bound"));
  CHECK(j["paper_theorem"] == "Theorem 1.2");
}
