#pragma once

// JSON and CSV encodings for every input and output type.  Numbers are
// written rounded to 12 significant digits so that output is byte-stable.

#include <string>
#include <string_view>

#include <json.hpp>

#include "mve/entropy.hpp"
#include "mve/fbz.hpp"
#include "mve/gog.hpp"
#include "mve/growth.hpp"
#include "mve/raag.hpp"
#include "mve/verdict.hpp"
#include "mve/words.hpp"

namespace mve {

using nlohmann::json;

double round_significant(double x, int digits = 12);
// Rounds every floating-point number in j to 12 significant digits.
json canonical_numbers(const json& j);
std::string dump_json(const json& j);

// Throws ParseError for unreadable files or malformed JSON.
json read_json_file(const std::string& path);

// {"rank": n, "images": ["a b", ...], "inverse_images": [...]}
FreeAut aut_from_json(const json& j);
json aut_to_json(const FreeAut& aut);

// {"vertices": ["a", ...], "edges": [["a","b"], ...]}
SimplicialGraph graph_from_json(const json& j);
json graph_to_json(const SimplicialGraph& g);

// Edges are [from, to] pairs or {"id", "from", "to"} objects; missing ids
// default to e1, e2, ... numbering tree edges first, then plus edges.
PrimitiveSplitting splitting_from_json(const json& j);
json splitting_to_json(const PrimitiveSplitting& s);

// Splitting fields plus "p", "q", "r" objects keyed by edge id.
GluData glu_from_json(const json& j);
json glu_to_json(const GluData& d);

// {"vertices": [{"id","kind"}], "edges": [{"id","from","to","kind",
//   "inj_from": [x,y], "inj_to": [x,y]}]}; endpoints are vertex ids.
GraphOfGroups gog_from_json(const json& j);
json gog_to_json(const GraphOfGroups& g);

json presentation_to_json(const Presentation& p);
json abelian_to_json(const AbelianInvariants& a);
json tubularization_to_json(const Tubularization& t);

// {"vertices": [...], "edges": [{"from","to","length"}]}
MetricGraph metric_graph_from_json(const json& j);
json metric_graph_to_json(const MetricGraph& g);

json verdict_to_json(const Verdict& v);
json entropy_to_json(const EntropyResult<double>& r);
json optimize_to_json(const OptimizeResult& r);
json profile_to_json(const BallProfile& p);
std::string profile_to_csv(const BallProfile& p);
json rates_to_json(const RateEstimates& r);
json collapse_to_json(const CollapseDemo& d);

}  // namespace mve
