#pragma once

// JSON forms of the domain types. Colors and vertices are 1-based here.

#include <json.hpp>

#include "rmetric/core.hpp"
#include "rmetric/structure.hpp"

namespace rmetric {

using nlohmann::json;

json to_json_value(const MetricColoring& g);
MetricColoring metric_coloring_from_json(const json& j);

json to_json_value(const ColorSetGraph& g);
ColorSetGraph color_set_graph_from_json(const json& j);

json to_json_value(const EditSet& e);
json to_json_value(const VertexSet& s);
json to_json_value(const std::vector<VertexSet>& sets);
json to_json_value(const ComponentDecomposition& d);
json to_json_value(const BadCycle& c);
json to_json_value(const CrMembershipCertificate& cert);

// Big integers travel as decimal strings so no consumer truncates them.
inline json to_json_value(const BigInt& v) { return v.str(); }
json to_json_value(const Rational& v);  // {"num": "...", "den": "...", "decimal": "..."}

}  // namespace rmetric
