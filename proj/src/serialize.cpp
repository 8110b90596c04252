#include "rmetric/serialize.hpp"

#include <string>

#include "rmetric/errors.hpp"

namespace rmetric {

namespace {

int require_int(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw DomainError(std::string("JSON field '") + key + "' must be an integer");
  }
  return j.at(key).get<int>();
}

}  // namespace

json to_json_value(const MetricColoring& g) {
  return json{{"r", g.r()}, {"n", g.n()}, {"d", g.distances()}};
}

MetricColoring metric_coloring_from_json(const json& j) {
  if (!j.is_object()) throw DomainError("metric coloring JSON must be an object");
  const Params p(require_int(j, "r"), require_int(j, "n"));
  if (!j.contains("d") || !j.at("d").is_array()) throw DomainError("JSON field 'd' must be an array");
  std::vector<Color> d;
  for (const auto& v : j.at("d")) {
    if (!v.is_number_integer()) throw DomainError("distances must be integers");
    d.push_back(v.get<int>());
  }
  return MetricColoring(p, d);
}

json to_json_value(const ColorSetGraph& g) {
  json c = json::array();
  for (ColorMask m : g.masks()) c.push_back(colors_in(m));
  return json{{"r", g.r()}, {"n", g.n()}, {"c", c}};
}

ColorSetGraph color_set_graph_from_json(const json& j) {
  if (!j.is_object()) throw DomainError("color-set graph JSON must be an object");
  const Params p(require_int(j, "r"), require_int(j, "n"));
  if (p.r > kMaxColorsMask) throw DomainError("color-set graphs support r <= 32");
  if (!j.contains("c") || !j.at("c").is_array()) throw DomainError("JSON field 'c' must be an array");
  std::vector<ColorMask> masks;
  for (const auto& set : j.at("c")) {
    if (!set.is_array()) throw DomainError("each color set must be an array");
    ColorMask m = 0;
    for (const auto& v : set) {
      if (!v.is_number_integer()) throw DomainError("colors must be integers");
      const int c = v.get<int>();
      if (c < 1 || c > p.r) throw DomainError("color " + std::to_string(c) + " outside [1, r]");
      m |= ColorMask{1} << (c - 1);
    }
    masks.push_back(m);
  }
  return ColorSetGraph(p, masks);
}

json to_json_value(const EditSet& e) {
  json out = json::array();
  for (const auto& [x, y] : e.pairs) out.push_back({x + 1, y + 1});
  return out;
}

json to_json_value(const VertexSet& s) {
  json out = json::array();
  for (Vertex v : s) out.push_back(v + 1);
  return out;
}

json to_json_value(const std::vector<VertexSet>& sets) {
  json out = json::array();
  for (const auto& s : sets) out.push_back(to_json_value(s));
  return out;
}

json to_json_value(const ComponentDecomposition& d) {
  json out{{"components", to_json_value(d.components)},
           {"large_threshold", d.large_threshold},
           {"small_count", d.small_count()},
           {"large_count", d.large_count()}};
  if (auto ml = minimal_large_component(d)) {
    out["minimal_large_component"] = to_json_value(*ml);
  } else {
    out["minimal_large_component"] = nullptr;
  }
  return out;
}

json to_json_value(const BadCycle& c) {
  return json{{"kind", "bad_cycle"},
              {"cycle", to_json_value(VertexSet(c.vertices))},
              {"length", c.vertices.size()},
              {"meets_length_four", c.meets_length_four()}};
}

json to_json_value(const CrMembershipCertificate& cert) {
  json out{{"member", cert.member}};
  if (cert.partition) out["partition"] = to_json_value(*cert.partition);
  if (cert.violation) {
    if (const auto* low = std::get_if<LowPair>(&*cert.violation)) {
      out["violation"] = json{{"kind", "low_pair"},
                              {"pair", {low->x + 1, low->y + 1}},
                              {"color", low->color}};
    } else {
      out["violation"] = to_json_value(std::get<BadCycle>(*cert.violation));
    }
  }
  return out;
}

json to_json_value(const Rational& v) {
  return json{{"num", boost::multiprecision::numerator(v).str()},
              {"den", boost::multiprecision::denominator(v).str()},
              {"decimal", to_decimal(v, 12)}};
}

}  // namespace rmetric
