#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rmetric/core.hpp"

namespace rmetric {

struct WeightProfile {
  BigInt weight;             // W(R) = prod max(|c(ij)|, 1)
  int a_count = 0;           // pairs with f > m(r)
  int b_count = 0;           // pairs with f < m(r)
  std::vector<int> f_values; // per pair, in pair order
};

WeightProfile weight_profile(const ColorSetGraph& g);

struct LemmaVerdict {
  std::string lemma_name;
  std::string domain_description;
  std::uint64_t checked = 0;
  std::optional<nlohmann::json> counterexample;

  bool holds() const { return !counterexample.has_value(); }
};

nlohmann::json to_json_value(const LemmaVerdict& v);

// Enumeration of r-graphs is capped by r * C(t,2) (bits of raw search space).
inline constexpr int kDefaultRGraphBits = 24;

// Streams every metric r-graph on [t] (empty color sets allowed) in a fixed
// order: pairs in pair order, masks ascending.
void enumerate_metric_rgraphs(int r, int t, const std::function<void(const ColorSetGraph&)>& visit,
                              int max_bits = kDefaultRGraphBits);

std::uint64_t count_metric_rgraphs(int r, int t, int max_bits = kDefaultRGraphBits);

// W(R) <= m^(C(t,2)+t+5) * ((m^2-1)/m^2)^(a_R) over all metric r-graphs on [t].
LemmaVerdict check_weight_bound(int r, int t, int max_bits = kDefaultRGraphBits);

inline constexpr int kDefaultSubsetLemmaMaxR = 8;

// Size lemma: under the |A|,|B|,|C| hypotheses some (a,b,c) in AxBxC violates.
LemmaVerdict check_size_lemma(int r, int max_r = kDefaultSubsetLemmaMaxR);

// Metric triples of m(r)-sets are exactly the classified shapes.
LemmaVerdict check_triangle_classification(int r, int max_r = kDefaultSubsetLemmaMaxR);

// Triangles of a metric r-graph with two heavy sides (f > m): third side is
// light and both heavy-light products are <= m^2 - 1.
LemmaVerdict check_importantcor(int r, int max_r = 6);

// Triangles of a metric r-graph with f = m on all sides follow the
// classification, checked over every metric r-graph on [3].
LemmaVerdict check_keycor(int r, int max_bits = kDefaultRGraphBits);

// The classification predicate itself, exposed for tests.
bool matches_triangle_classification(int r, ColorMask a, ColorMask b, ColorMask c);

}  // namespace rmetric
