#include <doctest.h>

#include "rmetric/errors.hpp"
#include "rmetric/lemmas.hpp"

using namespace rmetric;
using json = nlohmann::json;

namespace {

bool violates_somewhere(ColorMask a, ColorMask b, ColorMask c) {
  for (Color i : colors_in(a))
    for (Color j : colors_in(b))
      for (Color k : colors_in(c))
        if (!(std::abs(i - j) <= k && k <= i + j)) return true;
  return false;
}

}  // namespace

TEST_CASE("weight profile") {
  // r=5, m=3. Sets of size 0, 4 and 2.
  const ColorSetGraph g(Params(5, 3), {0u, ColorSetGraph::mask_of({2, 3, 4, 5}), ColorSetGraph::mask_of({3, 4})});
  const WeightProfile w = weight_profile(g);
  CHECK(w.f_values == std::vector<int>{1, 4, 2});
  CHECK(w.weight == 8);
  CHECK(w.a_count == 1);
  CHECK(w.b_count == 2);
}

TEST_CASE("metric r-graph count matches a mask-level brute force") {
  for (int r : {3, 4}) {
    const ColorMask limit = ColorMask{1} << r;
    std::uint64_t expected = 0;
    for (ColorMask a = 0; a < limit; ++a)
      for (ColorMask b = 0; b < limit; ++b)
        for (ColorMask c = 0; c < limit; ++c) expected += violates_somewhere(a, b, c) ? 0 : 1;
    CHECK(count_metric_rgraphs(r, 3) == expected);
  }
  CHECK_THROWS_AS(count_metric_rgraphs(5, 6), CapacityError);
}

TEST_CASE("enumerated r-graphs are metric and distinct") {
  std::vector<std::vector<ColorMask>> seen;
  enumerate_metric_rgraphs(3, 3, [&](const ColorSetGraph& g) {
    CHECK(is_metric(g));
    seen.emplace_back(g.masks().begin(), g.masks().end());
  });
  CHECK(std::is_sorted(seen.begin(), seen.end()));
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}

TEST_CASE("lemma checks hold on their small domains") {
  for (int r = 3; r <= 6; ++r) {
    const LemmaVerdict size = check_size_lemma(r);
    CHECK(size.holds());
    CHECK(size.checked > 0);
    CHECK(check_triangle_classification(r).holds());
    CHECK(check_importantcor(r).holds());
    CHECK(check_keycor(r).holds());
  }
  CHECK(check_weight_bound(3, 3).holds());
  CHECK(check_weight_bound(4, 3).checked == 1624);
  CHECK_THROWS_AS(check_weight_bound(3, 2), DomainError);
  CHECK_THROWS_AS(check_size_lemma(9), CapacityError);
  CHECK_THROWS_AS(check_size_lemma(2), DomainError);
}

TEST_CASE("triangle classification predicate agrees with the definition") {
  for (int r = 3; r <= 7; ++r) {
    const int m = m_of(r);
    std::vector<ColorMask> sized;
    for (ColorMask s = 1; s < (ColorMask{1} << r); ++s)
      if (mask_size(s) == m) sized.push_back(s);
    for (ColorMask a : sized)
      for (ColorMask b : sized)
        for (ColorMask c : sized) {
          if (violates_somewhere(a, b, c)) continue;
          CHECK(matches_triangle_classification(r, a, b, c));
        }
  }
  // r=4: {2,3,4} on every side is the only shape.
  const ColorMask top = ColorSetGraph::range_mask(2, 4);
  CHECK(matches_triangle_classification(4, top, top, top));
  CHECK_FALSE(matches_triangle_classification(4, top, top, ColorSetGraph::mask_of({1, 2, 3})));
}

TEST_CASE("verdict JSON") {
  const json j = to_json_value(check_triangle_classification(3));
  CHECK(j["lemma"] == "triangle-class");
  CHECK(j["holds"] == true);
  CHECK(j["counterexample"].is_null());
}
