#include <doctest.h>

#include "oracles.hpp"
#include "rmetric/enumeration.hpp"
#include "rmetric/errors.hpp"
#include "rmetric/structure.hpp"

using namespace rmetric;

TEST_CASE("components follow the <_* order") {
  // r=3: color 1 links. Components {1,2,3}, {4}, {5,6}.
  const MetricColoring g = MetricColoring::from_function(Params(3, 6), [](Vertex x, Vertex y) {
    auto block = [](Vertex v) { return v <= 2 ? 0 : (v == 3 ? 1 : 2); };
    return block(x) == block(y) ? 1 : 2;
  });
  const ComponentDecomposition d = component_decomposition(g);
  REQUIRE(d.components.size() == 3);
  CHECK(d.components[0] == VertexSet{3});
  CHECK(d.components[1] == VertexSet{4, 5});
  CHECK(d.components[2] == VertexSet{0, 1, 2});
  CHECK(d.large_threshold == 6);
  CHECK(d.small_count() == 3);
  CHECK_FALSE(minimal_large_component(d).has_value());

  CHECK(star_less(VertexSet{5}, VertexSet{0, 1}));
  CHECK(star_less(VertexSet{0, 9}, VertexSet{1, 2}));
  CHECK_FALSE(star_less(VertexSet{1, 2}, VertexSet{0, 9}));
}

TEST_CASE("minimal large component") {
  // r=3, n=14: a 6-block and an 8-block, both large; the 6-block is ML.
  const MetricColoring g = MetricColoring::from_function(Params(3, 14), [](Vertex x, Vertex y) {
    return (x < 8) == (y < 8) ? 1 : 2;
  });
  const auto d = component_decomposition(g);
  CHECK(d.large_count() == 2);
  const auto ml = minimal_large_component(d);
  REQUIRE(ml.has_value());
  CHECK(ml->size() == 6);
  CHECK(ml->front() == 8);
}

TEST_CASE("bad cycles on the gadget shape") {
  // H for r=3: d = (1,2,3,1,2,1).
  const MetricColoring h(Params(3, 4), {1, 2, 3, 1, 2, 1});
  const auto cycle = find_bad_cycle(h);
  REQUIRE(cycle.has_value());
  CHECK(cycle->vertices == std::vector<Vertex>{0, 1, 2, 3});
  CHECK(cycle->meets_length_four());
  const auto cert = cr_membership(h);
  CHECK_FALSE(cert.member);
  CHECK(verify_certificate(h, cert));

  // The shortest bad cycle has three vertices and is itself a violating triangle.
  const MetricColoring short_cycle(Params(3, 3), {1, 3, 1});
  CHECK_FALSE(is_metric(short_cycle));
  const auto c3 = find_bad_cycle(short_cycle);
  REQUIRE(c3.has_value());
  CHECK(c3->vertices.size() == 3);
  CHECK_FALSE(c3->meets_length_four());
}

TEST_CASE("membership matches the partition oracle, certificates verify") {
  for (int r : {3, 4, 5}) {
    const int n = 4;
    std::uint64_t members = 0;
    enumerate_metric(r, n, [&](const MetricColoring& g) {
      const oracle::Dist d(g.raw().begin(), g.raw().end());
      const bool expected = oracle::cr_member(r, n, d);
      const auto cert = cr_membership(g);
      CHECK(cert.member == expected);
      CHECK(is_cr_member(g) == expected);
      CHECK(verify_certificate(g, cert));
      if (r % 2 == 1 && !expected) {
        // Odd-r non-members with all distances >= m-1 must carry a bad cycle.
        bool low = false;
        for (std::size_t p = 0; p < g.pair_count(); ++p) low = low || g.at(p) < (r - 1) / 2;
        if (!low) CHECK(oracle::has_bad_cycle(r, n, d));
      }
      members += expected;
      return true;
    });
    CHECK(BigInt(members) == count_cr(r, n));
  }
}

TEST_CASE("forged certificates are rejected") {
  const MetricColoring h(Params(3, 4), {1, 2, 3, 1, 2, 1});
  CrMembershipCertificate lie;
  lie.member = true;
  lie.partition = std::vector<VertexSet>{{0, 1, 2, 3}};
  CHECK_FALSE(verify_certificate(h, lie));
  CrMembershipCertificate wrong_violation;
  wrong_violation.violation = LowPair{0, 1, 1};  // 1 is not below (r-1)/2 = 1
  CHECK_FALSE(verify_certificate(h, wrong_violation));
}

TEST_CASE("set partitions are counted by the Bell numbers") {
  const std::uint64_t bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
  for (int n = 1; n <= 8; ++n) {
    std::uint64_t count = 0;
    for_each_set_partition(n, [&](std::span<const int> block) {
      CHECK(block[0] == 0);
      ++count;
      return true;
    });
    CHECK(count == bell[n]);
    CHECK(count == oracle::bell(n));
  }
}

TEST_CASE("nearest C_r distance equals the exhaustive minimum") {
  for (int r : {3, 4}) {
    const int n = 4;
    int checked = 0;
    enumerate_metric(r, n, [&](const MetricColoring& g) {
      // Every 7th coloring keeps the oracle affordable.
      if (checked++ % 7 != 0) return true;
      const oracle::Dist d(g.raw().begin(), g.raw().end());
      const NearestCr nearest = nearest_cr_distance(g);
      CHECK(nearest.distance == oracle::nearest_cr(r, n, d));
      CHECK(is_cr_member(nearest.witness));
      CHECK(static_cast<int>(delta(g, nearest.witness).size()) == nearest.distance);
      return true;
    });
  }
  const MetricColoring big = MetricColoring::constant(Params(3, 12), 2);
  CHECK_THROWS_AS(nearest_cr_distance(big), CapacityError);
  CHECK(nearest_cr_distance(big, 12).distance == 0);
}

TEST_CASE("low-color hubs") {
  // r=5, m=3: colors 1 count as low. Vertex 0 sees color 1 twice out of 5.
  MetricColoring g = MetricColoring::from_function(Params(5, 6), [](Vertex x, Vertex y) {
    return (x == 0 && (y == 1 || y == 2)) ? 1 : 2;
  });
  const auto hub = low_color_hub(g, Rational(1, 3));
  REQUIRE(hub.has_value());
  CHECK(hub->vertex == 0);
  CHECK(hub->color == 1);
  CHECK(hub->degree == 2);
  CHECK_FALSE(low_color_hub(g, Rational(1, 2)).has_value());
  CHECK(hub_class(g, Rational(1, 3)) == HubClass::InA);
  CHECK(hub_class(g, Rational(1, 2)) == HubClass::InAPrime);
  CHECK(hub_class(MetricColoring::constant(Params(5, 6), 3), Rational(1, 2)) == HubClass::Neither);
  CHECK_THROWS_AS(low_color_hub(g, Rational(0)), DomainError);
  CHECK_THROWS_AS(low_color_hub(g, Rational(3, 2)), DomainError);
}
