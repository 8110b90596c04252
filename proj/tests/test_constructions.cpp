#include <doctest.h>

#include "rmetric/constructions.hpp"
#include "rmetric/enumeration.hpp"
#include "rmetric/errors.hpp"
#include "rmetric/serialize.hpp"
#include "rmetric/structure.hpp"

using namespace rmetric;
using json = nlohmann::json;

namespace {

// r=3, n=28: vertices 0..3 at distance 1 from everything, then four blocks
// of six with 1 inside a block and 2 across.
MetricColoring d3_fixture() {
  return MetricColoring::from_function(Params(3, 28), [](Vertex x, Vertex y) -> Color {
    if (x < 4 || y < 4) return 1;
    return (x - 4) / 6 == (y - 4) / 6 ? 1 : 2;
  });
}

}  // namespace

TEST_CASE("amalgamation examples") {
  const MetricColoring two(Params(4, 2), {2});
  const Amalgam cr = amalgamate_cr(two, two, {{0, 0}});
  CHECK(cr.d.n() == 3);
  CHECK(cr.d.dist(1, 2) == 4);
  CHECK(cr.embed_b == std::vector<Vertex>{0, 2});

  const Amalgam ones = amalgamate_mr(MetricColoring(Params(3, 2), {1}), MetricColoring(Params(3, 2), {1}), {{0, 0}});
  CHECK(ones.d.dist(1, 2) == 2);
  const Amalgam twos = amalgamate_mr(MetricColoring(Params(3, 2), {2}), MetricColoring(Params(3, 2), {2}), {{0, 0}});
  CHECK(twos.d.dist(1, 2) == 3);

  const MetricColoring a(Params(5, 3), {2, 3, 4});
  const Amalgam same = amalgamate_mr(a, a, {{0, 0}, {1, 1}, {2, 2}});
  CHECK(same.d == a);

  CHECK_THROWS_AS(amalgamate_mr(a, a, {}), DomainError);
  CHECK_THROWS_AS(amalgamate_mr(a, a, {{0, 0}, {1, 2}}), DomainError);
  CHECK_THROWS_AS(amalgamate_cr(MetricColoring(Params(4, 2), {1}), two, {}), DomainError);
  CHECK_THROWS_AS(amalgamate_cr(a, a, {}), DomainError);
}

TEST_CASE("amalgamation sweeps") {
  CHECK(check_amalgamation_mr(3).holds());
  CHECK(check_amalgamation_cr(4).holds());
  const LemmaVerdict printed = check_amalgamation_mr(3, 3, AmalgamRule::AsPrinted);
  REQUIRE_FALSE(printed.holds());
  const json& cx = *printed.counterexample;
  const MetricColoring d = metric_coloring_from_json(cx["D"]);
  CHECK_FALSE(is_metric(d));
}

TEST_CASE("gadget H") {
  CHECK(gadget_h(3) == MetricColoring(Params(3, 4), {1, 2, 3, 1, 2, 1}));
  for (int r : {3, 5, 7, 9}) {
    const MetricColoring h = gadget_h(r);
    CHECK(is_metric(h));
    CHECK_FALSE(is_cr_member(h));
  }
}

TEST_CASE("case classification") {
  CHECK(classify_d_case(MetricColoring::constant(Params(3, 4), 3)) == DCase::D1);
  CHECK(classify_d_case(MetricColoring::constant(Params(3, 7), 1)) == DCase::D2);
  CHECK(classify_d_case(d3_fixture()) == DCase::D3);
  CHECK_THROWS_AS(classify_d_case(MetricColoring::constant(Params(3, 5), 1)), UnsupportedInstance);
  CHECK_THROWS_AS(classify_d_case(MetricColoring::constant(Params(4, 5), 2)), DomainError);
  CHECK_THROWS_AS(classify_d_case(MetricColoring::constant(Params(3, 3), 3)), DomainError);
  CHECK_THROWS_AS(classify_d_case(gadget_h(3)), DomainError);
  CHECK(to_string(DCase::D2) == "D2");
}

TEST_CASE("f on the three cases") {
  const InjectionTrace d1 = inject_f(MetricColoring::constant(Params(3, 4), 3));
  CHECK(d1.output == gadget_h(3));
  CHECK(d1.y == std::vector<Vertex>{0, 1, 2, 3});

  const MetricColoring ones = MetricColoring::constant(Params(3, 7), 1);
  const InjectionTrace d2 = inject_f(ones);
  CHECK(d2.ml_index == 1);
  CHECK(d2.y == std::vector<Vertex>{0, 1, 2, 3});
  CHECK(d2.output.dist(0, 4) == 2);
  CHECK(is_metric(d2.output));
  CHECK_FALSE(is_cr_member(d2.output));

  const MetricColoring g = d3_fixture();
  const InjectionTrace d3 = inject_f(g);
  CHECK(d3.large_of_rest.size() == 4);
  CHECK(d3.index_sequence == std::vector<int>{1, 1, 3, 5});
  CHECK(d3.chain == std::vector<Vertex>{4, 10, 18, 26});
  CHECK(index_sequence_invariants_hold(g, d3));
  CHECK(d3.output.dist(4, 26) == 3);
  CHECK(is_metric(d3.output));
  CHECK_FALSE(is_cr_member(d3.output));
  CHECK(to_json_value(d3)["case"] == "D3");
}

TEST_CASE("f is metric and leaves C_r on every supported small input") {
  for (int n : {4, 5}) {
    enumerate_metric(3, n, [&](const MetricColoring& g) {
      if (!is_cr_member(g)) return true;
      try {
        const InjectionTrace t = inject_f(g);
        CHECK(is_metric(t.output));
        CHECK_FALSE(is_cr_member(t.output));
        CHECK(delta(g, t.output).size() == t.changed.size());
      } catch (const UnsupportedInstance&) {
      }
      return true;
    });
  }
}

TEST_CASE("preimage report") {
  const PreimageReport p = preimage_analysis(3, 4);
  CHECK(p.cr_count == 470);
  CHECK(p.m_count == 482);
  CHECK(p.classified == 64);
  CHECK(p.unsupported == 406);
  CHECK(p.postcondition_failures == 0);
  CHECK(p.max_preimage == 64);
  CHECK(p.d1_edit_bound_holds);
  CHECK(p.trivial_bound_holds);
  CHECK(p.strict);
  CHECK_THROWS_AS(preimage_analysis(4, 4), DomainError);
}

TEST_CASE("extension axioms") {
  const ExtensionAxiom ax = default_axiom();
  CHECK(ax.k() == 2);
  CHECK_FALSE(eval_extension_axiom(ax, MetricColoring::constant(Params(4, 3), 3)));
  const auto failure = find_extension_failure(ax, MetricColoring::constant(Params(4, 3), 3));
  REQUIRE(failure.has_value());
  CHECK(failure->size() == 2);
  CHECK(eval_extension_axiom(ax, MetricColoring::constant(Params(4, 5), 2)));
  CHECK(eval_extension_axiom(ax, MetricColoring(Params(4, 3), {3, 2, 2})));
  CHECK_THROWS_AS(eval_extension_axiom(ax, MetricColoring::constant(Params(3, 3), 2)), DomainError);

  CHECK_THROWS_AS(ExtensionAxiom(MetricColoring(Params(4, 2), {3}), MetricColoring(Params(4, 3), {2, 2, 2})),
                  DomainError);
  CHECK_THROWS_AS(ExtensionAxiom(MetricColoring::constant(Params(4, 1), 1), MetricColoring(Params(4, 2), {2})), DomainError);
  const ExtensionAxiom back = extension_axiom_from_json(to_json_value(ax));
  CHECK(back.base == ax.base);
  CHECK(back.extended == ax.extended);
}

TEST_CASE("Wilson interval") {
  const WilsonInterval zero = wilson_interval(0, 100);
  CHECK(zero.low == doctest::Approx(0.0));
  CHECK(zero.high == doctest::Approx(0.0370).epsilon(0.01));
  const WilsonInterval half = wilson_interval(50, 100);
  CHECK(half.low == doctest::Approx(0.4038).epsilon(0.001));
  CHECK(half.high == doctest::Approx(0.5962).epsilon(0.001));
}

TEST_CASE("empirical curves") {
  const ExtensionAxiom ax = default_axiom();
  const auto a = empirical_mu(ax, Family::Cr, 4, 6, 300, 8);
  const auto b = empirical_mu(ax, Family::Cr, 4, 6, 300, 8);
  CHECK(to_json_value(a) == to_json_value(b));
  CHECK(to_csv(a) == to_csv(b));
  CHECK(to_csv(a).rfind(std::string(kCurveCsvHeader), 0) == 0);
  for (const auto& p : a) {
    CHECK(p.ci_low <= p.estimate);
    CHECK(p.estimate <= p.ci_high);
  }

  // Color 1 never appears in C_4, so an axiom about it holds vacuously.
  const ExtensionAxiom unit(MetricColoring(Params(4, 2), {1}), MetricColoring(Params(4, 3), {1, 1, 1}));
  for (const auto& p : empirical_mu(unit, Family::Cr, 3, 8, 50, 1)) CHECK(p.estimate == 1.0);

  CHECK(empirical_mu(ax, Family::Metric, 4, 4, 50, 2).front().samples == 50);
  const ExtensionAxiom odd(MetricColoring(Params(3, 2), {1}), MetricColoring(Params(3, 3), {1, 1, 1}));
  CHECK_THROWS_AS(empirical_mu(odd, Family::Cr, 4, 5, 10, 1), DomainError);
}
