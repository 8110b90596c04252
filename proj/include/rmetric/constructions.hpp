#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rmetric/core.hpp"
#include "rmetric/lemmas.hpp"
#include "rmetric/structure.hpp"

namespace rmetric {

// ---- amalgamation ---------------------------------------------------------

// (vertex of A, vertex of B) pairs identified in the amalgam.
using Correspondence = std::vector<std::pair<Vertex, Vertex>>;

struct Amalgam {
  MetricColoring d;             // A's vertices keep their numbers; B's others follow
  std::vector<Vertex> embed_b;  // B vertex -> vertex of d
};

// Cross pairs get r. Needs even r and all distances in [r/2, r].
Amalgam amalgamate_cr(const MetricColoring& a, const MetricColoring& b, const Correspondence& shared);

enum class AmalgamRule {
  ShortestPath,  // min over shared c of d_A(x,c) + d_B(c,y), truncated at r
  AsPrinted,     // max over shared c of the same; not metric in general
};

Amalgam amalgamate_mr(const MetricColoring& a, const MetricColoring& b, const Correspondence& shared,
                      AmalgamRule rule = AmalgamRule::ShortestPath);

// All A, B in M_r on at most max_size points and every nonempty agreeing
// correspondence: the amalgam must be metric with both factors embedded.
LemmaVerdict check_amalgamation_mr(int r, int max_size = 3, AmalgamRule rule = AmalgamRule::ShortestPath);

// Same sweep over C_r (even r), empty correspondences included.
LemmaVerdict check_amalgamation_cr(int r, int max_size = 3);

// ---- the injection f ------------------------------------------------------

MetricColoring gadget_h(int r);

enum class DCase { D1, D2, D3 };
std::string to_string(DCase c);

// Domain error unless r is odd, n >= 4 and G is in C_r(n); UnsupportedInstance
// when neither four small components nor a large component exists.
DCase classify_d_case(const MetricColoring& g);

struct InjectionTrace {
  DCase d_case = DCase::D1;
  ComponentDecomposition cocd;
  std::vector<Vertex> y;                   // y_1 < ... the gadget vertices, in H order
  std::vector<VertexSet> d1_components;    // D1: Y_1..Y_4
  std::optional<int> ml_index;             // D2/D3: s with Y_s = ML(G), 1-based
  std::vector<VertexSet> large_of_rest;    // D2/D3: large components of G[Y_s']
  std::vector<int> index_sequence;         // D3: i_1..i_k, 1-based
  std::vector<Vertex> chain;               // D3: z^1_{i_1} .. z^k_{i_k}
  EditSet changed;                         // Delta(G, f(G))
  MetricColoring output;
};

// Applies f; asserts f(G) in M_r(n) \ C_r(n) (std::logic_error otherwise).
InjectionTrace inject_f(const MetricColoring& g);

// The D3 index sequence invariants: i_j in [2r]; |i_j - i_{j+1}| equals
// d(z^{j-1}_{i_{j-1}}, z^j_{i_j}) for 2 <= j <= k-1.
bool index_sequence_invariants_hold(const MetricColoring& g, const InjectionTrace& trace);

struct PreimageReport {
  int r = 0;
  int n = 0;
  BigInt cr_count;
  BigInt m_count;
  std::uint64_t classified = 0;
  std::uint64_t unsupported = 0;
  std::map<DCase, std::uint64_t> per_case;
  std::uint64_t postcondition_failures = 0;
  std::uint64_t invariant_failures = 0;    // D3 index sequence
  std::uint64_t distinct_outputs = 0;
  std::uint64_t max_preimage = 0;
  Rational mean_preimage;
  // D1 buckets: the union of Delta(f(G), G') over the bucket, largest size seen.
  std::uint64_t max_d1_edit_union = 0;
  std::uint64_t d1_edit_bound = 0;         // C(4+8r, 2)
  bool d1_edit_bound_holds = true;
  bool trivial_bound_holds = true;         // max preimage <= 10 r^(64 r^2)
  bool counting_bound_holds = true;        // |C| <= (1 - r^(-66 r^2)) |M|
  bool strict = false;                     // |C| < |M|
};

PreimageReport preimage_analysis(int r, int n, std::uint64_t node_budget = 4'000'000'000ull);

// ---- extension axioms ------------------------------------------------------

struct ExtensionAxiom {
  MetricColoring base;      // A on [k]
  MetricColoring extended;  // A' on [k+1], restricting to A

  // Domain error unless k >= 2, same r, and A' restricted to [k] equals A.
  ExtensionAxiom(MetricColoring base, MetricColoring extended);
  int k() const { return base.n(); }
  int r() const { return base.r(); }
};

// The r = 4 axiom: a pair at distance 3 has a common neighbour at distance 2.
ExtensionAxiom default_axiom();

// An ordered tuple realizing A that no y extends, if one exists.
std::optional<std::vector<Vertex>> find_extension_failure(const ExtensionAxiom& ax, const MetricColoring& g);
bool eval_extension_axiom(const ExtensionAxiom& ax, const MetricColoring& g);

enum class Family { Metric, Cr };

struct CurvePoint {
  int n = 0;
  std::uint64_t samples = 0;
  std::uint64_t successes = 0;
  double estimate = 0;
  double ci_low = 0;
  double ci_high = 0;
};

struct WilsonInterval {
  double low;
  double high;
};
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

std::vector<CurvePoint> empirical_mu(const ExtensionAxiom& ax, Family family, int n_lo, int n_hi,
                                     std::uint64_t samples, std::uint64_t seed);

// ---- serialization ---------------------------------------------------------

nlohmann::json to_json_value(const Amalgam& a);
nlohmann::json to_json_value(const InjectionTrace& t);
nlohmann::json to_json_value(const PreimageReport& p);
nlohmann::json to_json_value(const ExtensionAxiom& ax);
ExtensionAxiom extension_axiom_from_json(const nlohmann::json& j);
nlohmann::json to_json_value(const std::vector<CurvePoint>& curve);
inline constexpr const char* kCurveCsvHeader = "n,estimate,ci_low,ci_high,samples";
std::string to_csv(const std::vector<CurvePoint>& curve);

}  // namespace rmetric
