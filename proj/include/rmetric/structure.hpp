#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "rmetric/core.hpp"

namespace rmetric {

using VertexSet = std::vector<Vertex>;  // sorted ascending

// X <_* Y: smaller first, ties broken by the smaller minimum element.
bool star_less(const VertexSet& x, const VertexSet& y);

// Maximal sets connected by edges of color exactly m(r)-1, sorted by <_*.
struct ComponentDecomposition {
  std::vector<VertexSet> components;
  int large_threshold = 0;  // 2r

  bool is_large(const VertexSet& c) const {
    return static_cast<int>(c.size()) >= large_threshold;
  }
  int small_count() const;
  int large_count() const;
};

ComponentDecomposition component_decomposition(const MetricColoring& g);

// Components of G[vertices] under the same (m(r)-1)-edge relation, in <_* order.
ComponentDecomposition component_decomposition(const MetricColoring& g,
                                               std::span<const Vertex> vertices);

// ML(G): the <_*-least component of size >= 2r, if any.
std::optional<VertexSet> minimal_large_component(const ComponentDecomposition& d);

struct BadCycle {
  std::vector<Vertex> vertices;  // z_1 ... z_k
  bool meets_length_four() const { return vertices.size() >= 4; }
  friend bool operator==(const BadCycle&, const BadCycle&) = default;
};

// Shortest bad cycle, ties broken lexicographically on the vertex sequence.
std::optional<BadCycle> find_bad_cycle(const MetricColoring& g);

struct LowPair {
  Vertex x = 0;
  Vertex y = 0;
  Color color = 0;
  friend bool operator==(const LowPair&, const LowPair&) = default;
};

using CrViolation = std::variant<LowPair, BadCycle>;

struct CrMembershipCertificate {
  bool member = false;
  std::optional<std::vector<VertexSet>> partition;  // odd r members only
  std::optional<CrViolation> violation;             // non-members only
};

CrMembershipCertificate cr_membership(const MetricColoring& g);
bool is_cr_member(const MetricColoring& g);

// Checks a certificate against the definition directly: a member's partition
// must make every pair legal, a non-member's violation must be real.
bool verify_certificate(const MetricColoring& g, const CrMembershipCertificate& cert);

// Restricted-growth-string enumeration of the set partitions of {0..n-1};
// block[v] is the block index of v. Stops early if visit returns false.
void for_each_set_partition(int n, const std::function<bool(std::span<const int>)>& visit);

struct NearestCr {
  int distance = 0;
  MetricColoring witness;
};

inline constexpr int kDefaultNearestLimit = 10;

NearestCr nearest_cr_distance(const MetricColoring& g, int brute_force_limit = kDefaultNearestLimit);

struct Hub {
  Vertex vertex = 0;
  Color color = 0;
  int degree = 0;
  friend bool operator==(const Hub&, const Hub&) = default;
};

// First (x, l) with l in [m(r)-2] and |{y : d(x,y) = l}| >= eps * n.
std::optional<Hub> low_color_hub(const MetricColoring& g, const Rational& eps);

enum class HubClass { InA, InAPrime, Neither };
HubClass hub_class(const MetricColoring& g, const Rational& eps);

}  // namespace rmetric
