#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rmetric/numeric.hpp"

namespace rmetric {

// Distances (colors) are 1-based, matching [r] = {1, ..., r}.
using Color = int;
// Vertices are 0-based in the C++ and Python APIs; serialized forms are 1-based.
using Vertex = int;
// Bit c-1 set <=> color c present. Caps ColorSetGraph at r <= 32.
using ColorMask = std::uint32_t;

inline constexpr int kMaxColorsSimple = 255;
inline constexpr int kMaxColorsMask = 32;

struct Params {
  int r = 3;
  int n = 1;

  Params() = default;
  // Throws DomainError unless r >= 3 and n >= 1.
  Params(int r, int n);

  std::size_t pair_count() const { return choose2(static_cast<std::size_t>(n)); }
  friend bool operator==(const Params&, const Params&) = default;
};

// m(r) = ceil((r+1)/2): the largest size of a metric subset of [r].
int m_of(int r);

// Row-major upper-triangular pair order (0,1),(0,2),...,(0,n-1),(1,2),...
std::size_t pair_index(int n, Vertex x, Vertex y);
std::pair<Vertex, Vertex> pair_vertices(int n, std::size_t index);

// Simple complete r-graph on [n]: one distance per unordered pair. The
// triangle inequality is a predicate (is_metric), not an invariant.
class MetricColoring {
 public:
  MetricColoring() = default;
  MetricColoring(Params params, std::span<const Color> distances);
  MetricColoring(Params params, std::initializer_list<Color> distances);

  static MetricColoring constant(Params params, Color c);
  static MetricColoring from_function(Params params,
                                      const std::function<Color(Vertex, Vertex)>& dist);

  const Params& params() const { return params_; }
  int r() const { return params_.r; }
  int n() const { return params_.n; }
  std::size_t pair_count() const { return d_.size(); }

  Color dist(Vertex x, Vertex y) const;
  Color at(std::size_t pair) const { return d_[pair]; }
  std::span<const std::uint8_t> raw() const { return d_; }
  std::vector<Color> distances() const;

  // G[X] relabelled onto 0..|X|-1 in the order given.
  MetricColoring induced(std::span<const Vertex> vertices) const;

  friend bool operator==(const MetricColoring&, const MetricColoring&) = default;
  friend std::strong_ordering operator<=>(const MetricColoring& a, const MetricColoring& b);

 private:
  Params params_;
  std::vector<std::uint8_t> d_;
};

// General r-graph: each pair carries a (possibly empty) subset of [r].
class ColorSetGraph {
 public:
  ColorSetGraph() = default;
  ColorSetGraph(Params params, std::span<const ColorMask> colors);
  ColorSetGraph(Params params, std::initializer_list<ColorMask> colors);

  static ColorMask mask_of(std::initializer_list<Color> colors);
  static ColorMask range_mask(Color lo, Color hi);

  const Params& params() const { return params_; }
  int r() const { return params_.r; }
  int n() const { return params_.n; }
  std::size_t pair_count() const { return c_.size(); }

  ColorMask colors(Vertex x, Vertex y) const;
  ColorMask at(std::size_t pair) const { return c_[pair]; }
  std::span<const ColorMask> masks() const { return c_; }

  friend bool operator==(const ColorSetGraph&, const ColorSetGraph&) = default;

 private:
  Params params_;
  std::vector<ColorMask> c_;
};

std::vector<Color> colors_in(ColorMask mask);
int mask_size(ColorMask mask);

struct EditSet {
  std::vector<std::pair<Vertex, Vertex>> pairs;  // x < y, in pair order

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
  friend bool operator==(const EditSet&, const EditSet&) = default;
};

// True iff NOT (|i-j| <= k <= i+j). The condition is symmetric in (i, j, k).
bool is_violating_triple(Color i, Color j, Color k);
bool is_metric_triangle(Color i, Color j, Color k);

// Colors c in [r] for which some (a, b, c) with a in A, b in B is violating.
ColorMask forbidden_third_colors(int r, ColorMask a, ColorMask b);

bool is_metric_set(int r, ColorMask set);

// Lexicographically first violating triangle (x < y < z), if any.
std::optional<std::array<Vertex, 3>> find_violating_triangle(const MetricColoring& g);
std::optional<std::array<Vertex, 3>> find_violating_triangle(const ColorSetGraph& g);
bool is_metric(const MetricColoring& g);
bool is_metric(const ColorSetGraph& g);

EditSet delta(const MetricColoring& g, const MetricColoring& h);
bool is_delta_close(const MetricColoring& g, const MetricColoring& h, const Rational& delta_bound);

}  // namespace rmetric
