#include "rmetric/core.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <string>

#include "rmetric/errors.hpp"

namespace rmetric {

Params::Params(int r_, int n_) : r(r_), n(n_) {
  if (r < 3) throw DomainError("r must be >= 3, got " + std::to_string(r));
  if (n < 1) throw DomainError("n must be >= 1, got " + std::to_string(n));
}

int m_of(int r) {
  if (r < 3) throw DomainError("m(r) requires r >= 3, got " + std::to_string(r));
  return (r + 2) / 2;  // ceil((r+1)/2)
}

std::size_t pair_index(int n, Vertex x, Vertex y) {
  if (x > y) std::swap(x, y);
  const auto i = static_cast<std::size_t>(x);
  const auto nn = static_cast<std::size_t>(n);
  return i * nn - i * (i + 1) / 2 + static_cast<std::size_t>(y - x - 1);
}

std::pair<Vertex, Vertex> pair_vertices(int n, std::size_t index) {
  Vertex x = 0;
  std::size_t row = static_cast<std::size_t>(n - 1);
  while (index >= row) {
    index -= row;
    --row;
    ++x;
  }
  return {x, x + 1 + static_cast<Vertex>(index)};
}

// --- MetricColoring -------------------------------------------------------

MetricColoring::MetricColoring(Params params, std::span<const Color> distances)
    : params_(params) {
  if (params_.r > kMaxColorsSimple) {
    throw DomainError("r above " + std::to_string(kMaxColorsSimple) + " is not supported");
  }
  if (distances.size() != params_.pair_count()) {
    throw DomainError("expected " + std::to_string(params_.pair_count()) + " distances, got " +
                      std::to_string(distances.size()));
  }
  d_.reserve(distances.size());
  for (Color c : distances) {
    if (c < 1 || c > params_.r) {
      throw DomainError("distance " + std::to_string(c) + " outside [1, " +
                        std::to_string(params_.r) + "]");
    }
    d_.push_back(static_cast<std::uint8_t>(c));
  }
}

MetricColoring::MetricColoring(Params params, std::initializer_list<Color> distances)
    : MetricColoring(params, std::span<const Color>(distances.begin(), distances.size())) {}

MetricColoring MetricColoring::constant(Params params, Color c) {
  std::vector<Color> d(params.pair_count(), c);
  return MetricColoring(params, d);
}

MetricColoring MetricColoring::from_function(Params params,
                                             const std::function<Color(Vertex, Vertex)>& dist) {
  std::vector<Color> d;
  d.reserve(params.pair_count());
  for (Vertex x = 0; x < params.n; ++x) {
    for (Vertex y = x + 1; y < params.n; ++y) d.push_back(dist(x, y));
  }
  return MetricColoring(params, d);
}

Color MetricColoring::dist(Vertex x, Vertex y) const {
  if (x == y || x < 0 || y < 0 || x >= params_.n || y >= params_.n) {
    throw DomainError("dist needs two distinct vertices in range");
  }
  return d_[pair_index(params_.n, x, y)];
}

std::vector<Color> MetricColoring::distances() const { return {d_.begin(), d_.end()}; }

MetricColoring MetricColoring::induced(std::span<const Vertex> vertices) const {
  const int k = static_cast<int>(vertices.size());
  return from_function(Params(params_.r, std::max(k, 1)), [&](Vertex a, Vertex b) {
    return dist(vertices[static_cast<std::size_t>(a)], vertices[static_cast<std::size_t>(b)]);
  });
}

std::strong_ordering operator<=>(const MetricColoring& a, const MetricColoring& b) {
  if (auto c = a.params_.r <=> b.params_.r; c != 0) return c;
  if (auto c = a.params_.n <=> b.params_.n; c != 0) return c;
  return std::lexicographical_compare_three_way(a.d_.begin(), a.d_.end(), b.d_.begin(),
                                                b.d_.end());
}

// --- ColorSetGraph --------------------------------------------------------

ColorSetGraph::ColorSetGraph(Params params, std::span<const ColorMask> colors)
    : params_(params), c_(colors.begin(), colors.end()) {
  if (params_.r > kMaxColorsMask) {
    throw DomainError("ColorSetGraph supports r <= " + std::to_string(kMaxColorsMask));
  }
  if (c_.size() != params_.pair_count()) {
    throw DomainError("expected " + std::to_string(params_.pair_count()) + " color sets, got " +
                      std::to_string(c_.size()));
  }
  const ColorMask allowed = range_mask(1, params_.r);
  for (ColorMask m : c_) {
    if ((m & ~allowed) != 0) throw DomainError("color set contains a color outside [1, r]");
  }
}

ColorSetGraph::ColorSetGraph(Params params, std::initializer_list<ColorMask> colors)
    : ColorSetGraph(params, std::span<const ColorMask>(colors.begin(), colors.size())) {}

ColorMask ColorSetGraph::mask_of(std::initializer_list<Color> colors) {
  ColorMask m = 0;
  for (Color c : colors) {
    if (c < 1 || c > kMaxColorsMask) throw DomainError("color out of range");
    m |= ColorMask{1} << (c - 1);
  }
  return m;
}

ColorMask ColorSetGraph::range_mask(Color lo, Color hi) {
  ColorMask m = 0;
  for (Color c = std::max(lo, 1); c <= std::min(hi, kMaxColorsMask); ++c) m |= ColorMask{1} << (c - 1);
  return m;
}

ColorMask ColorSetGraph::colors(Vertex x, Vertex y) const { return c_[pair_index(params_.n, x, y)]; }

std::vector<Color> colors_in(ColorMask mask) {
  std::vector<Color> out;
  for (Color c = 1; mask != 0; ++c, mask >>= 1) {
    if (mask & 1u) out.push_back(c);
  }
  return out;
}

int mask_size(ColorMask mask) { return std::popcount(mask); }

// --- triangle calculus ----------------------------------------------------

bool is_violating_triple(Color i, Color j, Color k) {
  return !(std::abs(i - j) <= k && k <= i + j);
}

bool is_metric_triangle(Color i, Color j, Color k) {
  return !is_violating_triple(i, j, k) && !is_violating_triple(j, k, i) &&
         !is_violating_triple(k, i, j);
}

ColorMask forbidden_third_colors(int r, ColorMask a, ColorMask b) {
  ColorMask bad = 0;
  for (Color i : colors_in(a)) {
    for (Color j : colors_in(b)) {
      // c violates iff c < |i-j| or c > i+j.
      bad |= ColorSetGraph::range_mask(1, std::abs(i - j) - 1);
      bad |= ColorSetGraph::range_mask(i + j + 1, r);
    }
  }
  return bad & ColorSetGraph::range_mask(1, r);
}

bool is_metric_set(int r, ColorMask set) {
  if (r < 3) throw DomainError("r must be >= 3");
  if (set == 0) throw DomainError("metric-set test needs a nonempty set");
  if ((set & ~ColorSetGraph::range_mask(1, r)) != 0) throw DomainError("set is not inside [r]");
  return (forbidden_third_colors(r, set, set) & set) == 0;
}

std::optional<std::array<Vertex, 3>> find_violating_triangle(const MetricColoring& g) {
  const int n = g.n();
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      const Color a = g.dist(x, y);
      for (Vertex z = y + 1; z < n; ++z) {
        if (!is_metric_triangle(a, g.dist(y, z), g.dist(x, z))) return std::array{x, y, z};
      }
    }
  }
  return std::nullopt;
}

std::optional<std::array<Vertex, 3>> find_violating_triangle(const ColorSetGraph& g) {
  const int n = g.n();
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      for (Vertex z = y + 1; z < n; ++z) {
        const ColorMask bad = forbidden_third_colors(g.r(), g.colors(x, y), g.colors(y, z));
        if ((bad & g.colors(x, z)) != 0) return std::array{x, y, z};
      }
    }
  }
  return std::nullopt;
}

bool is_metric(const MetricColoring& g) { return !find_violating_triangle(g).has_value(); }
bool is_metric(const ColorSetGraph& g) { return !find_violating_triangle(g).has_value(); }

EditSet delta(const MetricColoring& g, const MetricColoring& h) {
  if (g.params() != h.params()) throw DomainError("delta needs colorings with equal r and n");
  EditSet out;
  for (std::size_t p = 0; p < g.pair_count(); ++p) {
    if (g.at(p) != h.at(p)) out.pairs.push_back(pair_vertices(g.n(), p));
  }
  return out;
}

bool is_delta_close(const MetricColoring& g, const MetricColoring& h, const Rational& delta_bound) {
  if (delta_bound < 0) throw DomainError("delta must be >= 0");
  const auto edits = delta(g, h).size();
  return Rational(static_cast<long long>(edits)) <=
         delta_bound * Rational(static_cast<long long>(g.n()) * g.n());
}

}  // namespace rmetric
