#include "rmetric/lemmas.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "rmetric/errors.hpp"
#include "rmetric/serialize.hpp"

namespace rmetric {

json to_json_value(const LemmaVerdict& v) {
  return {{"lemma", v.lemma_name},
          {"domain", v.domain_description},
          {"checked", v.checked},
          {"holds", v.holds()},
          {"counterexample", v.counterexample ? *v.counterexample : json(nullptr)}};
}

WeightProfile weight_profile(const ColorSetGraph& g) {
  const int m = m_of(g.r());
  WeightProfile out;
  out.weight = 1;
  out.f_values.reserve(g.pair_count());
  for (ColorMask mask : g.masks()) {
    const int f = std::max(mask_size(mask), 1);  // empty sets count as 1, not skipped
    out.f_values.push_back(f);
    out.weight *= f;
    if (f > m) ++out.a_count;
    if (f < m) ++out.b_count;
  }
  return out;
}

namespace {

// forbidden_third_colors memoized over all mask pairs for small r.
class ForbiddenTable {
 public:
  explicit ForbiddenTable(int r) : r_(r) {
    if (r_ <= 10) {
      const std::size_t size = std::size_t{1} << r_;
      table_.resize(size * size);
      for (std::size_t a = 0; a < size; ++a) {
        for (std::size_t b = 0; b < size; ++b) {
          table_[a * size + b] =
              forbidden_third_colors(r_, static_cast<ColorMask>(a), static_cast<ColorMask>(b));
        }
      }
    }
  }
  ColorMask operator()(ColorMask a, ColorMask b) const {
    if (table_.empty()) return forbidden_third_colors(r_, a, b);
    return table_[(static_cast<std::size_t>(a) << r_) + b];
  }

 private:
  int r_;
  std::vector<ColorMask> table_;
};

// Direct restatement of "some (a,b,c) in AxBxC is a violating triple" used to
// re-verify any counterexample before it is reported.
bool has_violating_triple(ColorMask a, ColorMask b, ColorMask c) {
  for (Color i : colors_in(a)) {
    for (Color j : colors_in(b)) {
      for (Color k : colors_in(c)) {
        if (is_violating_triple(i, j, k)) return true;
      }
    }
  }
  return false;
}

void check_bits(int r, int t, int max_bits) {
  if (r < 3) throw DomainError("r must be >= 3");
  if (t < 2) throw DomainError("t must be >= 2");
  if (r > kMaxColorsMask) throw DomainError("r-graph enumeration supports r <= 32");
  const long long bits = static_cast<long long>(r) * static_cast<long long>(choose2(t));
  if (bits > max_bits) {
    throw CapacityError("enumerating r-graphs with r=" + std::to_string(r) + ", t=" +
                        std::to_string(t) + " needs 2^" + std::to_string(bits) +
                        " raw assignments; budget is 2^" + std::to_string(max_bits));
  }
}

json masks_json(std::initializer_list<ColorMask> masks) {
  json out = json::array();
  for (ColorMask m : masks) out.push_back(colors_in(m));
  return out;
}

}  // namespace

void enumerate_metric_rgraphs(int r, int t, const std::function<void(const ColorSetGraph&)>& visit,
                              int max_bits) {
  check_bits(r, t, max_bits);
  const Params params(r, t);
  const std::size_t pairs = params.pair_count();
  const std::uint64_t limit = std::uint64_t{1} << r;
  std::optional<ForbiddenTable> table;
  if (t >= 3) table.emplace(r);

  // For each pair p = (i, j), the triangles closed when p is assigned last.
  std::vector<std::vector<std::array<std::size_t, 2>>> closing(pairs);
  for (std::size_t p = 0; p < pairs; ++p) {
    const auto [i, j] = pair_vertices(t, p);
    for (Vertex k = 0; k < t; ++k) {
      if (k == i || k == j) continue;
      const std::size_t q1 = pair_index(t, i, k);
      const std::size_t q2 = pair_index(t, j, k);
      if (q1 < p && q2 < p) closing[p].push_back({q1, q2});
    }
  }

  std::vector<ColorMask> masks(pairs, 0);
  auto dfs = [&](auto&& self, std::size_t p) -> void {
    if (p == pairs) {
      visit(ColorSetGraph(params, masks));
      return;
    }
    for (std::uint64_t wide = 0; wide < limit; ++wide) {
      const auto m = static_cast<ColorMask>(wide);
      bool ok = true;
      for (const auto& [q1, q2] : closing[p]) {
        if (((*table)(masks[q1], masks[q2]) & m) != 0) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      masks[p] = m;
      self(self, p + 1);
    }
  };
  dfs(dfs, 0);
}

std::uint64_t count_metric_rgraphs(int r, int t, int max_bits) {
  std::uint64_t count = 0;
  enumerate_metric_rgraphs(r, t, [&](const ColorSetGraph&) { ++count; }, max_bits);
  return count;
}

LemmaVerdict check_weight_bound(int r, int t, int max_bits) {
  if (t < 3) throw DomainError("the weight bound is stated for t >= 3");
  const int m = m_of(r);
  const BigInt mm(m);
  const BigInt base = ipow(mm, static_cast<unsigned>(choose2(t) + t + 5));
  LemmaVerdict verdict;
  verdict.lemma_name = "weight-bound";
  verdict.domain_description = "all metric " + std::to_string(r) + "-graphs on " +
                               std::to_string(t) + " vertices";
  enumerate_metric_rgraphs(
      r, t,
      [&](const ColorSetGraph& g) {
        ++verdict.checked;
        if (verdict.counterexample) return;
        const WeightProfile w = weight_profile(g);
        const auto a = static_cast<unsigned>(w.a_count);
        // W <= base * ((m^2-1)/m^2)^a  <=>  W * m^(2a) <= base * (m^2-1)^a
        const BigInt lhs = w.weight * ipow(mm, 2 * a);
        const BigInt rhs = base * ipow(mm * mm - 1, a);
        if (lhs <= rhs) return;
        BigInt direct = 1;
        for (ColorMask mask : g.masks()) direct *= std::max(mask_size(mask), 1);
        if (direct * ipow(mm, 2 * a) <= rhs || !is_metric(g)) {
          throw std::logic_error("weight-bound counterexample failed re-verification");
        }
        verdict.counterexample = json{{"graph", to_json_value(g)},
                                      {"weight", w.weight.str()},
                                      {"a_count", w.a_count},
                                      {"bound_numerator", rhs.str()},
                                      {"bound_denominator", ipow(mm, 2 * a).str()}};
      },
      max_bits);
  return verdict;
}

LemmaVerdict check_size_lemma(int r, int max_r) {
  if (r < 3) throw DomainError("r must be >= 3");
  if (r > max_r) {
    throw CapacityError("size-lemma check enumerates 8^r subset triples; r=" + std::to_string(r) +
                        " exceeds the limit " + std::to_string(max_r));
  }
  const int m = m_of(r);
  const ColorMask limit = ColorMask{1} << r;
  LemmaVerdict verdict;
  verdict.lemma_name = "size-lemma";
  verdict.domain_description = "all (A,B,C) of nonempty subsets of [" + std::to_string(r) +
                               "] meeting the size hypotheses";
  for (ColorMask a = 1; a < limit; ++a) {
    const int sa = mask_size(a);
    if (sa <= m) continue;
    for (ColorMask b = 1; b < limit; ++b) {
      const int sb = mask_size(b);
      if (sb < m || sb > sa) continue;
      const int x = sa - m;
      const int y = sb - m;
      const int c_min = std::max(m - x - y + (r % 2 == 1 ? 2 : 0), 1);
      if (c_min > sb) continue;  // hypotheses vacuous for this (A,B)
      const ColorMask bad = forbidden_third_colors(r, a, b);
      for (ColorMask c = 1; c < limit; ++c) {
        const int sc = mask_size(c);
        if (sc < c_min || sc > sb) continue;
        ++verdict.checked;
        if ((bad & c) != 0 || verdict.counterexample) continue;
        if (has_violating_triple(a, b, c)) {
          throw std::logic_error("size-lemma counterexample failed re-verification");
        }
        verdict.counterexample = json{{"A", colors_in(a)}, {"B", colors_in(b)}, {"C", colors_in(c)}};
      }
    }
  }
  return verdict;
}

bool matches_triangle_classification(int r, ColorMask a, ColorMask b, ColorMask c) {
  const int m = m_of(r);
  if (r % 2 == 0) {
    const ColorMask target = ColorSetGraph::range_mask(m - 1, r);
    return a == target && b == target && c == target;
  }
  const ColorMask low = ColorSetGraph::range_mask(m - 1, r - 1);
  if (a == low && b == low && c == low) return true;
  const ColorMask high = ColorSetGraph::range_mask(m, r);
  const ColorMask wide = ColorSetGraph::range_mask(m - 1, r);
  const std::array<ColorMask, 3> sets{a, b, c};
  for (int e = 0; e < 3; ++e) {
    const ColorMask d = sets[(e + 1) % 3];
    const ColorMask f = sets[(e + 2) % 3];
    if (d == high && f == high && (sets[e] & ~wide) == 0) return true;
  }
  return false;
}

LemmaVerdict check_triangle_classification(int r, int max_r) {
  if (r < 3) throw DomainError("r must be >= 3");
  if (r > max_r) {
    throw CapacityError("triangle classification check supports r <= " + std::to_string(max_r));
  }
  const int m = m_of(r);
  const ColorMask limit = ColorMask{1} << r;
  std::vector<ColorMask> sized;
  for (ColorMask s = 1; s < limit; ++s) {
    if (mask_size(s) == m) sized.push_back(s);
  }
  LemmaVerdict verdict;
  verdict.lemma_name = "triangle-class";
  verdict.domain_description = "all (A,B,C) of " + std::to_string(m) + "-subsets of [" +
                               std::to_string(r) + "] with no violating triple";
  for (ColorMask a : sized) {
    for (ColorMask b : sized) {
      const ColorMask bad = forbidden_third_colors(r, a, b);
      for (ColorMask c : sized) {
        if ((bad & c) != 0) continue;
        ++verdict.checked;
        if (verdict.counterexample || matches_triangle_classification(r, a, b, c)) continue;
        if (has_violating_triple(a, b, c)) {
          throw std::logic_error("triangle-class counterexample failed re-verification");
        }
        verdict.counterexample = json{{"A", colors_in(a)}, {"B", colors_in(b)}, {"C", colors_in(c)}};
      }
    }
  }
  return verdict;
}

LemmaVerdict check_importantcor(int r, int max_r) {
  if (r < 3) throw DomainError("r must be >= 3");
  if (r > max_r) throw CapacityError("importantcor check supports r <= " + std::to_string(max_r));
  const int m = m_of(r);
  const ColorMask limit = ColorMask{1} << r;
  LemmaVerdict verdict;
  verdict.lemma_name = "importantcor";
  verdict.domain_description = "all metric " + std::to_string(r) +
                               "-graphs on 3 vertices, every labelling (u,v,w)";
  // A metric r-graph on [3] is a triple of masks (uv, vw, uw) with no
  // violating choice; violation is symmetric, so one test covers all labellings.
  for (ColorMask uv = 0; uv < limit; ++uv) {
    for (ColorMask vw = 0; vw < limit; ++vw) {
      const ColorMask bad = forbidden_third_colors(r, uv, vw);
      for (ColorMask uw = 0; uw < limit; ++uw) {
        if ((bad & uw) != 0) continue;
        const int f_uv = std::max(mask_size(uv), 1);
        const int f_vw = std::max(mask_size(vw), 1);
        const int f_uw = std::max(mask_size(uw), 1);
        if (!(f_uv >= f_vw && f_vw > m)) continue;
        ++verdict.checked;
        const bool ok = f_uw < m && f_uv * f_uw <= m * m - 1 && f_vw * f_uw <= m * m - 1;
        if (ok || verdict.counterexample) continue;
        if (has_violating_triple(uv, vw, uw)) {
          throw std::logic_error("importantcor counterexample failed re-verification");
        }
        verdict.counterexample = json{{"uv", colors_in(uv)}, {"vw", colors_in(vw)}, {"uw", colors_in(uw)}};
      }
    }
  }
  return verdict;
}

LemmaVerdict check_keycor(int r, int max_bits) {
  const int m = m_of(r);
  LemmaVerdict verdict;
  verdict.lemma_name = "keycor";
  verdict.domain_description = "all metric " + std::to_string(r) +
                               "-graphs on 3 vertices with every side of size m(r)";
  enumerate_metric_rgraphs(
      r, 3,
      [&](const ColorSetGraph& g) {
        const ColorMask a = g.at(0), b = g.at(1), c = g.at(2);
        if (mask_size(a) != m || mask_size(b) != m || mask_size(c) != m) return;
        ++verdict.checked;
        if (verdict.counterexample || matches_triangle_classification(r, a, b, c)) return;
        verdict.counterexample = json{{"graph", to_json_value(g)}, {"sets", masks_json({a, b, c})}};
      },
      max_bits);
  return verdict;
}

}  // namespace rmetric
