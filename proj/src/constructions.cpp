#include "rmetric/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rmetric/enumeration.hpp"
#include "rmetric/errors.hpp"
#include "rmetric/rng.hpp"
#include "rmetric/serialize.hpp"
#include "search.hpp"

namespace rmetric {

namespace {

// Where every vertex of the amalgam comes from.
struct AmalgamLayout {
  int size = 0;
  std::vector<Vertex> embed_b;  // B vertex -> D vertex
  std::vector<Vertex> from_b;   // D vertex -> B vertex, or -1
};

AmalgamLayout layout_amalgam(const MetricColoring& a, const MetricColoring& b,
                             const Correspondence& shared) {
  if (a.r() != b.r()) throw DomainError("amalgamation factors must share r");
  std::vector<Vertex> a_of_b(static_cast<std::size_t>(b.n()), -1);
  std::vector<bool> a_used(static_cast<std::size_t>(a.n()), false);
  for (const auto& [va, vb] : shared) {
    if (va < 0 || va >= a.n() || vb < 0 || vb >= b.n()) {
      throw DomainError("correspondence vertex out of range");
    }
    if (a_used[va] || a_of_b[vb] >= 0) throw DomainError("correspondence must be one-to-one");
    a_used[va] = true;
    a_of_b[vb] = va;
  }
  for (std::size_t i = 0; i < shared.size(); ++i) {
    for (std::size_t j = i + 1; j < shared.size(); ++j) {
      if (a.dist(shared[i].first, shared[j].first) != b.dist(shared[i].second, shared[j].second)) {
        throw DomainError("A and B disagree on the shared set");
      }
    }
  }
  AmalgamLayout out;
  out.size = a.n();
  out.embed_b.resize(static_cast<std::size_t>(b.n()));
  for (Vertex vb = 0; vb < b.n(); ++vb) {
    out.embed_b[vb] = a_of_b[vb] >= 0 ? a_of_b[vb] : out.size++;
  }
  out.from_b.assign(static_cast<std::size_t>(out.size), -1);
  for (Vertex vb = 0; vb < b.n(); ++vb) out.from_b[out.embed_b[vb]] = vb;
  return out;
}

template <class CrossFn>
Amalgam build_amalgam(const MetricColoring& a, const MetricColoring& b, const AmalgamLayout& layout,
                      CrossFn&& cross) {
  const Params params(a.r(), layout.size);
  MetricColoring d = MetricColoring::from_function(params, [&](Vertex u, Vertex v) {
    if (u < a.n() && v < a.n()) return a.dist(u, v);
    if (layout.from_b[u] >= 0 && layout.from_b[v] >= 0) return b.dist(layout.from_b[u], layout.from_b[v]);
    // One end lies only in A, the other only in B.
    return u < a.n() ? cross(u, layout.from_b[v]) : cross(v, layout.from_b[u]);
  });
  return {std::move(d), layout.embed_b};
}

void require_cr_even(const MetricColoring& g, const char* which) {
  if (g.r() % 2 != 0) throw DomainError("amalgamate_cr needs even r");
  for (std::size_t p = 0; p < g.pair_count(); ++p) {
    if (g.at(p) < g.r() / 2) {
      throw DomainError(std::string(which) + " has a distance below r/2, so it is not in C_r");
    }
  }
}

}  // namespace

Amalgam amalgamate_cr(const MetricColoring& a, const MetricColoring& b, const Correspondence& shared) {
  require_cr_even(a, "A");
  require_cr_even(b, "B");
  const AmalgamLayout layout = layout_amalgam(a, b, shared);
  const int r = a.r();
  return build_amalgam(a, b, layout, [r](Vertex, Vertex) { return r; });
}

Amalgam amalgamate_mr(const MetricColoring& a, const MetricColoring& b, const Correspondence& shared,
                      AmalgamRule rule) {
  if (shared.empty()) throw DomainError("amalgamate_mr needs a nonempty shared set");
  if (!is_metric(a) || !is_metric(b)) throw DomainError("amalgamate_mr needs metric factors");
  const AmalgamLayout layout = layout_amalgam(a, b, shared);
  const int r = a.r();
  return build_amalgam(a, b, layout, [&](Vertex xa, Vertex yb) {
    Color best = rule == AmalgamRule::ShortestPath ? r : 1;
    for (const auto& [ca, cb] : shared) {
      const Color t = std::min(r, a.dist(xa, ca) + b.dist(cb, yb));
      best = rule == AmalgamRule::ShortestPath ? std::min(best, t) : std::max(best, t);
    }
    return best;
  });
}

namespace {

std::vector<MetricColoring> all_metric(int r, int n) {
  std::vector<MetricColoring> out;
  enumerate_metric(r, n, [&](const MetricColoring& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

json correspondence_json(const Correspondence& shared) {
  json out = json::array();
  for (const auto& [va, vb] : shared) out.push_back({va + 1, vb + 1});
  return out;
}

// Partial injections from A's vertices into B's, in a fixed order.
void for_each_correspondence(int a_n, int b_n, bool allow_empty,
                             const std::function<bool(const Correspondence&)>& visit) {
  Correspondence current;
  std::vector<bool> used(static_cast<std::size_t>(b_n), false);
  bool keep_going = true;
  auto rec = [&](auto&& self, Vertex va) -> void {
    if (!keep_going) return;
    if (va == a_n) {
      if (allow_empty || !current.empty()) keep_going = visit(current);
      return;
    }
    self(self, va + 1);
    for (Vertex vb = 0; vb < b_n && keep_going; ++vb) {
      if (used[vb]) continue;
      used[vb] = true;
      current.emplace_back(va, vb);
      self(self, va + 1);
      current.pop_back();
      used[vb] = false;
    }
  };
  rec(rec, 0);
}

bool agrees(const MetricColoring& a, const MetricColoring& b, const Correspondence& shared) {
  for (std::size_t i = 0; i < shared.size(); ++i) {
    for (std::size_t j = i + 1; j < shared.size(); ++j) {
      if (a.dist(shared[i].first, shared[j].first) != b.dist(shared[i].second, shared[j].second)) {
        return false;
      }
    }
  }
  return true;
}

std::optional<std::string> amalgam_defect(const MetricColoring& a, const MetricColoring& b,
                                          const Amalgam& am, bool require_cr) {
  if (find_violating_triangle(am.d)) return "violating triangle";
  std::vector<Vertex> a_vertices(static_cast<std::size_t>(a.n()));
  for (Vertex v = 0; v < a.n(); ++v) a_vertices[v] = v;
  if (am.d.induced(a_vertices) != a) return "A does not embed isometrically";
  if (am.d.induced(am.embed_b) != b) return "B does not embed isometrically";
  if (require_cr) {
    for (std::size_t p = 0; p < am.d.pair_count(); ++p) {
      if (am.d.at(p) < am.d.r() / 2) return "distance below r/2";
    }
  }
  return std::nullopt;
}

LemmaVerdict sweep_amalgamations(const std::string& name, int r, int max_size, bool cr_mode,
                                 AmalgamRule rule) {
  LemmaVerdict verdict;
  verdict.lemma_name = name;
  std::ostringstream domain;
  domain << (cr_mode ? "A, B in C_" : "A, B in M_") << r << " on 1.." << max_size
         << " points, every " << (cr_mode ? "" : "nonempty ") << "agreeing correspondence";
  verdict.domain_description = domain.str();

  std::vector<std::vector<MetricColoring>> by_size(static_cast<std::size_t>(max_size + 1));
  for (int n = 1; n <= max_size; ++n) {
    for (auto& g : all_metric(r, n)) {
      bool keep = true;
      if (cr_mode) {
        for (std::size_t p = 0; p < g.pair_count(); ++p) keep = keep && g.at(p) >= r / 2;
      }
      if (keep) by_size[n].push_back(std::move(g));
    }
  }
  for (int an = 1; an <= max_size; ++an) {
    for (int bn = 1; bn <= max_size; ++bn) {
      for (const auto& a : by_size[an]) {
        for (const auto& b : by_size[bn]) {
          for_each_correspondence(an, bn, cr_mode, [&](const Correspondence& shared) {
            if (!agrees(a, b, shared)) return true;
            const Amalgam am = cr_mode ? amalgamate_cr(a, b, shared) : amalgamate_mr(a, b, shared, rule);
            ++verdict.checked;
            if (auto defect = amalgam_defect(a, b, am, cr_mode)) {
              json cx{{"A", to_json_value(a)},
                      {"B", to_json_value(b)},
                      {"shared", correspondence_json(shared)},
                      {"D", to_json_value(am.d)},
                      {"defect", *defect}};
              if (auto tri = find_violating_triangle(am.d)) {
                cx["triangle"] = {(*tri)[0] + 1, (*tri)[1] + 1, (*tri)[2] + 1};
              }
              verdict.counterexample = std::move(cx);
              return false;
            }
            return true;
          });
          if (verdict.counterexample) return verdict;
        }
      }
    }
  }
  return verdict;
}

}  // namespace

LemmaVerdict check_amalgamation_mr(int r, int max_size, AmalgamRule rule) {
  static_cast<void>(Params(r, 1));
  if (max_size < 1 || max_size > 4) throw DomainError("amalgamation sweep supports sizes 1..4");
  return sweep_amalgamations(rule == AmalgamRule::ShortestPath ? "amalgam-mr" : "amalgam-mr (printed max rule)",
                             r, max_size, false, rule);
}

LemmaVerdict check_amalgamation_cr(int r, int max_size) {
  static_cast<void>(Params(r, 1));
  if (r % 2 != 0) throw DomainError("C_r amalgamation needs even r");
  if (max_size < 1 || max_size > 4) throw DomainError("amalgamation sweep supports sizes 1..4");
  return sweep_amalgamations("amalgam-cr", r, max_size, true, AmalgamRule::ShortestPath);
}

MetricColoring gadget_h(int r) {
  const int m = m_of(r);
  // Pair order (1,2),(1,3),(1,4),(2,3),(2,4),(3,4).
  return MetricColoring(Params(r, 4), {m - 1, r - 1, r, m - 1, r - 1, m - 1});
}

std::string to_string(DCase c) {
  switch (c) {
    case DCase::D1: return "D1";
    case DCase::D2: return "D2";
    case DCase::D3: return "D3";
  }
  return "?";
}

namespace {

struct Classification {
  DCase d_case;
  ComponentDecomposition cocd;
  int ml_index = 0;  // 0-based position of ML(G) in cocd, D2/D3 only
  VertexSet rest;    // Y_s' for D2/D3
  ComponentDecomposition rest_cocd;
};

Classification classify(const MetricColoring& g) {
  const int r = g.r();
  if (r % 2 == 0) throw DomainError("the injection f is defined for odd r");
  if (g.n() < 4) throw DomainError("the injection f needs n >= 4");
  if (!is_cr_member(g)) throw DomainError("G is not in C_r(n)");
  Classification c{DCase::D1, component_decomposition(g), 0, {}, {}};
  if (c.cocd.small_count() >= 4) return c;
  const auto ml = std::find_if(c.cocd.components.begin(), c.cocd.components.end(),
                               [&](const VertexSet& x) { return c.cocd.is_large(x); });
  if (ml == c.cocd.components.end()) {
    throw UnsupportedInstance("G has fewer than 4 small components and no component of size >= 2r; "
                              "no case of f applies");
  }
  c.ml_index = static_cast<int>(ml - c.cocd.components.begin());
  c.rest.assign(ml->begin() + 4, ml->end());
  c.rest_cocd = component_decomposition(g, c.rest);
  c.d_case = c.rest_cocd.large_count() <= 3 ? DCase::D2 : DCase::D3;
  return c;
}

}  // namespace

DCase classify_d_case(const MetricColoring& g) { return classify(g).d_case; }

InjectionTrace inject_f(const MetricColoring& g) {
  Classification cls = classify(g);
  const int r = g.r();
  const int n = g.n();
  const int m = m_of(r);
  const MetricColoring h = gadget_h(r);
  std::vector<Color> d = g.distances();
  auto set = [&](Vertex x, Vertex y, Color c) { d[pair_index(n, x, y)] = c; };

  InjectionTrace trace;
  trace.d_case = cls.d_case;

  if (cls.d_case == DCase::D1) {
    VertexSet big_y;
    for (int i = 0; i < 4; ++i) {
      const VertexSet& yi = cls.cocd.components[i];
      trace.d1_components.push_back(yi);
      trace.y.push_back(yi.front());
      big_y.insert(big_y.end(), yi.begin(), yi.end());
    }
    for (std::size_t i = 0; i < big_y.size(); ++i) {
      for (std::size_t j = i + 1; j < big_y.size(); ++j) set(big_y[i], big_y[j], r - 1);
    }
  } else {
    const VertexSet& ml = cls.cocd.components[cls.ml_index];
    trace.ml_index = cls.ml_index + 1;
    if (cls.ml_index >= 4) throw std::logic_error("ML(G) sits past the fourth component");
    trace.y.assign(ml.begin(), ml.begin() + 4);
    VertexSet big_y;
    for (int i = 0; i < cls.ml_index; ++i) {
      const VertexSet& yi = cls.cocd.components[i];
      big_y.insert(big_y.end(), yi.begin(), yi.end());
    }
    for (std::size_t i = 0; i < big_y.size(); ++i) {
      for (std::size_t j = i + 1; j < big_y.size(); ++j) set(big_y[i], big_y[j], r);
      for (Vertex y : trace.y) set(big_y[i], y, r);
    }
    for (Vertex y : trace.y) {
      for (Vertex z : cls.rest) set(y, z, g.dist(y, z) + 1);
    }
    for (const auto& comp : cls.rest_cocd.components) {
      if (cls.rest_cocd.is_large(comp)) trace.large_of_rest.push_back(comp);
    }

    if (cls.d_case == DCase::D3) {
      const auto& z = trace.large_of_rest;  // already in <_* order, each ascending
      const int k = static_cast<int>(z.size());
      std::vector<int>& seq = trace.index_sequence;
      seq = {1, 1};
      auto pick = [&](int j) { return z[j - 1][seq[j - 1] - 1]; };  // z^j_{i_j}, 1-based j
      for (int j = 2; j < k; ++j) {
        const Color step = g.dist(pick(j - 1), pick(j));
        seq.push_back(seq[j - 1] <= r ? seq[j - 1] + step : seq[j - 1] - step);
        if (seq.back() < 1 || seq.back() > static_cast<int>(z[j].size())) {
          throw std::logic_error("D3 index sequence left its component");
        }
      }
      for (int j = 1; j <= k; ++j) trace.chain.push_back(pick(j));
      for (int j = 0; j + 1 < k; ++j) set(trace.chain[j], trace.chain[j + 1], m - 1);
      set(trace.chain.front(), trace.chain.back(), r);
    }
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) set(trace.y[i], trace.y[j], h.dist(i, j));
  }

  trace.output = MetricColoring(g.params(), d);
  trace.changed = delta(g, trace.output);
  trace.cocd = std::move(cls.cocd);
  if (auto tri = find_violating_triangle(trace.output)) {
    std::ostringstream msg;
    msg << "f(G) has a violating triangle (" << (*tri)[0] + 1 << ',' << (*tri)[1] + 1 << ','
        << (*tri)[2] + 1 << ") in case " << to_string(trace.d_case);
    throw std::logic_error(msg.str());
  }
  if (is_cr_member(trace.output)) throw std::logic_error("f(G) is still in C_r(n)");
  return trace;
}

bool index_sequence_invariants_hold(const MetricColoring& g, const InjectionTrace& trace) {
  if (trace.d_case != DCase::D3) return true;
  const auto& seq = trace.index_sequence;
  const int k = static_cast<int>(seq.size());
  if (k != static_cast<int>(trace.chain.size()) || k < 4) return false;
  for (int i : seq) {
    if (i < 1 || i > 2 * g.r()) return false;
  }
  // 1-based: d(z^{j-1}, z^j) = |i_j - i_{j+1}| for 2 <= j <= k-1.
  for (int j = 2; j <= k - 1; ++j) {
    if (g.dist(trace.chain[j - 2], trace.chain[j - 1]) != std::abs(seq[j - 1] - seq[j])) return false;
  }
  return true;
}

PreimageReport preimage_analysis(int r, int n, std::uint64_t node_budget) {
  if (r % 2 == 0) throw DomainError("preimage analysis concerns odd r");
  if (n < 4) throw DomainError("the injection f needs n >= 4");
  if (r > kMaxColorsSimple) throw DomainError("r too large");
  const Params params(r, n);

  struct Bucket {
    std::uint64_t size = 0;
    std::set<std::size_t> d1_edits;
  };
  std::map<std::vector<std::uint8_t>, Bucket> buckets;

  PreimageReport report;
  report.r = r;
  report.n = n;
  std::vector<Color> buffer(params.pair_count());
  std::uint64_t members = 0;
  detail::for_each_assignment({n, m_of(r) - 1, r, node_budget}, [&](std::span<const std::uint8_t> raw) {
    std::copy(raw.begin(), raw.end(), buffer.begin());
    const MetricColoring g(params, buffer);
    if (!is_cr_member(g)) return true;
    ++members;
    InjectionTrace trace;
    try {
      trace = inject_f(g);
    } catch (const UnsupportedInstance&) {
      ++report.unsupported;
      return true;
    } catch (const DomainError&) {
      throw;
    } catch (const std::logic_error&) {
      ++report.postcondition_failures;
      return true;
    }
    ++report.classified;
    ++report.per_case[trace.d_case];
    if (!index_sequence_invariants_hold(g, trace)) ++report.invariant_failures;
    const auto out_raw = trace.output.raw();
    Bucket& bucket = buckets[std::vector<std::uint8_t>(out_raw.begin(), out_raw.end())];
    ++bucket.size;
    if (trace.d_case == DCase::D1) {
      for (const auto& [x, y] : trace.changed.pairs) bucket.d1_edits.insert(pair_index(n, x, y));
    }
    return true;
  });

  report.cr_count = members;
  report.m_count = count_metric(r, n, SearchOptions{1, node_budget, -1});
  report.distinct_outputs = buckets.size();
  for (const auto& [out, bucket] : buckets) {
    report.max_preimage = std::max(report.max_preimage, bucket.size);
    report.max_d1_edit_union = std::max<std::uint64_t>(report.max_d1_edit_union, bucket.d1_edits.size());
  }
  report.mean_preimage = buckets.empty() ? Rational(0) : Rational(report.classified, buckets.size());
  report.d1_edit_bound = choose2(static_cast<std::size_t>(4 + 8 * r));
  report.d1_edit_bound_holds = report.max_d1_edit_union <= report.d1_edit_bound;
  const auto r2 = static_cast<unsigned>(r * r);
  report.trivial_bound_holds = BigInt(report.max_preimage) <= 10 * ipow(BigInt(r), 64 * r2);
  // |C| <= (1 - R^-1)|M| with R = r^(66 r^2), cleared of denominators.
  const BigInt big_r = ipow(BigInt(r), 66 * r2);
  report.counting_bound_holds = report.m_count <= big_r * (report.m_count - report.cr_count);
  report.strict = report.cr_count < report.m_count;
  return report;
}

ExtensionAxiom::ExtensionAxiom(MetricColoring base_in, MetricColoring extended_in)
    : base(std::move(base_in)), extended(std::move(extended_in)) {
  if (base.n() < 2) throw DomainError("extension axioms need k >= 2");
  if (extended.n() != base.n() + 1) throw DomainError("A' must have exactly one more point than A");
  if (extended.r() != base.r()) throw DomainError("A and A' must share r");
  std::vector<Vertex> first(static_cast<std::size_t>(base.n()));
  for (Vertex v = 0; v < base.n(); ++v) first[v] = v;
  if (extended.induced(first) != base) throw DomainError("A' restricted to [k] must equal A");
}

ExtensionAxiom default_axiom() {
  return ExtensionAxiom(MetricColoring(Params(4, 2), {3}), MetricColoring(Params(4, 3), {3, 2, 2}));
}

std::optional<std::vector<Vertex>> find_extension_failure(const ExtensionAxiom& ax, const MetricColoring& g) {
  if (g.r() != ax.r()) throw DomainError("axiom and structure use different r");
  const int k = ax.k();
  const int n = g.n();
  std::vector<Vertex> tuple;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::optional<std::vector<Vertex>> failure;
  auto extends = [&] {
    for (Vertex y = 0; y < n; ++y) {
      if (used[y]) continue;
      bool ok = true;
      for (int i = 0; i < k && ok; ++i) ok = g.dist(tuple[i], y) == ax.extended.dist(i, k);
      if (ok) return true;
    }
    return false;
  };
  auto rec = [&](auto&& self) -> void {
    if (failure) return;
    const int pos = static_cast<int>(tuple.size());
    if (pos == k) {
      if (!extends()) failure = tuple;
      return;
    }
    for (Vertex v = 0; v < n && !failure; ++v) {
      if (used[v]) continue;
      bool ok = true;
      for (int i = 0; i < pos && ok; ++i) ok = g.dist(tuple[i], v) == ax.base.dist(i, pos);
      if (!ok) continue;
      used[v] = true;
      tuple.push_back(v);
      self(self);
      tuple.pop_back();
      used[v] = false;
    }
  };
  rec(rec);
  return failure;
}

bool eval_extension_axiom(const ExtensionAxiom& ax, const MetricColoring& g) {
  return !find_extension_failure(ax, g).has_value();
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / t;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / t;
  const double center = (p + z2 / (2.0 * t)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::vector<CurvePoint> empirical_mu(const ExtensionAxiom& ax, Family family, int n_lo, int n_hi,
                                     std::uint64_t samples, std::uint64_t seed) {
  if (n_lo < 1 || n_hi < n_lo) throw DomainError("need 1 <= n_lo <= n_hi");
  if (samples == 0) throw DomainError("need at least one sample per point");
  const int r = ax.r();
  if (family == Family::Cr && r % 2 != 0) {
    throw DomainError("direct C_r sampling is only available for even r");
  }
  std::vector<CurvePoint> curve;
  for (int n = n_lo; n <= n_hi; ++n) {
    const std::uint64_t point_seed = derive_seed(seed, static_cast<std::uint64_t>(n));
    CurvePoint point;
    point.n = n;
    point.samples = samples;
    if (family == Family::Cr) {
      Rng rng(point_seed);
      for (std::uint64_t s = 0; s < samples; ++s) {
        if (eval_extension_axiom(ax, sample_even_cr(r, n, rng))) ++point.successes;
      }
    } else {
      const SampleBatch batch = sample_uniform(r, n, samples, point_seed);
      for (const auto& g : batch.samples) {
        if (eval_extension_axiom(ax, g)) ++point.successes;
      }
    }
    point.estimate = static_cast<double>(point.successes) / static_cast<double>(samples);
    const WilsonInterval ci = wilson_interval(point.successes, samples);
    point.ci_low = ci.low;
    point.ci_high = ci.high;
    curve.push_back(point);
  }
  return curve;
}

json to_json_value(const Amalgam& a) {
  json embed = json::array();
  for (Vertex v : a.embed_b) embed.push_back(v + 1);
  return {{"d", to_json_value(a.d)}, {"embed_b", std::move(embed)}};
}

json to_json_value(const InjectionTrace& t) {
  auto one_based = [](const std::vector<Vertex>& vs) {
    json out = json::array();
    for (Vertex v : vs) out.push_back(v + 1);
    return out;
  };
  json j{{"case", to_string(t.d_case)},
         {"cocd", to_json_value(t.cocd)},
         {"y", one_based(t.y)},
         {"d1_components", to_json_value(t.d1_components)},
         {"ml_index", t.ml_index ? json(*t.ml_index) : json(nullptr)},
         {"large_components_of_rest", to_json_value(t.large_of_rest)},
         {"index_sequence", t.index_sequence},
         {"chain", one_based(t.chain)},
         {"changed", to_json_value(t.changed)},
         {"output", to_json_value(t.output)}};
  return j;
}

json to_json_value(const PreimageReport& p) {
  json per_case = json::object();
  for (DCase c : {DCase::D1, DCase::D2, DCase::D3}) {
    const auto it = p.per_case.find(c);
    per_case[to_string(c)] = it == p.per_case.end() ? 0 : it->second;
  }
  return {{"r", p.r},
          {"n", p.n},
          {"cr_count", to_json_value(p.cr_count)},
          {"m_count", to_json_value(p.m_count)},
          {"classified", p.classified},
          {"unsupported", p.unsupported},
          {"per_case", std::move(per_case)},
          {"postcondition_failures", p.postcondition_failures},
          {"invariant_failures", p.invariant_failures},
          {"distinct_outputs", p.distinct_outputs},
          {"max_preimage", p.max_preimage},
          {"mean_preimage", to_json_value(p.mean_preimage)},
          {"max_d1_edit_union", p.max_d1_edit_union},
          {"d1_edit_bound", p.d1_edit_bound},
          {"d1_edit_bound_holds", p.d1_edit_bound_holds},
          {"trivial_bound_holds", p.trivial_bound_holds},
          {"counting_bound_holds", p.counting_bound_holds},
          {"strict", p.strict}};
}

json to_json_value(const ExtensionAxiom& ax) {
  return {{"base", to_json_value(ax.base)}, {"extended", to_json_value(ax.extended)}};
}

ExtensionAxiom extension_axiom_from_json(const json& j) {
  if (!j.is_object() || !j.contains("base") || !j.contains("extended")) {
    throw DomainError("an axiom needs \"base\" and \"extended\" colorings");
  }
  return ExtensionAxiom(metric_coloring_from_json(j.at("base")), metric_coloring_from_json(j.at("extended")));
}

json to_json_value(const std::vector<CurvePoint>& curve) {
  json points = json::array();
  for (const auto& p : curve) {
    points.push_back({{"n", p.n},
                      {"samples", p.samples},
                      {"successes", p.successes},
                      {"estimate", p.estimate},
                      {"ci_low", p.ci_low},
                      {"ci_high", p.ci_high}});
  }
  return points;
}

std::string to_csv(const std::vector<CurvePoint>& curve) {
  std::ostringstream out;
  out << kCurveCsvHeader << '\n';
  out.precision(17);
  for (const auto& p : curve) {
    out << p.n << ',' << p.estimate << ',' << p.ci_low << ',' << p.ci_high << ',' << p.samples << '\n';
  }
  return out.str();
}

}  // namespace rmetric
