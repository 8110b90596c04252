#include "rmetric/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "rmetric/errors.hpp"
#include "rmetric/serialize.hpp"
#include "search.hpp"

namespace rmetric {

namespace {

void check_search_params(int r, int n) {
  static_cast<void>(Params(r, n));
  if (r > kMaxColorsSimple) throw DomainError("r must be at most 255 for distance vectors");
}

detail::SearchSpace space_for(int n, Color lo, Color hi, const SearchOptions& options) {
  return {n, lo, hi, options.node_budget};
}

detail::ParallelPlan plan_for(const SearchOptions& options) {
  return {std::max(1u, options.threads), options.split_depth};
}

// Odd-r C_r membership straight from a distance vector whose entries are all
// at least m(r)-1: no color-r pair may join two ends of an (m-1)-path.
bool odd_cr_member_raw(int r, int n, std::span<const std::uint8_t> d) {
  const int link = m_of(r) - 1;
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t p = 0;
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y, ++p) {
      if (d[p] == link) {
        const int a = find(x);
        const int b = find(y);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  p = 0;
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y, ++p) {
      if (d[p] == r && find(x) == find(y)) return false;
    }
  }
  return true;
}

}  // namespace

BigInt count_metric(int r, int n, const SearchOptions& options) {
  check_search_params(r, n);
  if (n == 1) return 1;
  return detail::parallel_count(space_for(n, 1, r, options), plan_for(options));
}

BigInt count_cr(int r, int n, const SearchOptions& options) {
  check_search_params(r, n);
  const std::size_t pairs = choose2(static_cast<std::size_t>(n));
  if (r % 2 == 0) return ipow(BigInt(m_of(r)), static_cast<unsigned>(pairs));
  if (n == 1) return 1;
  const int link = m_of(r) - 1;
  return detail::parallel_count_if(space_for(n, link, r, options), plan_for(options),
                                   [r, n](std::span<const std::uint8_t> d) {
                                     return odd_cr_member_raw(r, n, d);
                                   });
}

void enumerate_metric(int r, int n, const std::function<bool(const MetricColoring&)>& visit,
                      std::uint64_t node_budget) {
  check_search_params(r, n);
  const Params params(r, n);
  if (n == 1) {
    visit(MetricColoring(params, std::span<const Color>{}));
    return;
  }
  std::vector<Color> buffer(params.pair_count());
  detail::for_each_assignment({n, 1, r, node_budget}, [&](std::span<const std::uint8_t> d) {
    std::copy(d.begin(), d.end(), buffer.begin());
    return visit(MetricColoring(params, buffer));
  });
}

CountReport count_report(int r, int n, const SearchOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  CountReport report;
  report.r = r;
  report.n = n;
  report.m_count = count_metric(r, n, options);
  report.c_count = count_cr(r, n, options);
  report.lower_bound = ipow(BigInt(m_of(r)), static_cast<unsigned>(choose2(static_cast<std::size_t>(n))));
  report.ratio_c_over_m = Rational(report.c_count, report.m_count);
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

nlohmann::json to_json_value(const CountReport& report, bool include_timing) {
  nlohmann::json j{{"r", report.r},
                   {"n", report.n},
                   {"m_count", to_json_value(report.m_count)},
                   {"c_count", to_json_value(report.c_count)},
                   {"lower_bound", to_json_value(report.lower_bound)},
                   {"ratio_c_over_m", to_json_value(report.ratio_c_over_m)}};
  if (include_timing) j["elapsed_ms"] = report.elapsed.count();
  return j;
}

std::string to_csv_row(const CountReport& report, bool include_timing) {
  std::ostringstream out;
  out << report.r << ',' << report.n << ',' << report.m_count << ',' << report.c_count << ','
      << to_decimal(report.ratio_c_over_m) << ',';
  if (include_timing) out << report.elapsed.count();
  return out.str();
}

namespace {

bool raw_is_metric(int n, std::span<const Color> d) {
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      const Color a = d[pair_index(n, x, y)];
      for (int z = y + 1; z < n; ++z) {
        if (is_violating_triple(a, d[pair_index(n, x, z)], d[pair_index(n, y, z)])) return false;
      }
    }
  }
  return true;
}

}  // namespace

SampleBatch sample_uniform(int r, int n, std::size_t count, std::uint64_t seed,
                           double acceptance_floor) {
  check_search_params(r, n);
  const Params params(r, n);
  const std::size_t pairs = params.pair_count();
  const double estimate = std::pow(static_cast<double>(m_of(r)) / r, static_cast<double>(pairs));
  if (estimate < acceptance_floor) {
    std::ostringstream msg;
    msg << "estimated rejection-sampling acceptance " << estimate << " is below the floor "
        << acceptance_floor << "; use exact enumeration (count/enumerate) instead";
    throw CapacityError(msg.str());
  }
  SampleBatch batch;
  batch.seed = seed;
  batch.r = r;
  batch.n = n;
  batch.samples.reserve(count);
  Rng rng(seed);
  std::vector<Color> d(pairs);
  while (batch.samples.size() < count) {
    for (Color& c : d) c = static_cast<Color>(rng.uniform_int(1, r));
    ++batch.attempts;
    if (raw_is_metric(n, d)) batch.samples.emplace_back(params, d);
  }
  return batch;
}

nlohmann::json to_json_value(const SampleBatch& batch) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& g : batch.samples) samples.push_back(g.distances());
  return {{"seed", batch.seed},   {"r", batch.r},
          {"n", batch.n},         {"rng", std::string(kRngAlgorithm)},
          {"attempts", batch.attempts}, {"samples", std::move(samples)}};
}

MetricColoring sample_even_cr(int r, int n, Rng& rng) {
  if (r % 2 != 0) throw DomainError("direct C_r sampling needs even r");
  const Params params(r, n);
  std::vector<Color> d(params.pair_count());
  for (Color& c : d) c = static_cast<Color>(rng.uniform_int(r / 2, r));
  return MetricColoring(params, d);
}

MatchingFamilyCount matching_family_count(int r, int n) {
  if (r % 2 == 0) throw DomainError("the matching family A(S) is the odd-r construction; r is even");
  if (n < 2) throw DomainError("matching family needs n >= 2");
  static_cast<void>(Params(r, n));
  const BigInt m = m_of(r);
  const std::size_t pairs = choose2(static_cast<std::size_t>(n));
  MatchingFamilyCount out;
  // k-edge matchings of K_n: n! / (k! (n-2k)! 2^k).
  BigInt ways = 1;
  for (int k = 0; 2 * k <= n; ++k) {
    if (k > 0) {
      // From k-1 to k edges: choose the new edge among the (n-2k+2) free
      // vertices, divide by k for the unordered edge set.
      ways = ways * (n - 2 * k + 2) * (n - 2 * k + 1) / (2 * k);
    }
    out.matchings_by_size.push_back(ways);
    out.matchings += ways;
    out.total_size += ways * ipow(m, static_cast<unsigned>(pairs - static_cast<std::size_t>(k)));
  }
  return out;
}

std::vector<Matching> enumerate_matchings(int n) {
  if (n < 0 || n > 12) throw CapacityError("matching enumeration is limited to n <= 12");
  std::vector<Matching> out;
  Matching current;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  auto extend = [&](auto&& self, int from) -> void {
    out.push_back(current);
    for (int x = from; x < n; ++x) {
      if (used[x]) continue;
      for (int y = x + 1; y < n; ++y) {
        if (used[y]) continue;
        used[x] = used[y] = true;
        current.emplace_back(x, y);
        self(self, x + 1);
        current.pop_back();
        used[x] = used[y] = false;
      }
    }
  };
  extend(extend, 0);
  std::stable_sort(out.begin(), out.end(), [](const Matching& a, const Matching& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

namespace {

void check_matching(int n, const Matching& s) {
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (const auto& [x, y] : s) {
    if (x < 0 || y >= n || x >= y) throw DomainError("matching edges must satisfy 0 <= x < y < n");
    if (used[x] || used[y]) throw DomainError("matching edges must be vertex-disjoint");
    used[x] = used[y] = true;
  }
}

}  // namespace

BigInt matching_family_size(int r, int n, const Matching& s) {
  if (r % 2 == 0) throw DomainError("the matching family A(S) is the odd-r construction; r is even");
  static_cast<void>(Params(r, n));
  check_matching(n, s);
  return ipow(BigInt(m_of(r)), static_cast<unsigned>(choose2(static_cast<std::size_t>(n)) - s.size()));
}

void for_each_in_matching_family(int r, int n, const Matching& s,
                                 const std::function<bool(const MetricColoring&)>& visit) {
  if (r % 2 == 0) throw DomainError("the matching family A(S) is the odd-r construction; r is even");
  const Params params(r, n);
  check_matching(n, s);
  const int m = m_of(r);
  std::vector<bool> on_s(params.pair_count(), false);
  for (const auto& [x, y] : s) on_s[pair_index(n, x, y)] = true;
  std::vector<Color> d(params.pair_count());
  std::vector<std::size_t> free;
  for (std::size_t p = 0; p < d.size(); ++p) {
    d[p] = on_s[p] ? m - 1 : m;
    if (!on_s[p]) free.push_back(p);
  }
  // Odometer over [m, r]^free, last free pair fastest.
  while (true) {
    if (!visit(MetricColoring(params, d))) return;
    std::size_t i = free.size();
    while (i > 0 && d[free[i - 1]] == r) {
      d[free[i - 1]] = m;
      --i;
    }
    if (i == 0) return;
    ++d[free[i - 1]];
  }
}

bool in_matching_family(const MetricColoring& g, const Matching& s) {
  const int n = g.n();
  check_matching(n, s);
  const int m = m_of(g.r());
  std::vector<bool> on_s(g.pair_count(), false);
  for (const auto& [x, y] : s) on_s[pair_index(n, x, y)] = true;
  for (std::size_t p = 0; p < g.pair_count(); ++p) {
    if (on_s[p] ? g.at(p) != m - 1 : g.at(p) < m) return false;
  }
  return true;
}

namespace {

struct StatsAccumulator {
  const StatsOptions& options;
  bool with_nearest;
  BigInt population;
  BigInt in_cr;
  std::vector<BigInt> histogram;
  BigInt in_a;
  BigInt in_a_prime;
  BigInt nearest_total;

  void add(const MetricColoring& g) {
    ++population;
    if (is_cr_member(g)) ++in_cr;
    for (std::size_t p = 0; p < g.pair_count(); ++p) ++histogram[g.at(p) - 1];
    switch (hub_class(g, options.epsilon)) {
      case HubClass::InA: ++in_a; break;
      case HubClass::InAPrime: ++in_a_prime; break;
      case HubClass::Neither: break;
    }
    if (with_nearest) nearest_total += nearest_cr_distance(g).distance;
  }
};

}  // namespace

StructureStats structure_stats(int r, int n, const StatsOptions& options) {
  check_search_params(r, n);
  if (options.epsilon <= 0 || options.epsilon > 1) throw DomainError("epsilon must lie in (0, 1]");
  const bool with_nearest = n <= options.nearest_max_n && n <= kDefaultNearestLimit;
  StatsAccumulator acc{options, with_nearest, 0, 0, std::vector<BigInt>(static_cast<std::size_t>(r)), 0, 0, 0};

  StructureStats stats;
  stats.r = r;
  stats.n = n;
  stats.mode = options.mode;
  stats.epsilon = options.epsilon;
  if (options.mode == StatsMode::Exact) {
    enumerate_metric(r, n, [&](const MetricColoring& g) {
      acc.add(g);
      return true;
    }, options.search.node_budget);
    const double log_m = std::log(static_cast<double>(acc.population.convert_to<long double>())) /
                         std::log(static_cast<double>(m_of(r)));
    stats.excess = log_m - static_cast<double>(choose2(static_cast<std::size_t>(n)));
  } else {
    if (options.samples == 0) throw DomainError("sampled mode needs at least one sample");
    const SampleBatch batch = sample_uniform(r, n, options.samples, options.seed);
    for (const auto& g : batch.samples) acc.add(g);
    stats.attempts = batch.attempts;
  }
  stats.population = acc.population;
  stats.in_cr = acc.in_cr;
  stats.fraction_cr = Rational(acc.in_cr, acc.population);
  stats.histogram = std::move(acc.histogram);
  stats.in_a = acc.in_a;
  stats.in_a_prime = acc.in_a_prime;
  stats.fraction_a = Rational(acc.in_a, acc.population);
  if (with_nearest) stats.mean_nearest = Rational(acc.nearest_total, acc.population);
  return stats;
}

nlohmann::json to_json_value(const StructureStats& stats) {
  nlohmann::json hist = nlohmann::json::array();
  for (const auto& h : stats.histogram) hist.push_back(to_json_value(h));
  nlohmann::json j{{"r", stats.r},
                   {"n", stats.n},
                   {"mode", stats.mode == StatsMode::Exact ? "exact" : "sampled"},
                   {"population", to_json_value(stats.population)},
                   {"in_cr", to_json_value(stats.in_cr)},
                   {"fraction_cr", to_json_value(stats.fraction_cr)},
                   {"histogram", std::move(hist)},
                   {"epsilon", to_json_value(stats.epsilon)},
                   {"in_a", to_json_value(stats.in_a)},
                   {"in_a_prime", to_json_value(stats.in_a_prime)},
                   {"fraction_a", to_json_value(stats.fraction_a)},
                   {"mean_nearest", nullptr},
                   {"excess", nullptr}};
  if (stats.mean_nearest) j["mean_nearest"] = to_json_value(*stats.mean_nearest);
  if (stats.excess) j["excess"] = *stats.excess;
  if (stats.mode == StatsMode::Sampled) j["attempts"] = stats.attempts;
  return j;
}

}  // namespace rmetric
