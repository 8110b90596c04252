#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rmetric/core.hpp"
#include "rmetric/rng.hpp"
#include "rmetric/structure.hpp"

namespace rmetric {

// Enough for every (r <= 5, n <= 6) count with room to spare.
inline constexpr std::uint64_t kDefaultNodeBudget = 4'000'000'000ull;

struct SearchOptions {
  unsigned threads = 1;
  std::uint64_t node_budget = kDefaultNodeBudget;
  int split_depth = -1;  // prefix length handed to workers; -1 picks one
};

BigInt count_metric(int r, int n, const SearchOptions& options = {});

// Even r: closed form m(r)^C(n,2). Odd r: colorings with all distances in
// [(r-1)/2, r] filtered by C_r membership.
BigInt count_cr(int r, int n, const SearchOptions& options = {});

// Streams M_r(n) in lexicographic order of the distance vector. Stops early
// when visit returns false. Serial.
void enumerate_metric(int r, int n, const std::function<bool(const MetricColoring&)>& visit,
                      std::uint64_t node_budget = kDefaultNodeBudget);

struct CountReport {
  int r = 0;
  int n = 0;
  BigInt m_count;
  BigInt c_count;
  BigInt lower_bound;  // m(r)^C(n,2)
  Rational ratio_c_over_m;
  std::chrono::duration<double, std::milli> elapsed{0};
};

CountReport count_report(int r, int n, const SearchOptions& options = {});

nlohmann::json to_json_value(const CountReport& report, bool include_timing = true);
inline constexpr const char* kCountCsvHeader = "r,n,m_count,c_count,ratio,elapsed_ms";
std::string to_csv_row(const CountReport& report, bool include_timing = true);

// Rejection sampling refuses when the estimated acceptance rate
// (m(r)/r)^C(n,2) drops below this floor.
inline constexpr double kDefaultAcceptanceFloor = 1e-6;

struct SampleBatch {
  std::uint64_t seed = 0;
  int r = 0;
  int n = 0;
  std::vector<MetricColoring> samples;
  std::uint64_t attempts = 0;
};

SampleBatch sample_uniform(int r, int n, std::size_t count, std::uint64_t seed,
                           double acceptance_floor = kDefaultAcceptanceFloor);

nlohmann::json to_json_value(const SampleBatch& batch);

// Uniform element of C_r(n) for even r: i.i.d. colors from [r/2, r].
MetricColoring sample_even_cr(int r, int n, Rng& rng);

using Matching = std::vector<std::pair<Vertex, Vertex>>;  // x < y, sorted

struct MatchingFamilyCount {
  BigInt matchings;    // all matchings of K_n, the empty one included
  BigInt total_size;   // sum over S of m(r)^(C(n,2) - |S|)
  std::vector<BigInt> matchings_by_size;  // index k: matchings with k edges
};

MatchingFamilyCount matching_family_count(int r, int n);

// All matchings of K_n in a fixed order (by size, then lexicographic). n <= 12.
std::vector<Matching> enumerate_matchings(int n);

// |A(S)| = m(r)^(C(n,2) - |S|).
BigInt matching_family_size(int r, int n, const Matching& s);

// Members of A(S): color m(r)-1 exactly on S, colors in [m(r), r] elsewhere.
void for_each_in_matching_family(int r, int n, const Matching& s,
                                 const std::function<bool(const MetricColoring&)>& visit);

bool in_matching_family(const MetricColoring& g, const Matching& s);

enum class StatsMode { Exact, Sampled };

struct StatsOptions {
  StatsMode mode = StatsMode::Exact;
  Rational epsilon{1, 10};
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  int nearest_max_n = 5;  // mean nearest C_r distance only for n up to this
  SearchOptions search;
};

struct StructureStats {
  int r = 0;
  int n = 0;
  StatsMode mode = StatsMode::Exact;
  BigInt population;  // |M_r(n)| (exact) or number of samples
  BigInt in_cr;
  Rational fraction_cr;
  std::vector<BigInt> histogram;  // index c-1: pairs colored c, summed
  Rational epsilon;
  BigInt in_a;                     // hub class A_r(n, eps)
  BigInt in_a_prime;               // A'_r(n, eps)
  Rational fraction_a;
  std::optional<Rational> mean_nearest;
  std::optional<double> excess;    // log_m |M_r(n)| - C(n,2), exact mode
  std::uint64_t attempts = 0;      // sampled mode
};

StructureStats structure_stats(int r, int n, const StatsOptions& options = {});

nlohmann::json to_json_value(const StructureStats& stats);

}  // namespace rmetric
