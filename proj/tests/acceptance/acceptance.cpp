// Acceptance runner. Prints one [PASS]/[FAIL] line per criterion; with
// --only N runs a single criterion and exits nonzero if it fails.

#include <boost/math/distributions/chi_squared.hpp>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "../oracles.hpp"
#include "rmetric/constructions.hpp"
#include "rmetric/enumeration.hpp"
#include "rmetric/errors.hpp"
#include "rmetric/lemmas.hpp"
#include "rmetric/structure.hpp"

using namespace rmetric;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double seconds_limit;  // 0 means no wall-clock limit
  std::function<Outcome()> body;
};

std::string str(const BigInt& x) { return to_string(x); }

Outcome exact_counts() {
  std::ostringstream os;
  bool ok = true;
  for (auto [r, n, want] : {std::tuple{3, 3, 24}, std::tuple{4, 3, 52}}) {
    const BigInt got = count_metric(r, n);
    const std::uint64_t brute = oracle::count_metric(r, n);
    ok = ok && got == want && brute == static_cast<std::uint64_t>(want);
    os << "M_" << r << "(" << n << ")=" << str(got) << " brute=" << brute << " ";
  }
  return {ok, os.str()};
}

Outcome oracle_equivalence() {
  std::ostringstream os;
  bool ok = true;
  for (auto [r, n] : {std::pair{3, 3}, {3, 4}, {4, 3}, {4, 4}, {5, 3}}) {
    const BigInt got = count_metric(r, n);
    const std::uint64_t brute = oracle::count_metric(r, n);
    ok = ok && got == BigInt(brute);
    os << "(" << r << "," << n << "):" << str(got) << "/" << brute << " ";
  }
  return {ok, os.str()};
}

Outcome count_chain() {
  std::ostringstream os;
  bool ok = true;
  SearchOptions o;
  o.threads = 4;
  for (auto [r, n_max] : {std::pair{3, 6}, {4, 5}}) {
    for (int n = 2; n <= n_max; ++n) {
      const CountReport rep = count_report(r, n, o);
      const bool chain = rep.m_count >= rep.c_count && rep.c_count >= rep.lower_bound;
      ok = ok && chain;
      if (!chain) os << "broken at (" << r << "," << n << ") ";
    }
  }
  os << (ok ? "M >= C >= m^C(n,2) on r=3 n<=6 and r=4 n<=5" : "");
  return {ok, os.str()};
}

Outcome even_trend() {
  std::ostringstream os;
  std::vector<Rational> ratios;
  for (int n = 3; n <= 5; ++n) {
    const Rational q(count_cr(4, n), count_metric(4, n));
    ratios.push_back(q);
    os << "n=" << n << ":" << to_decimal(q, 4) << " ";
  }
  const bool ok = ratios[0] < ratios[1] && ratios[1] < ratios[2];
  if (!ok) os << "(ratio is not increasing at desk scale)";
  return {ok, os.str()};
}

Outcome lemma_oracles() {
  std::ostringstream os;
  bool ok = true;
  std::uint64_t checked = 0;
  auto take = [&](const LemmaVerdict& v) {
    checked += v.checked;
    if (!v.holds()) {
      ok = false;
      os << v.lemma_name << " counterexample " << v.counterexample->dump() << " ";
    }
  };
  for (int r = 3; r <= 8; ++r) {
    take(check_size_lemma(r));
    take(check_triangle_classification(r));
  }
  take(check_weight_bound(3, 3));
  take(check_weight_bound(4, 3));
  take(check_weight_bound(3, 4));
  for (int r = 3; r <= 5; ++r) take(check_importantcor(r));
  os << checked << " instances checked";
  return {ok, os.str()};
}

Outcome gadget_and_injection() {
  std::ostringstream os;
  bool ok = true;
  for (int r : {3, 5, 7}) {
    const MetricColoring h = gadget_h(r);
    if (!is_metric(h) || is_cr_member(h)) {
      ok = false;
      os << "gadget fails at r=" << r << " ";
    }
  }
  std::uint64_t classified = 0, failures = 0;
  for (int n : {4, 5}) {
    enumerate_metric(3, n, [&](const MetricColoring& g) {
      if (!is_cr_member(g)) return true;
      try {
        const InjectionTrace t = inject_f(g);
        ++classified;
        if (!is_metric(t.output) || is_cr_member(t.output)) ++failures;
      } catch (const UnsupportedInstance&) {
      } catch (const std::logic_error&) {
        ++failures;
      }
      return true;
    });
  }
  ok = ok && failures == 0 && classified > 0;
  os << "inject_f: " << classified << " classified, " << failures << " failures";
  return {ok, os.str()};
}

Outcome amalgamation() {
  const LemmaVerdict mr = check_amalgamation_mr(3, 3);
  const LemmaVerdict cr = check_amalgamation_cr(4, 3);
  std::ostringstream os;
  os << "M_3: " << mr.checked << " amalgams, C_4: " << cr.checked << " amalgams";
  if (!mr.holds()) os << " M_3 counterexample " << mr.counterexample->dump();
  if (!cr.holds()) os << " C_4 counterexample " << cr.counterexample->dump();
  return {mr.holds() && cr.holds(), os.str()};
}

Outcome odd_strictness() {
  std::ostringstream os;
  bool ok = count_cr(3, 3) == 24 && count_metric(3, 3) == 24;
  for (int n : {4, 5}) {
    const BigInt c = count_cr(3, n), m = count_metric(3, n);
    ok = ok && c < m;
    os << "n=" << n << ": " << str(c) << " < " << str(m) << " ";
  }
  os << "n=3: equal at 24";
  return {ok, os.str()};
}

Outcome sampler_statistics() {
  const std::size_t samples = 10000;
  const SampleBatch batch = sample_uniform(3, 3, samples, 20240601);
  std::map<std::vector<Color>, std::size_t> hist;
  enumerate_metric(3, 3, [&](const MetricColoring& g) {
    hist[g.distances()] = 0;
    return true;
  });
  bool ok = hist.size() == 24;
  for (const auto& g : batch.samples) {
    auto it = hist.find(g.distances());
    if (it == hist.end()) {
      ok = false;
      continue;
    }
    ++it->second;
  }
  const double expected = static_cast<double>(samples) / static_cast<double>(hist.size());
  double chi2 = 0;
  for (const auto& [d, c] : hist) chi2 += (c - expected) * (c - expected) / expected;
  const boost::math::chi_squared dist(static_cast<double>(hist.size() - 1));
  const double critical = boost::math::quantile(dist, 0.999);
  const bool rerun = to_json_value(batch) == to_json_value(sample_uniform(3, 3, samples, 20240601));
  std::ostringstream os;
  os << "chi2=" << chi2 << " critical(0.001)=" << critical << " rerun identical=" << (rerun ? "yes" : "no");
  return {ok && chi2 < critical && rerun, os.str()};
}

Outcome matching_bound() {
  const int r = 3, n = 4;
  std::set<std::vector<Color>> seen;
  std::uint64_t total = 0;
  bool ok = true;
  const auto all = enumerate_matchings(n);
  for (const auto& s : all) {
    std::uint64_t members = 0;
    for_each_in_matching_family(r, n, s, [&](const MetricColoring& g) {
      ++members;
      ok = ok && is_metric(g) && in_matching_family(g, s);
      seen.emplace(g.raw().begin(), g.raw().end());
      return true;
    });
    ok = ok && BigInt(members) == matching_family_size(r, n, s) &&
         BigInt(members) == ipow(BigInt(m_of(r)), static_cast<unsigned>(6 - s.size()));
    total += members;
  }
  ok = ok && seen.size() == total && BigInt(total) == matching_family_count(r, n).total_size;
  std::ostringstream os;
  os << all.size() << " families, " << total << " colorings, disjoint=" << (seen.size() == total ? "yes" : "no");
  return {ok, os.str()};
}

Outcome axiom_curve() {
  const auto curve = empirical_mu(default_axiom(), Family::Cr, 4, 10, 2000, 1);
  std::ostringstream os;
  bool monotone = true;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    os << curve[i].n << ":" << curve[i].estimate << " ";
    if (i > 0 && curve[i].estimate < curve[i - 1].estimate && curve[i].ci_high < curve[i - 1].ci_low) {
      monotone = false;
    }
  }
  const bool high = curve.back().estimate > 0.9;
  if (!monotone) os << "(decreasing beyond the confidence bands) ";
  if (!high) os << "(mu_10 <= 0.9)";
  return {monotone && high, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--only N]\n";
      return 64;
    }
  }
  const std::vector<Criterion> criteria{
      {1, "exact counts M_3(3), M_4(3)", 1, exact_counts},
      {2, "propagation counter equals brute force", 30, oracle_equivalence},
      {3, "count chain M >= C >= lower bound", 300, count_chain},
      {4, "C_4/M_4 strictly increasing for n=3,4,5", 300, even_trend},
      {5, "lemma oracles find no counterexample", 600, lemma_oracles},
      {6, "gadget H and injection postconditions", 120, gadget_and_injection},
      {7, "amalgamation soundness", 120, amalgamation},
      {8, "odd r strictness", 0, odd_strictness},
      {9, "sampler chi-square and reproducibility", 0, sampler_statistics},
      {10, "matching families", 60, matching_bound},
      {11, "extension axiom curve on C_4", 0, axiom_curve},
  };
  bool all_pass = true;
  bool ran = false;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ran = true;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.body();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.seconds_limit > 0 && secs >= c.seconds_limit) {
      out.pass = false;
      out.detail += " (over the " + std::to_string(static_cast<int>(c.seconds_limit)) + " s limit)";
    }
    std::ostringstream t;
    t.precision(3);
    t << std::fixed << secs;
    std::cout << (out.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.title << " -- "
              << out.detail << " [" << t.str() << " s]" << std::endl;
    all_pass = all_pass && out.pass;
  }
  if (!ran) {
    std::cerr << "no criterion " << only << "\n";
    return 64;
  }
  return all_pass ? 0 : 1;
}
