#include "rmetric/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include "rmetric/constructions.hpp"
#include "rmetric/enumeration.hpp"
#include "rmetric/errors.hpp"
#include "rmetric/lemmas.hpp"
#include "rmetric/serialize.hpp"

namespace rmetric::cli {

namespace {

// Raised for inputs CLI11 cannot see, such as an unsupported --format.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  // shared
  std::string format = "json";
  std::string out;
  bool no_timing = false;
  unsigned threads = 1;
  std::uint64_t budget = kDefaultNodeBudget;
  int split_depth = -1;
  std::uint64_t seed = 1;
  std::uint64_t samples = 1000;

  int r = 3;
  int n = 3;
  int r_max = 8;
  int t = 3;
  int max_size = 3;
  int n_min = 4;
  int n_max = 10;
  int limit = kDefaultNearestLimit;
  int nearest_max_n = 5;
  std::uint64_t max_items = 0;  // enumerate: 0 = no cap
  std::string mode = "exact";
  std::string epsilon = "1/10";
  std::string family = "cr";
  std::string rule = "min";
  std::string kind = "cr";
  std::string in;
  std::string a_file;
  std::string b_file;
  std::string shared;
  std::string axiom_file;
  std::string matching;
};

json read_json_file(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read input file " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError("input " + path + " is not valid JSON: " + e.what());
  }
}

MetricColoring read_coloring(const std::string& path) {
  if (path.empty()) throw DomainError("this command needs --in FILE with a coloring");
  return metric_coloring_from_json(read_json_file(path));
}

SearchOptions search_options(const Options& o) {
  return {o.threads == 0 ? 1u : o.threads, o.budget, o.split_depth};
}

// "1:2,3:1" (1-based A:B pairs).
Correspondence parse_correspondence(const std::string& text) {
  Correspondence out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw DomainError("shared pairs look like A:B, got '" + item + "'");
    try {
      out.emplace_back(std::stoi(item.substr(0, colon)) - 1, std::stoi(item.substr(colon + 1)) - 1);
    } catch (const std::logic_error&) {
      throw DomainError("bad shared pair '" + item + "'");
    }
  }
  return out;
}

// "1-2,3-4" (1-based edges).
Matching parse_matching(const std::string& text) {
  Matching out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw DomainError("matching edges look like x-y, got '" + item + "'");
    int x = 0;
    int y = 0;
    try {
      x = std::stoi(item.substr(0, dash)) - 1;
      y = std::stoi(item.substr(dash + 1)) - 1;
    } catch (const std::logic_error&) {
      throw DomainError("bad matching edge '" + item + "'");
    }
    if (x > y) std::swap(x, y);
    out.emplace_back(x, y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

AmalgamRule parse_rule(const std::string& rule) {
  return rule == "max" ? AmalgamRule::AsPrinted : AmalgamRule::ShortestPath;
}

json verdict_payload(const std::vector<LemmaVerdict>& verdicts, int& exit_code) {
  json list = json::array();
  std::uint64_t failures = 0;
  for (const auto& v : verdicts) {
    list.push_back(to_json_value(v));
    if (!v.holds()) ++failures;
  }
  if (failures > 0) exit_code = kExitCounterexample;
  return {{"verdicts", std::move(list)}, {"counterexamples", failures}};
}

struct Handler {
  std::string name;
  CLI::App* app = nullptr;
  std::function<json(const Options&, CommandResult&)> body;
};

std::string render_envelope(const CommandResult& res, bool single_line) {
  json envelope{{"command", res.command},
                {"params", res.params},
                {"exit_code", res.exit_code},
                {"payload", res.payload}};
  return (single_line ? envelope.dump() : envelope.dump(2)) + "\n";
}

// Integers go into params as JSON numbers; anything else stays a string.
json typed_param(const std::string& text) {
  std::int64_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec == std::errc() && end == text.data() + text.size() && !text.empty()) return v;
  std::uint64_t u = 0;
  const auto [uend, uec] = std::from_chars(text.data(), text.data() + text.size(), u);
  if (uec == std::errc() && uend == text.data() + text.size() && !text.empty()) return u;
  return text;
}

void collect_params(const CLI::App* app, json& params) {
  for (const CLI::Option* opt : app->get_options()) {
    const std::string& name = opt->get_single_name();
    if (name == "help" || name.empty()) continue;
    if (opt->get_expected_min() == 0) {
      params[name] = opt->count() > 0;
      continue;
    }
    if (opt->count() > 0) {
      if (opt->results().size() == 1) {
        params[name] = typed_param(opt->results().front());
      } else {
        json values = json::array();
        for (const auto& v : opt->results()) values.push_back(typed_param(v));
        params[name] = std::move(values);
      }
    } else if (!opt->get_default_str().empty()) {
      params[name] = typed_param(opt->get_default_str());
    }
  }
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CommandResult res;
  Options o;
  CLI::App app{"Exact enumeration, sampling and verification for integer-distance metric spaces", "rmetric"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "json | jsonl | csv")->check(CLI::IsMember({"json", "jsonl", "csv"}));
  app.add_option("--out", o.out, "write output to FILE instead of stdout");
  app.add_flag("--no-timing", o.no_timing, "drop elapsed times so reruns are byte-identical");
  app.add_option("--threads", o.threads, "worker threads for exhaustive searches");
  app.add_option("--budget", o.budget, "search node budget");

  std::vector<Handler> handlers;
  auto add = [&](CLI::App* parent, const std::string& name, const std::string& help,
                 std::function<json(const Options&, CommandResult&)> body) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->fallthrough();
    handlers.push_back({name, sub, std::move(body)});
    return sub;
  };
  auto opt_r = [&](CLI::App* s) { s->add_option("--r", o.r, "number of distances")->required(); };
  auto opt_rn = [&](CLI::App* s) {
    opt_r(s);
    s->add_option("--n", o.n, "number of points")->required();
  };

  auto* count = add(&app, "count", "exact |M_r(n)|, |C_r(n)| and the lower bound", [](const Options& o, CommandResult&) {
    const CountReport report = count_report(o.r, o.n, search_options(o));
    return to_json_value(report, !o.no_timing);
  });
  opt_rn(count);
  count->add_option("--split-depth", o.split_depth, "prefix length per parallel task (-1 = auto)");

  auto* enumerate = add(&app, "enumerate", "stream M_r(n) in lexicographic order", [](const Options& o, CommandResult&) {
    json colorings = json::array();
    std::uint64_t seen = 0;
    enumerate_metric(o.r, o.n, [&](const MetricColoring& g) {
      colorings.push_back(g.distances());
      return o.max_items == 0 || ++seen < o.max_items;
    }, o.budget);
    return json{{"r", o.r}, {"n", o.n}, {"count", colorings.size()}, {"colorings", std::move(colorings)}};
  });
  opt_rn(enumerate);
  enumerate->add_option("--max-items", o.max_items, "stop after this many colorings (0 = all)");

  auto* sample = add(&app, "sample", "seeded rejection sampling from M_r(n)", [](const Options& o, CommandResult&) {
    return to_json_value(sample_uniform(o.r, o.n, o.samples, o.seed));
  });
  opt_rn(sample);
  sample->add_option("--samples", o.samples, "number of accepted samples");
  sample->add_option("--seed", o.seed, "PRNG seed");

  auto* stats = add(&app, "stats", "structure statistics over M_r(n)", [](const Options& o, CommandResult&) {
    StatsOptions so;
    so.mode = o.mode == "sampled" ? StatsMode::Sampled : StatsMode::Exact;
    so.epsilon = parse_rational(o.epsilon);
    so.samples = o.samples;
    so.seed = o.seed;
    so.nearest_max_n = o.nearest_max_n;
    so.search = search_options(o);
    return to_json_value(structure_stats(o.r, o.n, so));
  });
  opt_rn(stats);
  stats->add_option("--mode", o.mode, "exact | sampled")->check(CLI::IsMember({"exact", "sampled"}));
  stats->add_option("--epsilon", o.epsilon, "hub threshold for the A_r(n, eps) predicate");
  stats->add_option("--samples", o.samples, "samples in sampled mode");
  stats->add_option("--seed", o.seed, "PRNG seed in sampled mode");
  stats->add_option("--nearest-max-n", o.nearest_max_n, "largest n for the mean nearest-C_r distance");

  auto* membership = add(&app, "membership", "C_r membership with a certificate", [](const Options& o, CommandResult&) {
    const MetricColoring g = read_coloring(o.in);
    const CrMembershipCertificate cert = cr_membership(g);
    json j = to_json_value(cert);
    j["metric"] = is_metric(g);
    j["certificate_verified"] = verify_certificate(g, cert);
    return j;
  });
  membership->add_option("--in", o.in, "coloring JSON file (- for stdin)")->required();

  auto* nearest = add(&app, "nearest", "edit distance to the nearest member of C_r", [](const Options& o, CommandResult&) {
    const NearestCr result = nearest_cr_distance(read_coloring(o.in), o.limit);
    return json{{"distance", result.distance}, {"witness", to_json_value(result.witness)}};
  });
  nearest->add_option("--in", o.in, "coloring JSON file (- for stdin)")->required();
  nearest->add_option("--limit", o.limit, "largest n for the odd-r partition search");

  auto* components = add(&app, "components", "canonically ordered component decomposition", [](const Options& o, CommandResult&) {
    return to_json_value(component_decomposition(read_coloring(o.in)));
  });
  components->add_option("--in", o.in, "coloring JSON file (- for stdin)")->required();

  CLI::App* verify = app.add_subcommand("verify", "exhaustive lemma oracles");
  verify->require_subcommand(1);
  verify->fallthrough();

  auto* size_lemma = add(verify, "size-lemma", "Lemma: large metric-set triples contain a violating triple",
                         [](const Options& o, CommandResult& res) {
    std::vector<LemmaVerdict> v;
    for (int r = 3; r <= o.r_max; ++r) v.push_back(check_size_lemma(r, std::max(o.r_max, kDefaultSubsetLemmaMaxR)));
    return verdict_payload(v, res.exit_code);
  });
  size_lemma->add_option("--r-max", o.r_max, "check r = 3..r-max");

  auto* triangle = add(verify, "triangle-class", "classification of metric triples of m(r)-sets",
                       [](const Options& o, CommandResult& res) {
    std::vector<LemmaVerdict> v;
    for (int r = 3; r <= o.r_max; ++r) {
      v.push_back(check_triangle_classification(r, std::max(o.r_max, kDefaultSubsetLemmaMaxR)));
    }
    return verdict_payload(v, res.exit_code);
  });
  triangle->add_option("--r-max", o.r_max, "check r = 3..r-max");

  auto* weight = add(verify, "weight-bound", "weight bound over all metric r-graphs on [t]",
                     [](const Options& o, CommandResult& res) {
    return verdict_payload({check_weight_bound(o.r, o.t)}, res.exit_code);
  });
  opt_r(weight);
  weight->add_option("--t", o.t, "number of vertices");

  auto* important = add(verify, "importantcor", "two heavy sides force a light third side",
                        [](const Options& o, CommandResult& res) {
    std::vector<LemmaVerdict> v;
    for (int r = 3; r <= o.r_max; ++r) v.push_back(check_importantcor(r, std::max(o.r_max, 6)));
    return verdict_payload(v, res.exit_code);
  });
  important->add_option("--r-max", o.r_max, "check r = 3..r-max")->default_val(5);

  auto* amalgam = add(verify, "amalgam-mr", "M_r amalgams of small factors are metric",
                      [](const Options& o, CommandResult& res) {
    return verdict_payload({check_amalgamation_mr(o.r, o.max_size, parse_rule(o.rule))}, res.exit_code);
  });
  amalgam->add_option("--r", o.r, "number of distances");
  amalgam->add_option("--max-size", o.max_size, "largest factor size");
  amalgam->add_option("--rule", o.rule, "min (shortest path) | max (as printed)")->check(CLI::IsMember({"min", "max"}));

  auto* amalgam_cr = add(verify, "amalgam-cr", "C_r amalgams of small factors stay in C_r",
                         [](const Options& o, CommandResult& res) {
    return verdict_payload({check_amalgamation_cr(o.r, o.max_size)}, res.exit_code);
  });
  amalgam_cr->add_option("--r", o.r, "number of distances (even)")->default_val(4);
  amalgam_cr->add_option("--max-size", o.max_size, "largest factor size");

  auto* inject = add(&app, "inject", "apply the injection f to a member of C_r(n)", [](const Options& o, CommandResult&) {
    const MetricColoring g = read_coloring(o.in);
    const InjectionTrace trace = inject_f(g);
    json j = to_json_value(trace);
    j["index_sequence_ok"] = index_sequence_invariants_hold(g, trace);
    return j;
  });
  inject->add_option("--in", o.in, "coloring JSON file (- for stdin)")->required();

  auto* preimages = add(&app, "preimages", "apply f to all of C_r(n) and bucket the outputs",
                        [](const Options& o, CommandResult& res) {
    const PreimageReport report = preimage_analysis(o.r, o.n, o.budget);
    if (report.postcondition_failures > 0 || report.invariant_failures > 0) res.exit_code = kExitCounterexample;
    return to_json_value(report);
  });
  opt_rn(preimages);

  auto* gadget = add(&app, "gadget-h", "the 4-point gadget H", [](const Options& o, CommandResult&) {
    const MetricColoring h = gadget_h(o.r);
    json j = to_json_value(h);
    j["metric"] = is_metric(h);
    j["in_cr"] = is_cr_member(h);
    return j;
  });
  opt_r(gadget);

  auto* amalgamate = add(&app, "amalgamate", "amalgamate two colorings over a shared set",
                         [](const Options& o, CommandResult& res) {
    const MetricColoring a = read_coloring(o.a_file);
    const MetricColoring b = read_coloring(o.b_file);
    const Correspondence shared = parse_correspondence(o.shared);
    const Amalgam am = o.kind == "cr" ? amalgamate_cr(a, b, shared) : amalgamate_mr(a, b, shared, parse_rule(o.rule));
    json j = to_json_value(am);
    j["metric"] = is_metric(am.d);
    if (!is_metric(am.d)) res.exit_code = kExitCounterexample;
    return j;
  });
  amalgamate->add_option("--a", o.a_file, "coloring A (JSON file)")->required();
  amalgamate->add_option("--b", o.b_file, "coloring B (JSON file)")->required();
  amalgamate->add_option("--shared", o.shared, "identified pairs, 1-based A:B, comma separated");
  amalgamate->add_option("--kind", o.kind, "cr | mr")->check(CLI::IsMember({"cr", "mr"}));
  amalgamate->add_option("--rule", o.rule, "mr cross rule: min | max")->check(CLI::IsMember({"min", "max"}));

  auto load_axiom = [](const Options& o) {
    return o.axiom_file.empty() ? default_axiom() : extension_axiom_from_json(read_json_file(o.axiom_file));
  };
  auto* axiom_eval = add(&app, "axiom-eval", "evaluate an extension axiom on a coloring",
                         [load_axiom](const Options& o, CommandResult&) {
    const ExtensionAxiom ax = load_axiom(o);
    const auto failure = find_extension_failure(ax, read_coloring(o.in));
    json tuple = nullptr;
    if (failure) {
      tuple = json::array();
      for (Vertex v : *failure) tuple.push_back(v + 1);
    }
    return json{{"axiom", to_json_value(ax)}, {"holds", !failure}, {"failing_tuple", tuple}};
  });
  axiom_eval->add_option("--in", o.in, "coloring JSON file (- for stdin)")->required();
  axiom_eval->add_option("--axiom", o.axiom_file, "axiom JSON {base, extended}; default: r=4, 3 -> (2,2)");

  auto* axiom_curve = add(&app, "axiom-curve", "empirical probability that an axiom holds, by n",
                          [load_axiom](const Options& o, CommandResult&) {
    const ExtensionAxiom ax = load_axiom(o);
    const auto curve = empirical_mu(ax, o.family == "metric" ? Family::Metric : Family::Cr, o.n_min, o.n_max,
                                    o.samples, o.seed);
    return json{{"axiom", to_json_value(ax)},
                {"family", o.family},
                {"seed", o.seed},
                {"points", to_json_value(curve)}};
  });
  axiom_curve->add_option("--axiom", o.axiom_file, "axiom JSON {base, extended}; default: r=4, 3 -> (2,2)");
  axiom_curve->add_option("--family", o.family, "metric | cr")->check(CLI::IsMember({"metric", "cr"}));
  axiom_curve->add_option("--n-min", o.n_min, "first n");
  axiom_curve->add_option("--n-max", o.n_max, "last n");
  axiom_curve->add_option("--samples", o.samples, "samples per n")->default_val(2000);
  axiom_curve->add_option("--seed", o.seed, "PRNG seed");

  auto* matching = add(&app, "matching-bound", "the odd-r matching family A(S) and its sizes",
                       [](const Options& o, CommandResult&) {
    const MatchingFamilyCount c = matching_family_count(o.r, o.n);
    json by_size = json::array();
    for (const auto& k : c.matchings_by_size) by_size.push_back(to_json_value(k));
    json j{{"r", o.r},
           {"n", o.n},
           {"matchings", to_json_value(c.matchings)},
           {"total_size", to_json_value(c.total_size)},
           {"matchings_by_size", std::move(by_size)}};
    if (!o.matching.empty()) {
      const Matching s = parse_matching(o.matching);
      json edges = json::array();
      for (const auto& [x, y] : s) edges.push_back({x + 1, y + 1});
      j["matching"] = std::move(edges);
      j["family_size"] = to_json_value(matching_family_size(o.r, o.n, s));
    }
    return j;
  });
  opt_rn(matching);
  matching->add_option("--matching", o.matching, "one matching S as 1-based edges x-y, comma separated");

  std::vector<std::string> argv_storage{"rmetric"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    std::ostringstream err;
    if (app.exit(e, out, err) == 0) {
      res.command = "help";
      res.output = out.str();
    } else {
      res.command = "usage";
      res.exit_code = kExitUsage;
      res.diagnostics = err.str();
    }
    return res;
  }

  const Handler* chosen = nullptr;
  for (const auto& h : handlers) {
    if (h.app->parsed()) chosen = &h;
  }
  if (chosen == nullptr) {
    res.command = "usage";
    res.exit_code = kExitUsage;
    res.diagnostics = "no command given\n";
    return res;
  }
  res.command = chosen->app->get_parent() == verify ? "verify " + chosen->name : chosen->name;
  res.out_path = o.out;
  collect_params(&app, res.params);
  if (chosen->app->get_parent() == verify) collect_params(verify, res.params);
  collect_params(chosen->app, res.params);
  res.params.erase("out");
  res.params.erase("threads");  // does not affect any payload

  auto fail = [&](int code, const std::string& kind, const std::string& message) {
    res.exit_code = code;
    res.payload = json{{"error", kind}, {"message", message}};
    res.diagnostics = kind + ": " + message + "\n";
  };
  try {
    const bool csv_ok = chosen->name == "count" || chosen->name == "axiom-curve";
    if (o.format == "csv" && !csv_ok) throw UsageError("--format csv is available for count and axiom-curve only");
    res.payload = chosen->body(o, res);
  } catch (const UsageError& e) {
    res.exit_code = kExitUsage;
    res.diagnostics = std::string(e.what()) + "\n";
    return res;
  } catch (const UnsupportedInstance& e) {
    fail(kExitDomain, "unsupported_instance", e.what());
  } catch (const DomainError& e) {
    fail(kExitDomain, "domain_error", e.what());
  } catch (const CapacityError& e) {
    fail(kExitCapacity, "capacity_error", e.what());
  } catch (const std::logic_error& e) {
    // Postcondition breaches inside constructions: a mathematical failure.
    fail(kExitCounterexample, "postcondition_failure", e.what());
  }

  if (o.format == "csv" && res.exit_code == kExitOk) {
    if (chosen->name == "count") {
      std::ostringstream csv;
      csv << kCountCsvHeader << '\n';
      const json& p = res.payload;
      csv << p["r"].get<int>() << ',' << p["n"].get<int>() << ',' << p["m_count"].get<std::string>() << ','
          << p["c_count"].get<std::string>() << ',' << p["ratio_c_over_m"]["decimal"].get<std::string>() << ',';
      if (p.contains("elapsed_ms")) csv << p["elapsed_ms"].get<double>();
      csv << '\n';
      res.output = csv.str();
    } else {
      std::vector<CurvePoint> curve;
      for (const auto& p : res.payload["points"]) {
        curve.push_back({p["n"].get<int>(), p["samples"].get<std::uint64_t>(), p["successes"].get<std::uint64_t>(),
                         p["estimate"].get<double>(), p["ci_low"].get<double>(), p["ci_high"].get<double>()});
      }
      res.output = to_csv(curve);
    }
  } else if (o.format == "jsonl" && res.exit_code == kExitOk &&
             (chosen->name == "enumerate" || chosen->name == "sample")) {
    const json& items = chosen->name == "enumerate" ? res.payload["colorings"] : res.payload["samples"];
    std::string lines;
    for (const auto& d : items) lines += json{{"r", res.payload["r"]}, {"n", res.payload["n"]}, {"d", d}}.dump() + "\n";
    res.output = lines;
  } else {
    res.output = render_envelope(res, o.format == "jsonl");
  }
  return res;
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const CommandResult res = run(args);
  if (!res.diagnostics.empty()) std::cerr << res.diagnostics;
  if (!res.out_path.empty() && !res.output.empty()) {
    std::ofstream out(res.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << res.out_path << "\n";
      return kExitUsage;
    }
    out << res.output;
  } else {
    std::cout << res.output;
  }
  return res.exit_code;
}

}  // namespace rmetric::cli
