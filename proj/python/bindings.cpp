#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rmetric/cli.hpp"
#include "rmetric/constructions.hpp"
#include "rmetric/enumeration.hpp"
#include "rmetric/errors.hpp"
#include "rmetric/lemmas.hpp"
#include "rmetric/serialize.hpp"
#include "rmetric/structure.hpp"

namespace py = pybind11;
using namespace rmetric;

namespace {

// JSON crosses the boundary as text; Python's json module does the rest.
py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_py(const py::handle& obj) {
  return json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

py::int_ to_py_int(const BigInt& v) { return py::int_(py::module_::import("builtins").attr("int")(v.str())); }

MetricColoring coloring(const py::handle& obj) { return metric_coloring_from_json(from_py(obj)); }

SearchOptions search(unsigned threads, std::uint64_t budget) {
  SearchOptions o;
  o.threads = threads;
  o.node_budget = budget;
  return o;
}

AmalgamRule rule_of(const std::string& rule) {
  if (rule == "min") return AmalgamRule::ShortestPath;
  if (rule == "max") return AmalgamRule::AsPrinted;
  throw DomainError("rule must be 'min' or 'max'");
}

Correspondence correspondence(const std::vector<std::pair<int, int>>& shared) {
  Correspondence out;
  for (auto [a, b] : shared) out.emplace_back(a - 1, b - 1);  // 1-based, like the JSON format
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact enumeration, sampling and verification for metric spaces with distances in {1..r}";

  // Registered later means tried first, so the subclass goes second.
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<UnsupportedInstance>(m, "UnsupportedInstance", m.attr("DomainError").ptr());
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);

  m.attr("RNG_ALGORITHM") = std::string(kRngAlgorithm);
  m.def("m_of", &m_of, py::arg("r"));

  m.def("count_metric", [](int r, int n, unsigned threads, std::uint64_t budget) {
    BigInt c;
    {
      py::gil_scoped_release release;
      c = count_metric(r, n, search(threads, budget));
    }
    return to_py_int(c);
  }, py::arg("r"), py::arg("n"), py::arg("threads") = 1, py::arg("budget") = kDefaultNodeBudget);

  m.def("count_cr", [](int r, int n, unsigned threads, std::uint64_t budget) {
    BigInt c;
    {
      py::gil_scoped_release release;
      c = count_cr(r, n, search(threads, budget));
    }
    return to_py_int(c);
  }, py::arg("r"), py::arg("n"), py::arg("threads") = 1, py::arg("budget") = kDefaultNodeBudget);

  m.def("count_report", [](int r, int n, unsigned threads, bool timing) {
    return to_py(to_json_value(count_report(r, n, search(threads, kDefaultNodeBudget)), timing));
  }, py::arg("r"), py::arg("n"), py::arg("threads") = 1, py::arg("timing") = false);

  m.def("enumerate_metric", [](int r, int n, std::uint64_t max_items) {
    std::vector<std::vector<Color>> out;
    enumerate_metric(r, n, [&](const MetricColoring& g) {
      out.push_back(g.distances());
      return max_items == 0 || out.size() < max_items;
    });
    return out;
  }, py::arg("r"), py::arg("n"), py::arg("max_items") = 0,
        "Distance vectors of M_r(n) in lexicographic order.");

  m.def("sample", [](int r, int n, std::size_t samples, std::uint64_t seed) {
    return to_py(to_json_value(sample_uniform(r, n, samples, seed)));
  }, py::arg("r"), py::arg("n"), py::arg("samples"), py::arg("seed"));

  m.def("is_metric", [](const py::dict& g) { return is_metric(coloring(g)); }, py::arg("coloring"));
  m.def("cr_membership", [](const py::dict& g) { return to_py(to_json_value(cr_membership(coloring(g)))); },
        py::arg("coloring"));
  m.def("is_cr_member", [](const py::dict& g) { return is_cr_member(coloring(g)); }, py::arg("coloring"));
  m.def("components", [](const py::dict& g) { return to_py(to_json_value(component_decomposition(coloring(g)))); },
        py::arg("coloring"));
  m.def("nearest_cr", [](const py::dict& g, int limit) {
    const NearestCr res = nearest_cr_distance(coloring(g), limit);
    return py::make_tuple(res.distance, to_py(to_json_value(res.witness)));
  }, py::arg("coloring"), py::arg("limit") = kDefaultNearestLimit);

  m.def("gadget_h", [](int r) { return to_py(to_json_value(gadget_h(r))); }, py::arg("r"));
  m.def("inject_f", [](const py::dict& g) { return to_py(to_json_value(inject_f(coloring(g)))); },
        py::arg("coloring"));
  m.def("preimage_analysis", [](int r, int n) { return to_py(to_json_value(preimage_analysis(r, n))); },
        py::arg("r"), py::arg("n"));

  m.def("amalgamate", [](const py::dict& a, const py::dict& b, const std::vector<std::pair<int, int>>& shared,
                         const std::string& kind, const std::string& rule) {
    const MetricColoring ga = coloring(a), gb = coloring(b);
    const Correspondence c = correspondence(shared);
    if (kind == "cr") return to_py(to_json_value(amalgamate_cr(ga, gb, c)));
    if (kind != "mr") throw DomainError("kind must be 'cr' or 'mr'");
    return to_py(to_json_value(amalgamate_mr(ga, gb, c, rule_of(rule))));
  }, py::arg("a"), py::arg("b"), py::arg("shared"), py::arg("kind") = "mr", py::arg("rule") = "min",
        "Shared pairs are 1-based (vertex of A, vertex of B).");

  m.def("verify", [](const std::string& lemma, int r, int t, int max_size, const std::string& rule) {
    LemmaVerdict v;
    if (lemma == "size-lemma") v = check_size_lemma(r);
    else if (lemma == "triangle-class") v = check_triangle_classification(r);
    else if (lemma == "weight-bound") v = check_weight_bound(r, t);
    else if (lemma == "importantcor") v = check_importantcor(r);
    else if (lemma == "keycor") v = check_keycor(r);
    else if (lemma == "amalgam-mr") v = check_amalgamation_mr(r, max_size, rule_of(rule));
    else if (lemma == "amalgam-cr") v = check_amalgamation_cr(r, max_size);
    else throw DomainError("unknown lemma '" + lemma + "'");
    return to_py(to_json_value(v));
  }, py::arg("lemma"), py::arg("r"), py::arg("t") = 3, py::arg("max_size") = 3, py::arg("rule") = "min");

  m.def("matching_family_count", [](int r, int n) {
    const MatchingFamilyCount c = matching_family_count(r, n);
    py::list by_size;
    for (const auto& k : c.matchings_by_size) by_size.append(to_py_int(k));
    return py::make_tuple(to_py_int(c.matchings), to_py_int(c.total_size), by_size);
  }, py::arg("r"), py::arg("n"));

  m.def("default_axiom", [] { return to_py(to_json_value(default_axiom())); });
  m.def("eval_axiom", [](const py::dict& axiom, const py::dict& g) {
    return eval_extension_axiom(extension_axiom_from_json(from_py(axiom)), coloring(g));
  }, py::arg("axiom"), py::arg("coloring"));
  m.def("axiom_curve", [](const py::dict& axiom, const std::string& family, int n_min, int n_max,
                          std::uint64_t samples, std::uint64_t seed) {
    if (family != "cr" && family != "metric") throw DomainError("family must be 'cr' or 'metric'");
    const auto curve = empirical_mu(extension_axiom_from_json(from_py(axiom)),
                                    family == "cr" ? Family::Cr : Family::Metric, n_min, n_max, samples, seed);
    return to_py(to_json_value(curve));
  }, py::arg("axiom"), py::arg("family") = "cr", py::arg("n_min") = 4, py::arg("n_max") = 10,
        py::arg("samples") = 2000, py::arg("seed") = 1);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    const cli::CommandResult res = cli::run(args);
    return py::make_tuple(res.exit_code, res.output, res.diagnostics);
  }, py::arg("args"), "Runs the command-line tool in-process: (exit_code, stdout, stderr).");
}
