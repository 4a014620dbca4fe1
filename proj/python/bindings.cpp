#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hatlab/cli.hpp"
#include "hatlab/cover.hpp"
#include "hatlab/cube.hpp"
#include "hatlab/error.hpp"
#include "hatlab/game.hpp"
#include "hatlab/parallel.hpp"
#include "hatlab/windmill.hpp"

namespace py = pybind11;
using namespace hatlab;

namespace {

py::dict report_dict(const VerificationReport& r) {
  py::dict d;
  d["wins"] = r.wins;
  d["checked"] = r.assignments_checked;
  if (r.counterexample)
    d["counterexample"] = std::vector<int>(r.counterexample->colors.begin(), r.counterexample->colors.end());
  else
    d["counterexample"] = py::none();
  return d;
}

Strategy to_strategy(int q, const std::vector<std::vector<int>>& tables) {
  Strategy s{q, {}};
  for (const auto& t : tables) {
    std::vector<Color> row;
    for (int c : t) {
      if (c < 0 || c >= q) throw ParameterError("guess out of range");
      row.push_back(static_cast<Color>(c));
    }
    s.tables.push_back(std::move(row));
  }
  return s;
}

std::vector<std::vector<int>> from_strategy(const Strategy& s) {
  std::vector<std::vector<int>> out;
  for (const auto& t : s.tables) out.emplace_back(t.begin(), t.end());
  return out;
}

Graph graph_of(const std::string& spec) { return parse_graph_spec(spec); }

}  // namespace

PYBIND11_MODULE(_hatlab, m) {
  m.doc() = "Hat-guessing games on graphs: strategies, coverability and cube sweeps";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
  py::register_exception<ConditionViolated>(m, "ConditionViolated", PyExc_RuntimeError);
  py::register_exception<CertificateInvalid>(m, "CertificateInvalid", PyExc_RuntimeError);

  m.def("set_thread_count", &set_thread_count, py::arg("n"));

  m.def("graph", [](const std::string& spec) {
    const Graph g = graph_of(spec);
    std::vector<std::vector<int>> adj;
    for (int v = 0; v < g.n_vertices(); ++v) adj.push_back(g.neighbors(v));
    return adj;
  }, py::arg("spec"), "Adjacency lists of a graph given as e.g. 'windmill:3,2'.");

  m.def("complete_sum_strategy", [](int n, int q) { return from_strategy(complete_sum_strategy(n, q)); },
        py::arg("n"), py::arg("q"));

  m.def("verify_strategy",
        [](const std::string& spec, int q, const std::vector<std::vector<int>>& tables,
           std::uint64_t budget) {
          const Graph g = graph_of(spec);
          const Strategy s = to_strategy(q, tables);
          py::gil_scoped_release release;
          auto r = verify_strategy(g, q, s, budget);
          py::gil_scoped_acquire acquire;
          return report_dict(r);
        },
        py::arg("graph"), py::arg("q"), py::arg("tables"), py::arg("budget") = kDefaultAssignmentBudget);

  m.def("search_strategy", [](const std::string& spec, int q, std::uint64_t nodes) -> py::object {
    const auto r = search_strategy(graph_of(spec), q, nodes);
    if (r.status == SearchStatus::budget_exhausted)
      throw InfeasibleError("node budget exhausted", nodes + 1, nodes);
    if (!r.strategy) return py::none();
    return py::cast(from_strategy(*r.strategy));
  }, py::arg("graph"), py::arg("q"), py::arg("nodes") = 10'000'000);

  m.def("solvable_interval_set", [](int n, int q) {
    const auto built = solvable_interval_set(n, q);
    std::vector<std::vector<int>> members;
    for (const auto& x : built.set.members) members.emplace_back(x.begin(), x.end());
    return py::make_tuple(members, from_strategy(built.strategy));
  }, py::arg("n"), py::arg("q"));

  m.def("max_solvable_set_search", &max_solvable_set_search, py::arg("n"), py::arg("q"),
        py::arg("budget") = kDefaultStrategyBudget);

  m.def("eq1_bound", [](const std::string& spec) {
    return py::int_(py::str(eq1_bound(graph_of(spec)).str()));
  }, py::arg("graph"));

  m.def("coverable", [](int d, const std::vector<cover::Point>& points) {
    const auto s = cover::make_point_set(d, points);
    const auto r = cover::coverable(s);
    py::dict out;
    out["coverable"] = std::holds_alternative<cover::AxisPartition>(r);
    if (auto* p = std::get_if<cover::AxisPartition>(&r))
      out["axis_of"] = p->axis_of;
    else
      out["violator"] = std::get<cover::HallViolator>(r).subset.points;
    return out;
  }, py::arg("d"), py::arg("points"));

  m.def("coverable_bruteforce", [](int d, const std::vector<cover::Point>& points) {
    return cover::coverable_bruteforce(cover::make_point_set(d, points));
  }, py::arg("d"), py::arg("points"));

  m.def("noncoverable_construction", [](int d) { return cover::noncoverable_construction(d).points; },
        py::arg("d"));

  m.def("lemma_three_cubes_verify", [] { return cube::lemma_three_cubes_verify().minimum; });
  m.def("lemma_four_cubes_verify", [] {
    py::gil_scoped_release release;
    const auto r = cube::lemma_four_cubes_verify();
    py::gil_scoped_acquire acquire;
    py::dict d;
    d["quadruples"] = r.quadruples;
    d["violations"] = r.violations;
    d["minimum"] = r.minimum;
    return d;
  });
  m.def("square_two_intersection_minima", [] {
    const auto r = cube::square_two_intersection_minima();
    return py::make_tuple(r.pairs, r.triples, r.distinct_quadruples);
  });
  m.def("prism_cover_impossible", [] { return cube::prism_cover_impossible().impossible; });
  m.def("k22_certificate_search", [] {
    std::vector<std::vector<std::string>> out;
    for (const auto& p : cube::k22_certificate_search()) {
      std::vector<std::string> parts;
      for (auto s : p) parts.push_back(cube::to_hex(s));
      out.push_back(parts);
    }
    return out;
  });

  m.def("windmill_strategy", [](const std::string& theorem, int a, int n) {
    const auto c = theorem == "2k2" ? windmill::product_certificate_theorem13(a, n)
                 : theorem == "dn" ? windmill::product_certificate_theorem14(a, n)
                                   : throw ParameterError("theorem must be '2k2' or 'dn'");
    const auto ws = windmill::assemble_windmill_strategy(c);
    return py::make_tuple(c.k, c.q, from_strategy(ws.dense()));
  }, py::arg("theorem"), py::arg("a"), py::arg("n"),
     "Dense strategy on the windmill from the 2k-2 (a = k) or d^n (a = d) construction.");

  m.def("difference_disjoint_family", [](int d, int n) {
    std::vector<std::vector<int>> out;
    for (const auto& s : windmill::difference_disjoint_family(d, n).sets) out.push_back(s.members);
    return out;
  }, py::arg("d"), py::arg("n"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command-line front end; returns (exit code, stdout, stderr).");
}
