#include <ainv/affine_domain.hpp>
#include <ainv/const_domain.hpp>
#include <ainv/driver.hpp>
#include <ainv/errors.hpp>
#include <ainv/finite_oracle.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace ainv;

namespace {

// Python ints, Fractions and "p/q" strings all go through str().
PointSet to_points(const py::iterable& rows, std::size_t& n) {
  PointSet out;
  bool first = true;
  for (const auto& row : rows) {
    Point p;
    for (const auto& v : py::reinterpret_borrow<py::iterable>(row)) {
      Rational q;
      if (q.set_str(py::str(v).cast<std::string>(), 10) != 0)
        throw py::value_error("not a rational: " + py::str(v).cast<std::string>());
      q.canonicalize();
      p.push_back(q);
    }
    if (first) n = p.size();
    else if (p.size() != n) throw py::value_error("points of different dimension");
    first = false;
    out.insert(std::move(p));
  }
  return out;
}

py::dict report_to_dict(const AnalysisReport& r) {
  py::dict d;
  d["domain"] = r.domain;
  d["algorithm"] = r.algorithm;
  d["found"] = r.found;
  d["kind"] = r.kind;
  d["steps"] = r.steps;
  d["reason"] = r.found ? py::object(py::none()) : py::object(py::str(r.reason));
  py::dict inv;
  for (std::size_t q = 0; q < r.nodes.size(); ++q) inv[py::str(r.nodes[q])] = r.invariant[q];
  d["invariant"] = inv;
  py::list trace;
  for (const auto& it : r.trace) {
    py::dict step;
    for (std::size_t q = 0; q < r.nodes.size(); ++q) step[py::str(r.nodes[q])] = it[q];
    trace.append(step);
  }
  d["trace"] = trace;
  return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Abstract inductive invariant synthesis over Const and affine domains";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<Unsupported>(m, "Unsupported", error.ptr());
  py::register_exception<IterationBudgetExceeded>(m, "IterationBudgetExceeded", error.ptr());

  py::class_<Program>(m, "Program")
      .def_property_readonly("vars", &Program::vars)
      .def_property_readonly("sort", [](const Program& p) {
        return p.sort() == Sort::integer ? "int" : "rat";
      })
      .def_property_readonly("nodes", &Program::nodes)
      .def_property_readonly("edge_count", [](const Program& p) { return p.edges().size(); })
      .def("__str__", &print_program)
      .def("__eq__", [](const Program& a, const Program& b) { return a == b; });

  m.def("parse_program", [](const std::string& text) { return parse_program(text); },
        py::arg("text"));
  m.def("print_program", &print_program, py::arg("program"));

  m.def(
      "analyze",
      [](const Program& p, const std::string& domain, const std::string& algorithm,
         const std::vector<std::string>& props, std::size_t max_steps) {
        AnalyzeRequest req{domain, algorithm, props, max_steps};
        AnalysisReport r;
        {
          py::gil_scoped_release release;
          r = analyze(p, req);
        }
        return report_to_dict(r);
      },
      py::arg("program"), py::arg("domain") = "const", py::arg("algorithm") = "forward",
      py::arg("props") = std::vector<std::string>{}, py::arg("max_steps") = 10000);

  m.def(
      "analyze_json",
      [](const Program& p, const std::string& domain, const std::string& algorithm,
         const std::vector<std::string>& props) {
        return render_json(analyze(p, {domain, algorithm, props}));
      },
      py::arg("program"), py::arg("domain") = "const", py::arg("algorithm") = "forward",
      py::arg("props") = std::vector<std::string>{});

  m.def(
      "const_alpha",
      [](const py::iterable& points) {
        std::size_t n = 0;
        const auto pts = to_points(points, n);
        for (const auto& p : pts)
          for (const auto& v : p)
            if (!is_integral(v)) throw py::value_error("Const points must be integral");
        return to_string(alpha_points(pts, n));
      },
      py::arg("points"));

  m.def(
      "affine_hull",
      [](const py::iterable& points, std::size_t n) {
        std::size_t seen = n;
        const auto pts = to_points(points, seen);
        if (!pts.empty() && seen != n) throw py::value_error("point dimension mismatch");
        return to_string(AffSubspace::hull(pts, n));
      },
      py::arg("points"), py::arg("n"));

  m.def("suite_names", &finite::suite_names);
  m.def(
      "run_suite",
      [](const std::string& name, std::uint64_t seed, std::size_t trials) {
        std::vector<finite::SuiteReport> reps;
        {
          py::gil_scoped_release release;
          reps = finite::run_suite(name, seed, trials);
        }
        py::list out;
        for (const auto& r : reps) {
          py::dict d;
          d["name"] = r.name;
          d["trials"] = r.trials;
          d["failures"] = r.failures;
          d["first_failure_seed"] = r.first_failure_seed
                                        ? py::object(py::int_(*r.first_failure_seed))
                                        : py::object(py::none());
          out.append(d);
        }
        return out;
      },
      py::arg("name") = "all", py::arg("seed") = 0, py::arg("trials") = 100);
}
