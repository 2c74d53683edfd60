#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>

#include "ulcm/bench.hpp"
#include "ulcm/linesearch.hpp"
#include "ulcm/problems.hpp"
#include "ulcm/solvers.hpp"

namespace py = pybind11;
using ulcm::Vector;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Vector to_vector(const Array& a) {
  if (a.ndim() != 1) throw std::invalid_argument("expected a 1-d array");
  return Vector(std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const Vector& v) {
  Array out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::dict trace_arrays(const ulcm::SolverReport& r) {
  const auto n = static_cast<py::ssize_t>(r.trace.size());
  Array f(n), L(n), A(n), dual(n), t(n);
  for (py::ssize_t i = 0; i < n; ++i) {
    const auto& rec = r.trace[static_cast<std::size_t>(i)];
    f.mutable_at(i) = rec.f;
    L.mutable_at(i) = rec.L;
    A.mutable_at(i) = rec.A;
    dual.mutable_at(i) = rec.dual_bound;
    t.mutable_at(i) = rec.elapsed_s;
  }
  py::dict d;
  d["f"] = f;
  d["L"] = L;
  d["A"] = A;
  d["dual_bound"] = dual;
  d["t_s"] = t;
  return d;
}

py::dict line_search_dict(const ulcm::LineSearchResult& r) {
  py::dict d;
  d["step"] = r.step;
  d["value"] = r.value;
  d["lo"] = r.lo;
  d["hi"] = r.hi;
  d["value_calls"] = r.value_calls;
  d["derivative_calls"] = r.derivative_calls;
  d["doublings"] = r.doublings;
  d["bisections"] = r.bisections;
  d["certified"] = r.certified;
  d["value_gap_bound"] = r.value_gap_bound;
  return d;
}

using SolveFn = ulcm::SolverReport (*)(const ulcm::Objective&, const Vector&, const ulcm::SolverOptions&);

auto solver(SolveFn fn) {
  return [fn](const ulcm::Objective& obj, const Array& x0, const ulcm::SolverOptions& opts) {
    return fn(obj, to_vector(x0), opts);
  };
}

}  // namespace

PYBIND11_MODULE(_ulcm, m) {
  m.doc() = "Linear coupling and universal gradient methods";

  py::register_exception<ulcm::DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<ulcm::UnboundedRayError>(m, "UnboundedRayError", PyExc_RuntimeError);

  py::class_<ulcm::LineSearchConfig>(m, "LineSearchConfig")
      .def(py::init<>())
      .def_readwrite("initial_length", &ulcm::LineSearchConfig::initial_length)
      .def_readwrite("tol_h", &ulcm::LineSearchConfig::tol_h)
      .def_readwrite("relative_tol", &ulcm::LineSearchConfig::relative_tol)
      .def_readwrite("tol_g", &ulcm::LineSearchConfig::tol_g)
      .def_readwrite("value_tol", &ulcm::LineSearchConfig::value_tol)
      .def_readwrite("max_doublings", &ulcm::LineSearchConfig::max_doublings)
      .def_readwrite("max_bisections", &ulcm::LineSearchConfig::max_bisections)
      .def_readwrite("two_sided", &ulcm::LineSearchConfig::two_sided);

  py::class_<ulcm::Objective>(m, "Objective")
      .def_property_readonly("dimension", &ulcm::Objective::dimension)
      .def("value", [](const ulcm::Objective& o, const Array& x) { return o.value(to_vector(x)); })
      .def("gradient",
           [](const ulcm::Objective& o, const Array& x) { return to_array(o.gradient(to_vector(x))); })
      .def_property_readonly("optimal_value", &ulcm::Objective::optimal_value)
      .def_property_readonly("minimizer", [](const ulcm::Objective& o) -> std::optional<Array> {
        if (auto x = o.minimizer()) return to_array(*x);
        return std::nullopt;
      });

  py::class_<ulcm::QuadraticProblem, ulcm::Objective>(m, "QuadraticProblem").def(py::init<std::size_t>(), py::arg("n"));
  py::class_<ulcm::MaxQuadProblem, ulcm::Objective>(m, "MaxQuadProblem")
      .def(py::init<std::size_t, double>(), py::arg("n"), py::arg("mu") = 0.1)
      .def_property_readonly("mu", &ulcm::MaxQuadProblem::mu);
  py::class_<ulcm::CompositeObjective, ulcm::Objective>(m, "CompositeObjective")
      .def("direct_ray_value",
           [](const ulcm::CompositeObjective& f, const Array& x, const Array& d, double h) {
             return f.direct_ray_value(to_vector(x), to_vector(d), h);
           })
      .def("ray_values",
           [](const ulcm::CompositeObjective& f, const Array& x, const Array& d, const std::vector<double>& hs) {
             auto ray = f.restrict_to_ray(to_vector(x), to_vector(d));
             std::vector<double> out;
             for (double h : hs) out.push_back(ray.value(h));
             return out;
           })
      .def_property_readonly("matvec_count", &ulcm::CompositeObjective::matvec_count);

  m.def("make_random_composite", &ulcm::make_random_composite, py::arg("n"), py::arg("seed"),
        py::arg("lambda_") = 0.0);

  m.def(
      "function_objective",
      [](std::size_t n, std::function<double(Array)> value, std::function<Array(Array)> gradient,
         std::optional<double> optimal_value) {
        return std::unique_ptr<ulcm::Objective>(new ulcm::FunctionObjective(
            n, [value](const Vector& x) { return value(to_array(x)); },
            [gradient, n](const Vector& x, Vector& g) {
              const Vector out = to_vector(gradient(to_array(x)));
              if (out.size() != n) throw ulcm::DimensionError(n, out.size());
              g = out;
            },
            optimal_value));
      },
      py::arg("n"), py::arg("value"), py::arg("gradient"), py::arg("optimal_value") = std::nullopt,
      "Objective from Python callables; gradient returns a 1-d array of length n.");

  m.def("quad_eval", [](std::size_t n, const Array& x) { return ulcm::quad_eval(n, to_vector(x)); });
  m.def("quad_grad", [](std::size_t n, const Array& x) { return to_array(ulcm::quad_grad(n, to_vector(x))); });
  m.def("maxquad_eval",
        [](std::size_t n, double mu, const Array& x) { return ulcm::maxquad_eval(n, mu, to_vector(x)); });
  m.def("maxquad_subgrad", [](std::size_t n, double mu, const Array& x) {
    return to_array(ulcm::maxquad_subgrad(n, mu, to_vector(x)));
  });

  py::class_<ulcm::SolverOptions>(m, "SolverOptions")
      .def(py::init<>())
      .def_readwrite("L0", &ulcm::SolverOptions::L0)
      .def_readwrite("eps", &ulcm::SolverOptions::eps)
      .def_readwrite("delta", &ulcm::SolverOptions::delta)
      .def_readwrite("theta", &ulcm::SolverOptions::theta)
      .def_readwrite("target_value", &ulcm::SolverOptions::target_value)
      .def_readwrite("max_iterations", &ulcm::SolverOptions::max_iterations)
      .def_readwrite("time_cap_s", &ulcm::SolverOptions::time_cap_s)
      .def_readwrite("max_doublings", &ulcm::SolverOptions::max_doublings)
      .def_readwrite("line_search", &ulcm::SolverOptions::line_search)
      .def_readwrite("check_invariants", &ulcm::SolverOptions::check_invariants);

  py::class_<ulcm::SolverReport>(m, "SolverReport")
      .def_property_readonly("reason", [](const ulcm::SolverReport& r) { return std::string(ulcm::to_string(r.reason)); })
      .def_readonly("message", &ulcm::SolverReport::message)
      .def_property_readonly("x", [](const ulcm::SolverReport& r) { return to_array(r.x); })
      .def_readonly("f", &ulcm::SolverReport::f)
      .def_readonly("f0", &ulcm::SolverReport::f0)
      .def_property_readonly("iterations", &ulcm::SolverReport::iterations)
      .def_readonly("wall_time_s", &ulcm::SolverReport::wall_time_s)
      .def_readonly("max_coefficient_residual", &ulcm::SolverReport::max_coefficient_residual)
      .def_readonly("max_dual_sum_residual", &ulcm::SolverReport::max_dual_sum_residual)
      .def_property_readonly("trace", &trace_arrays);

  m.def("ulcm_solve", solver(ulcm::ulcm_solve), py::arg("objective"), py::arg("x0"),
        py::arg("options") = ulcm::SolverOptions{});
  m.def("ulcm_fixed_step", solver(ulcm::ulcm_fixed_step), py::arg("objective"), py::arg("x0"),
        py::arg("options") = ulcm::SolverOptions{});
  m.def("ufgm_solve", solver(ulcm::ufgm_solve), py::arg("objective"), py::arg("x0"),
        py::arg("options") = ulcm::SolverOptions{});
  m.def("ncg_solve", solver(ulcm::ncg_solve), py::arg("objective"), py::arg("x0"),
        py::arg("options") = ulcm::SolverOptions{});

  m.def("inexact_lipschitz", &ulcm::inexact_lipschitz, py::arg("delta"), py::arg("nu"), py::arg("M"));
  m.def(
      "step_coefficients",
      [](double alpha, double L, double L_next) {
        const auto c = ulcm::step_coefficients(alpha, L, L_next);
        return py::make_tuple(c.alpha, c.tau);
      },
      py::arg("alpha"), py::arg("L"), py::arg("L_next"), "Returns (alpha_next, tau).");

  m.def(
      "localize",
      [](std::function<double(double)> value, double l0) {
        ulcm::RayFunction g(std::move(value));
        const auto loc = ulcm::localize(g, l0);
        py::dict d;
        d["length"] = loc.length;
        d["doublings"] = loc.doublings;
        d["lower"] = loc.lower();
        d["upper"] = loc.upper();
        return d;
      },
      py::arg("value"), py::arg("l0") = 1.0);
  m.def(
      "minimize_ray",
      [](std::function<double(double)> value, std::optional<std::function<double(double)>> derivative,
         const ulcm::LineSearchConfig& cfg) {
        ulcm::RayFunction g(std::move(value), derivative ? *derivative : ulcm::RayFunction::ScalarFn{});
        return line_search_dict(ulcm::minimize_ray(g, cfg));
      },
      py::arg("value"), py::arg("derivative") = std::nullopt, py::arg("config") = ulcm::LineSearchConfig{});

  namespace b = ulcm::bench;
  py::class_<b::RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("solver", &b::RunConfig::solver)
      .def_readwrite("problem", &b::RunConfig::problem)
      .def_readwrite("n", &b::RunConfig::n)
      .def_readwrite("mu", &b::RunConfig::mu)
      .def_readwrite("eps", &b::RunConfig::eps)
      .def_readwrite("delta", &b::RunConfig::delta)
      .def_readwrite("L0", &b::RunConfig::L0)
      .def_readwrite("theta", &b::RunConfig::theta)
      .def_readwrite("theta_exact", &b::RunConfig::theta_exact)
      .def_readwrite("x0_scale", &b::RunConfig::x0_scale)
      .def_property(
          "stop", [](const b::RunConfig& c) { return std::string(b::to_string(c.stop)); },
          [](b::RunConfig& c, const std::string& s) { c.stop = b::stop_mode_from_string(s); })
      .def_readwrite("max_iterations", &b::RunConfig::max_iterations)
      .def_readwrite("time_cap_s", &b::RunConfig::time_cap_s)
      .def_readwrite("stride", &b::RunConfig::stride)
      .def_readwrite("trace_path", &b::RunConfig::trace_path)
      .def_readwrite("seed", &b::RunConfig::seed)
      .def_readwrite("lambda_", &b::RunConfig::lambda);

  m.def(
      "run_one",
      [](const b::RunConfig& c) {
        const auto r = b::run_one(c);
        py::dict d;
        d["iterations"] = r.iterations;
        d["wall_time_s"] = r.wall_time_s;
        d["initial_f"] = r.initial_f;
        d["final_f"] = r.final_f;
        d["termination"] = r.termination;
        d["message"] = r.message;
        d["trace_path"] = r.trace_path;
        return d;
      },
      py::arg("config"));
}
