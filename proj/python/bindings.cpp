#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bwkit/barycenter.hpp"
#include "bwkit/bw_core.hpp"
#include "bwkit/bw_programs.hpp"
#include "bwkit/convex_set.hpp"
#include "bwkit/errors.hpp"
#include "bwkit/matrix_core.hpp"
#include "bwkit/random_spd.hpp"
#include "bwkit/set_geometry.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace bwkit;

namespace {

sdp::SolverSettings solver_settings(std::optional<double> tol) {
  sdp::SolverSettings s;
  if (tol) {
    if (!(*tol > 0.0)) throw InputError("solver_tol must be positive");
    s.feas_tol = s.gap_tol = *tol;
  }
  return s;
}

std::vector<PdMatrix> to_pd(const std::vector<Matrix>& ms) {
  std::vector<PdMatrix> out;
  out.reserve(ms.size());
  for (const Matrix& m : ms) out.push_back(PdMatrix::validate(m));
  return out;
}

BarycenterProblem make_problem(std::vector<double> weights, const std::vector<Matrix>& matrices,
                               std::optional<ConvexSetSpec> constraints) {
  BarycenterProblem p{std::move(weights), to_pd(matrices), std::move(constraints)};
  p.validate();
  return p;
}

py::dict barycenter_dict(const BarycenterResult& r) {
  return py::dict("x"_a = r.x.matrix(), "objective"_a = r.objective, "route"_a = to_string(r.route),
                  "iterations"_a = r.iterations, "residual"_a = r.residual, "converged"_a = r.converged);
}

ObjectiveSpec make_objective(const std::string& kind, const std::optional<Matrix>& coeff) {
  if (kind == "frobenius") return ObjectiveSpec::frobenius_norm();
  if (kind == "trace") return ObjectiveSpec::trace();
  if (kind == "linear") {
    if (!coeff) throw InputError("the linear objective needs coeff");
    return ObjectiveSpec::linear(SymmetricMatrix::symmetrize(*coeff));
  }
  throw InputError("objective must be frobenius, trace or linear, got '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(bwkit, m) {
  m.doc() = "Bures-Wasserstein distances, barycenters and set distances via semidefinite programming";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<InputError>(m, "InputError", error);
  py::register_exception<AsymmetryError>(m, "AsymmetryError", error);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", error);
  py::register_exception<NotPsdError>(m, "NotPsdError", error);
  py::register_exception<NotPdError>(m, "NotPdError", error);
  py::register_exception<InfeasibleSetError>(m, "InfeasibleSetError", error);
  py::register_exception<SolverFailure>(m, "SolverFailure", error);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", error);

  py::class_<ConvexSetSpec>(m, "ConvexSet")
      .def(py::init([](Index n) { return ConvexSetSpec{.dimension = n}; }), "dimension"_a)
      .def_static("trace_slice", &ConvexSetSpec::trace_slice, "n"_a, "trace"_a)
      .def_static(
          "frobenius_ball",
          [](const Matrix& center, double radius) { return ConvexSetSpec::ball(SymmetricMatrix::symmetrize(center), radius); },
          "center"_a, "radius"_a)
      .def_readonly("dimension", &ConvexSetSpec::dimension)
      .def_readwrite("trace_eq", &ConvexSetSpec::trace_eq)
      .def(
          "add_linear_eq",
          [](ConvexSetSpec& s, const Matrix& c, double rhs) { s.linear_eqs.push_back({SymmetricMatrix::symmetrize(c), rhs}); },
          "coeff"_a, "rhs"_a, "Adds tr(coeff X) = rhs.")
      .def(
          "add_linear_ineq",
          [](ConvexSetSpec& s, const Matrix& c, double rhs) { s.linear_ineqs.push_back({SymmetricMatrix::symmetrize(c), rhs}); },
          "coeff"_a, "rhs"_a, "Adds tr(coeff X) <= rhs.")
      .def(
          "contains",
          [](const ConvexSetSpec& s, const Matrix& x, double tol) { return membership(s, SymmetricMatrix::symmetrize(x), tol); },
          "x"_a, "tol"_a = 1e-7);

  m.def(
      "sqrt_psd", [](const Matrix& s) { return sqrt_psd(SymmetricMatrix::symmetrize(s)).matrix(); }, "s"_a,
      "Symmetric PSD square root.");
  m.def(
      "fidelity", [](const Matrix& a, const Matrix& b) { return fidelity_term(PdMatrix::validate(a), PdMatrix::validate(b)); },
      "a"_a, "b"_a, "Tr sqrt(sqrt(A) B sqrt(A)).");
  m.def(
      "bw_distance_squared",
      [](const Matrix& a, const Matrix& b) {
        return bw_distance_squared_psd(SymmetricMatrix::symmetrize(a), SymmetricMatrix::symmetrize(b)).distance_squared;
      },
      "a"_a, "b"_a, "Closed-form squared Bures-Wasserstein distance of PSD matrices.");
  m.def(
      "sdp_distance",
      [](const Matrix& a, const Matrix& b, std::optional<double> solver_tol) {
        const auto r = solve_distance(PdMatrix::validate(a), PdMatrix::validate(b), solver_settings(solver_tol));
        return py::dict("distance_squared"_a = r.distance_squared, "coupling"_a = r.coupling,
                        "tightness_residual"_a = r.tightness_residual);
      },
      "a"_a, "b"_a, "solver_tol"_a = py::none(), "Squared distance from the coupling SDP.");

  m.def(
      "barycenter",
      [](std::vector<double> weights, const std::vector<Matrix>& matrices, const std::string& route,
         std::optional<ConvexSetSpec> constraints, std::optional<double> solver_tol) {
        const auto p = make_problem(std::move(weights), matrices, std::move(constraints));
        if (route == "sdp") return barycenter_dict(solve_barycenter_sdp(p, solver_settings(solver_tol)));
        if (route == "fp") return barycenter_dict(fixed_point_barycenter(p));
        throw InputError("route must be sdp or fp, got '" + route + "'");
      },
      "weights"_a, "matrices"_a, "route"_a = "sdp", "constraints"_a = py::none(), "solver_tol"_a = py::none());
  m.def(
      "compare_routes",
      [](std::vector<double> weights, const std::vector<Matrix>& matrices, std::optional<double> solver_tol) {
        const auto c = compare_routes(make_problem(std::move(weights), matrices, std::nullopt), solver_settings(solver_tol));
        return py::dict("sdp"_a = barycenter_dict(c.sdp), "fixed_point"_a = barycenter_dict(c.fixed_point),
                        "max_entry_deviation"_a = c.max_entry_deviation, "objective_deviation"_a = c.objective_deviation);
      },
      "weights"_a, "matrices"_a, "solver_tol"_a = py::none());

  m.def(
      "set_distance",
      [](const ConvexSetSpec& a, const ConvexSetSpec& b, std::optional<Matrix> init, double tol, int max_iter,
         std::optional<double> solver_tol) {
        SetDistanceOptions opt{.tol = tol, .max_iter = max_iter, .solver = solver_settings(solver_tol)};
        std::optional<SymmetricMatrix> x0;
        if (init) x0 = SymmetricMatrix::symmetrize(*init);
        const auto r = set_distance(a, b, x0, opt);
        return py::dict("distance_squared"_a = r.distance_squared, "witness_a"_a = r.witness_a.matrix(),
                        "witness_b"_a = r.witness_b.matrix(), "iterations"_a = r.iterations, "converged"_a = r.converged,
                        "objective_history"_a = r.objective_history,
                        "closed_form_distance_squared"_a = r.closed_form_distance_squared);
      },
      "a"_a, "b"_a, "init"_a = py::none(), "tol"_a = SetDistanceOptions{}.tol, "max_iter"_a = SetDistanceOptions{}.max_iter,
      "solver_tol"_a = py::none(), "Alternating minimization of the BW distance between two convex sets.");

  m.def(
      "ball_solve",
      [](const std::string& objective, const std::vector<std::pair<Matrix, double>>& balls,
         std::optional<ConvexSetSpec> base_set, std::optional<Matrix> coeff, std::optional<double> solver_tol) {
        std::vector<BwBall> bw;
        for (const auto& [center, r2] : balls) bw.emplace_back(PdMatrix::validate(center), r2);
        const auto r = solve_ball_constrained(make_objective(objective, coeff), base_set, bw, solver_settings(solver_tol));
        return py::dict("x"_a = r.x.matrix(), "value"_a = r.value,
                        "closed_form_distance_squared"_a = r.closed_form_distance_squared, "sound"_a = r.sound);
      },
      "objective"_a, "balls"_a, "base_set"_a = py::none(), "coeff"_a = py::none(), "solver_tol"_a = py::none(),
      "Minimizes the objective over PSD matrices inside every BW ball (center, radius_squared).");

  m.def(
      "random_pd",
      [](Index n, double cond, std::uint64_t seed) {
        Rng rng(seed);
        return random_pd(n, cond, rng).matrix();
      },
      "n"_a, "cond"_a = 100.0, "seed"_a = 0, "Seeded random PD matrix with eigenvalues spanning [1, cond].");
}
