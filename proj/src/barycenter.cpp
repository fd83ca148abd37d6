#include "bwkit/barycenter.hpp"

#include "bwkit/bw_programs.hpp"
#include "bwkit/errors.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

namespace bwkit {

void BarycenterProblem::validate() const {
  if (matrices.empty()) throw InputError("barycenter problem needs at least one matrix");
  if (weights.size() != matrices.size()) {
    std::ostringstream msg;
    msg << "barycenter problem has " << weights.size() << " weights for " << matrices.size() << " matrices";
    throw InputError(msg.str());
  }
  for (double w : weights)
    if (!(w > 0.0) || !std::isfinite(w)) throw InputError("barycenter weights must be positive and finite");
  for (const PdMatrix& m : matrices) require_same_dim(matrices.front().base(), m.base(), "barycenter problem");
  if (constraints && constraints->dimension != dim())
    throw DimensionMismatch("barycenter constraint set has the wrong dimension");
}

std::vector<double> BarycenterProblem::normalized_weights() const {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<double> w(weights);
  for (double& v : w) v /= total;
  return w;
}

std::string to_string(BarycenterRoute r) { return r == BarycenterRoute::sdp ? "sdp" : "fixed_point"; }

double barycenter_objective(const BarycenterProblem& p, const SymmetricMatrix& x) {
  const SymmetricMatrix xc = clamp_psd(x);
  double total = 0.0;
  for (std::size_t i = 0; i < p.matrices.size(); ++i)
    total += p.weights[i] * bw_distance_squared_psd(p.matrices[i].base(), xc).distance_squared;
  return total;
}

BarycenterResult solve_barycenter_sdp(const BarycenterProblem& p, const sdp::SolverSettings& settings) {
  p.validate();
  const Index n = p.dim();
  sdp::SdpProblem prob;
  const sdp::Variable x = prob.add_symmetric(n, "X");
  sdp::LinearExpr objective;
  for (std::size_t i = 0; i < p.matrices.size(); ++i) {
    const Matrix& a = p.matrices[i].matrix();
    const sdp::Variable k = prob.add_rectangular(n, n, "K" + std::to_string(i + 1));
    Matrix constant = Matrix::Zero(2 * n, 2 * n);
    constant.bottomRightCorner(n, n).setIdentity();
    sdp::AffineMatrixExpr block(constant);
    block.place(x, 0, 0);
    block.place(k, n, 0);
    prob.add_psd_block(std::move(block), "[[X, K_i^T], [K_i, I]]");
    const Matrix root = sqrt_psd(p.matrices[i].base()).matrix();
    objective += p.weights[i] * (sdp::LinearExpr(a.trace()) + sdp::trace_of(x) - 2.0 * sdp::trace_product(root, k));
  }
  if (p.constraints) add_set_constraints(prob, *p.constraints, x);
  prob.set_objective(std::move(objective));

  const sdp::SdpSolution sol = sdp::solve(prob, settings);
  if (sol.status == sdp::SolveStatus::infeasible)
    throw InfeasibleSetError("barycenter constraint set is empty");
  if (!sol.optimal()) throw SolverFailure(describe_failure("barycenter SDP", sol));

  BarycenterResult r{.x = SymmetricMatrix::from_symmetric_part(sol.value(x))};
  r.route = BarycenterRoute::sdp;
  r.solver_objective = sol.objective_value;
  r.residual = sol.residuals.gap;
  r.objective = barycenter_objective(p, r.x);
  return r;
}

BarycenterResult fixed_point_barycenter(const BarycenterProblem& p, const std::optional<PdMatrix>& x0,
                                        const FixedPointOptions& options) {
  p.validate();
  if (p.constraints) throw InputError("the fixed-point route does not support barycenter constraints");
  const std::vector<double> w = p.normalized_weights();
  const Index n = p.dim();

  Matrix x;
  if (x0) {
    if (x0->dim() != n) throw DimensionMismatch("fixed-point start has the wrong dimension");
    x = x0->matrix();
  } else {
    x = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < w.size(); ++i) x += w[i] * p.matrices[i].matrix();
  }

  BarycenterResult r{.x = SymmetricMatrix::from_symmetric_part(x)};
  r.route = BarycenterRoute::fixed_point;
  r.converged = false;
  for (int it = 1; it <= options.max_iter; ++it) {
    const PdMatrix current = PdMatrix::validate(SymmetricMatrix::from_symmetric_part(x));
    const EigenDecomposition e = eig_sym(current.base());
    const Matrix root = spectral_map(e, [](double l) { return std::sqrt(l); }).matrix();
    const Matrix inv_root = spectral_map(e, [](double l) { return 1.0 / std::sqrt(l); }).matrix();
    Matrix mean_root = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < w.size(); ++i) {
      const SymmetricMatrix inner = SymmetricMatrix::from_symmetric_part(root * p.matrices[i].matrix() * root);
      mean_root += w[i] * sqrt_psd(inner).matrix();
    }
    const Matrix next = SymmetricMatrix::from_symmetric_part(inv_root * mean_root * mean_root * inv_root).matrix();
    const double step = (next - x).norm();
    const double scale = 1.0 + x.norm();
    x = next;
    r.iterations = it;
    r.residual = step;
    if (step <= options.tol * scale) {
      r.converged = true;
      break;
    }
  }
  const SymmetricMatrix result = SymmetricMatrix::from_symmetric_part(x);
  PdMatrix::validate(result);
  r.x = result;
  r.objective = barycenter_objective(p, r.x);
  return r;
}

RouteComparison compare_routes(const BarycenterProblem& p, const sdp::SolverSettings& settings,
                               const FixedPointOptions& options) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  BarycenterResult via_sdp = solve_barycenter_sdp(p, settings);
  const auto t1 = clock::now();
  BarycenterResult via_fp = fixed_point_barycenter(p, std::nullopt, options);
  const auto t2 = clock::now();
  RouteComparison c{.sdp = std::move(via_sdp), .fixed_point = std::move(via_fp)};
  c.max_entry_deviation = (c.sdp.x.matrix() - c.fixed_point.x.matrix()).cwiseAbs().maxCoeff();
  c.objective_deviation = std::abs(c.sdp.objective - c.fixed_point.objective);
  c.sdp_seconds = std::chrono::duration<double>(t1 - t0).count();
  c.fixed_point_seconds = std::chrono::duration<double>(t2 - t1).count();
  return c;
}

}  // namespace bwkit
