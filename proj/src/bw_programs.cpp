#include "bwkit/bw_programs.hpp"

#include "bwkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bwkit {

namespace {

// [[top, K^T], [K, I]] with K placed in the lower-left block.
sdp::AffineMatrixExpr coupling_block(const Matrix& top, const sdp::Variable& k) {
  const Index n = top.rows();
  Matrix constant = Matrix::Zero(2 * n, 2 * n);
  constant.topLeftCorner(n, n) = top;
  constant.bottomRightCorner(n, n).setIdentity();
  sdp::AffineMatrixExpr expr(constant);
  expr.place(k, n, 0);
  return expr;
}

}  // namespace

std::string describe_failure(const char* what, const sdp::SdpSolution& sol) {
  std::ostringstream msg;
  msg << what << ": solver status " << sdp::to_string(sol.status) << " after " << sol.iterations << " iterations ("
      << sol.message << "; primal residual " << sol.residuals.primal << ", dual residual " << sol.residuals.dual
      << ", gap " << sol.residuals.gap << ")";
  return msg.str();
}

DistanceSdp build_distance_sdp(const PdMatrix& a, const PdMatrix& b) {
  require_same_dim(a.base(), b.base(), "build_distance_sdp");
  const Index n = a.dim();
  DistanceSdp d;
  d.coupling = d.problem.add_rectangular(n, n, "K");
  const Matrix root_a = sqrt_psd(a.base()).matrix();
  d.problem.set_objective(sdp::LinearExpr(a.matrix().trace() + b.matrix().trace()) -
                          2.0 * sdp::trace_product(root_a, d.coupling));
  d.problem.add_psd_block(coupling_block(b.matrix(), d.coupling), "[[B, K^T], [K, I]]");
  return d;
}

DistanceSdpResult solve_distance(const PdMatrix& a, const PdMatrix& b, const sdp::SolverSettings& settings) {
  DistanceSdp d = build_distance_sdp(a, b);
  DistanceSdpResult r;
  r.solution = sdp::solve(d.problem, settings);
  if (!r.solution.optimal()) throw SolverFailure(describe_failure("distance SDP", r.solution));
  r.raw_value = r.solution.objective_value;
  r.distance_squared = std::max(r.raw_value, 0.0);
  r.coupling = r.solution.value(d.coupling);
  r.tightness_residual = (r.coupling.transpose() * r.coupling - b.matrix()).norm();
  return r;
}

BwBall::BwBall(PdMatrix c, double r2) : center(std::move(c)), radius_squared(r2) {
  if (!(radius_squared > 0.0) || !std::isfinite(radius_squared))
    throw InputError("BW ball radius_squared must be positive and finite");
}

BallConstraint bw_ball_constraints(sdp::SdpProblem& problem, const BwBall& ball, const sdp::Variable& x) {
  if (x.kind != sdp::VariableKind::symmetric_matrix || x.rows != ball.center.dim())
    throw DimensionMismatch("BW ball center does not match the matrix variable");
  const Index n = x.rows;
  BallConstraint bc;
  bc.coupling = problem.add_rectangular(n, n, "K_ball" + std::to_string(problem.psd_blocks().size()));

  Matrix constant = Matrix::Zero(2 * n, 2 * n);
  constant.bottomRightCorner(n, n).setIdentity();
  sdp::AffineMatrixExpr expr(constant);
  expr.place(x, 0, 0);
  expr.place(bc.coupling, n, 0);
  bc.psd_block = problem.psd_blocks().size();
  problem.add_psd_block(std::move(expr), "[[X, K^T], [K, I]]");

  const Matrix root = sqrt_psd(ball.center.base()).matrix();
  sdp::LinearExpr lhs = sdp::LinearExpr(ball.center.matrix().trace()) + sdp::trace_of(x) -
                        2.0 * sdp::trace_product(root, bc.coupling);
  bc.inequality = problem.linear_ineqs().size();
  problem.add_linear_ineq(std::move(lhs), ball.radius_squared, sdp::Direction::less_equal);
  return bc;
}

double ObjectiveSpec::evaluate(const SymmetricMatrix& x) const {
  switch (kind) {
    case Kind::frobenius_norm:
      return x.matrix().norm();
    case Kind::trace:
      return x.matrix().trace();
    case Kind::linear:
      return (coeff * x.matrix()).trace();
  }
  return 0.0;
}

std::string to_string(ObjectiveSpec::Kind k) {
  switch (k) {
    case ObjectiveSpec::Kind::frobenius_norm:
      return "frobenius_norm";
    case ObjectiveSpec::Kind::trace:
      return "trace";
    case ObjectiveSpec::Kind::linear:
      return "linear";
  }
  return "?";
}

BallSolveResult solve_ball_constrained(const ObjectiveSpec& objective, const std::optional<ConvexSetSpec>& base_set,
                                       const std::vector<BwBall>& balls, const sdp::SolverSettings& settings) {
  if (balls.empty() && !base_set) throw InputError("ball-constrained solve needs at least one ball or a base set");
  const Index n = balls.empty() ? base_set->dimension : balls.front().center.dim();
  for (const BwBall& b : balls)
    if (b.center.dim() != n) throw DimensionMismatch("BW balls have different dimensions");
  if (base_set && base_set->dimension != n) throw DimensionMismatch("base set dimension does not match the balls");

  sdp::SdpProblem p;
  const sdp::Variable x = p.add_symmetric(n, "X");
  for (const BwBall& b : balls) bw_ball_constraints(p, b, x);
  // Each ball block already forces X >= K^T K >= 0.
  if (balls.empty()) {
    sdp::AffineMatrixExpr psd(n);
    psd.place(x, 0, 0);
    p.add_psd_block(std::move(psd), "X >= 0");
  }
  if (base_set) add_set_constraints(p, *base_set, x);

  switch (objective.kind) {
    case ObjectiveSpec::Kind::frobenius_norm: {
      // minimize t with [[t, vec(X)^T], [vec(X), t I]] >= 0
      const sdp::Variable t = p.add_scalar("t");
      sdp::AffineMatrixExpr epi(n * n + 1);
      epi.place_scaled_identity(t, 0, n * n + 1);
      epi.place_vectorized(x, 1, 0);
      p.add_psd_block(std::move(epi), "frobenius epigraph");
      p.set_objective(sdp::value_of(t));
      break;
    }
    case ObjectiveSpec::Kind::trace:
      p.set_objective(sdp::trace_of(x));
      break;
    case ObjectiveSpec::Kind::linear:
      if (objective.coeff.rows() != n || objective.coeff.cols() != n)
        throw DimensionMismatch("linear objective coefficient has the wrong dimension");
      p.set_objective(sdp::trace_product(SymmetricMatrix::symmetrize(objective.coeff).matrix(), x));
      break;
  }

  BallSolveResult r{.x = SymmetricMatrix::identity(n)};
  r.solution = sdp::solve(p, settings);
  if (r.solution.status == sdp::SolveStatus::infeasible)
    throw InfeasibleSetError("ball-constrained program is infeasible (balls and base set do not intersect)");
  if (!r.solution.optimal()) throw SolverFailure(describe_failure("ball-constrained program", r.solution));

  r.x = SymmetricMatrix::from_symmetric_part(r.solution.value(x));
  r.solver_value = r.solution.objective_value;
  r.value = objective.evaluate(r.x);
  r.min_eigenvalue = min_eigenvalue(r.x);
  // The solver only guarantees X >= 0 up to its tolerance; validate the
  // clamped matrix with the closed form.
  const SymmetricMatrix xc = clamp_psd(r.x);
  for (const BwBall& b : balls) {
    const double d2 = bw_distance_squared_psd(b.center.base(), xc).distance_squared;
    r.closed_form_distance_squared.push_back(d2);
    if (d2 > b.radius_squared + kBallSoundnessTol) r.sound = false;
  }
  return r;
}

}  // namespace bwkit
