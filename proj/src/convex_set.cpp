#include "bwkit/convex_set.hpp"

#include "bwkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bwkit {

ConvexSetSpec ConvexSetSpec::trace_slice(Index n, double c) {
  ConvexSetSpec s;
  s.dimension = n;
  s.trace_eq = c;
  return s;
}

ConvexSetSpec ConvexSetSpec::ball(const SymmetricMatrix& center, double radius) {
  ConvexSetSpec s;
  s.dimension = center.dim();
  s.frobenius_ball = FrobeniusBall{center, radius};
  return s;
}

void ConvexSetSpec::validate() const {
  if (dimension < 1) throw DimensionMismatch("convex set dimension must be >= 1");
  auto check = [&](const AffineConstraint& c) {
    if (c.coeff.dim() != dimension) throw DimensionMismatch("set constraint coefficient has the wrong dimension");
    if (!std::isfinite(c.rhs)) throw InputError("set constraint right-hand side is not finite");
  };
  for (const auto& c : linear_eqs) check(c);
  for (const auto& c : linear_ineqs) check(c);
  if (trace_eq && !std::isfinite(*trace_eq)) throw InputError("trace_eq is not finite");
  if (frobenius_ball) {
    if (frobenius_ball->center.dim() != dimension) throw DimensionMismatch("ball center has the wrong dimension");
    if (!(frobenius_ball->radius >= 0.0)) throw InputError("ball radius must be non-negative");
  }
}

bool ConvexSetSpec::is_trace_slice() const {
  return trace_eq.has_value() && linear_eqs.empty() && linear_ineqs.empty() && !frobenius_ball;
}

double constraint_violation(const ConvexSetSpec& spec, const SymmetricMatrix& x) {
  if (x.dim() != spec.dimension) throw DimensionMismatch("membership: dimension mismatch");
  const Matrix& m = x.matrix();
  double v = std::max(0.0, -min_eigenvalue(x));
  auto scaled = [](double excess, double rhs) { return excess / (1.0 + std::abs(rhs)); };
  if (spec.trace_eq) v = std::max(v, scaled(std::abs(m.trace() - *spec.trace_eq), *spec.trace_eq));
  for (const auto& c : spec.linear_eqs) v = std::max(v, scaled(std::abs((c.coeff.matrix() * m).trace() - c.rhs), c.rhs));
  for (const auto& c : spec.linear_ineqs) v = std::max(v, scaled((c.coeff.matrix() * m).trace() - c.rhs, c.rhs));
  if (spec.frobenius_ball) {
    const auto& b = *spec.frobenius_ball;
    v = std::max(v, scaled((m - b.center.matrix()).norm() - b.radius, b.radius));
  }
  return v;
}

bool membership(const ConvexSetSpec& spec, const SymmetricMatrix& x, double tol) {
  return constraint_violation(spec, x) <= tol;
}

void add_set_constraints(sdp::SdpProblem& problem, const ConvexSetSpec& spec, const sdp::Variable& x) {
  spec.validate();
  if (x.kind != sdp::VariableKind::symmetric_matrix || x.rows != spec.dimension)
    throw DimensionMismatch("set constraints need a symmetric variable of the set's dimension");
  if (spec.trace_eq) problem.add_linear_eq(sdp::trace_of(x), *spec.trace_eq);
  for (const auto& c : spec.linear_eqs) problem.add_linear_eq(sdp::trace_product(c.coeff.matrix(), x), c.rhs);
  for (const auto& c : spec.linear_ineqs)
    problem.add_linear_ineq(sdp::trace_product(c.coeff.matrix(), x), c.rhs, sdp::Direction::less_equal);
  if (spec.frobenius_ball) {
    // [[r, vec(X - C)^T], [vec(X - C), r I]] >= 0  <=>  ||X - C||_F <= r
    const Index n = spec.dimension;
    const Index m = n * n + 1;
    const auto& ball = *spec.frobenius_ball;
    Matrix constant = ball.radius * Matrix::Identity(m, m);
    const Eigen::Map<const Vector> vec_c(ball.center.matrix().data(), n * n);
    constant.block(1, 0, n * n, 1) = -vec_c;
    constant.block(0, 1, 1, n * n) = -vec_c.transpose();
    sdp::AffineMatrixExpr expr(constant);
    expr.place_vectorized(x, 1, 0);
    problem.add_psd_block(std::move(expr), "frobenius ball");
  }
}

}  // namespace bwkit
