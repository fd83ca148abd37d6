#pragma once

#include "bwkit/matrix_core.hpp"
#include "bwkit/sdp_model.hpp"

#include <optional>
#include <vector>

namespace bwkit {

/// tr(coeff * X) = rhs (equalities) or tr(coeff * X) <= rhs (inequalities).
struct AffineConstraint {
  SymmetricMatrix coeff;
  double rhs = 0.0;
};

/// {X : ||X - center||_F <= radius}
struct FrobeniusBall {
  SymmetricMatrix center;
  double radius = 0.0;
};

/// Convex subset of the PSD cone: X >= 0 plus the listed affine and ball
/// constraints.
struct ConvexSetSpec {
  Index dimension = 1;
  std::optional<double> trace_eq;
  std::vector<AffineConstraint> linear_eqs;
  std::vector<AffineConstraint> linear_ineqs;
  std::optional<FrobeniusBall> frobenius_ball;

  /// {X >= 0 : tr X = c}
  static ConvexSetSpec trace_slice(Index n, double c);
  /// {X >= 0 : ||X - center||_F <= radius}
  static ConvexSetSpec ball(const SymmetricMatrix& center, double radius);

  /// Throws DimensionMismatch / InputError on malformed specs.
  void validate() const;

  /// True when the only constraint is the trace equality.
  bool is_trace_slice() const;
};

/// Largest violation over X >= 0 (as -lambda_min) and every affine / ball
/// constraint (as excess over the bound, divided by 1 + |rhs|). Zero inside.
double constraint_violation(const ConvexSetSpec& spec, const SymmetricMatrix& x);

/// constraint_violation(spec, x) <= tol
bool membership(const ConvexSetSpec& spec, const SymmetricMatrix& x, double tol);

/// Adds the affine and ball constraints of `spec` on the symmetric variable
/// `x`. X >= 0 itself is not added.
void add_set_constraints(sdp::SdpProblem& problem, const ConvexSetSpec& spec, const sdp::Variable& x);

}  // namespace bwkit
