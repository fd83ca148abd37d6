#pragma once

#include "bwkit/bw_core.hpp"
#include "bwkit/convex_set.hpp"
#include "bwkit/sdp_solver.hpp"

#include <optional>
#include <vector>

namespace bwkit {

/// Distance SDP in the coupling variable K:
///
///   minimize   Tr(A) + Tr(B) - 2 Tr(sqrt(A) K)
///   subject to [[B, K^T], [K, I]] >= 0
///
/// Its optimal value is the squared BW distance, and at the optimum
/// K^T K = B.
struct DistanceSdp {
  sdp::SdpProblem problem;
  sdp::Variable coupling;
};

DistanceSdp build_distance_sdp(const PdMatrix& a, const PdMatrix& b);

struct DistanceSdpResult {
  double distance_squared = 0.0;  ///< clamped at zero
  double raw_value = 0.0;         ///< solver objective before clamping
  Matrix coupling{};
  double tightness_residual = 0.0;  ///< ||K^T K - B||_F
  sdp::SdpSolution solution{};
};

/// Throws SolverFailure when the solver does not reach optimality.
DistanceSdpResult solve_distance(const PdMatrix& a, const PdMatrix& b, const sdp::SolverSettings& settings = {});

/// {X : rho(center, X)^2 <= radius_squared}
struct BwBall {
  BwBall(PdMatrix center, double radius_squared);
  PdMatrix center;
  double radius_squared;
};

/// Handles to what bw_ball_constraints added.
struct BallConstraint {
  sdp::Variable coupling;
  std::size_t psd_block = 0;
  std::size_t inequality = 0;
};

/// Adds [[X, K^T], [K, I]] >= 0 and Tr(A) + Tr(X) - 2 Tr(sqrt(A) K) <= d^2 for a
/// fresh coupling K.
BallConstraint bw_ball_constraints(sdp::SdpProblem& problem, const BwBall& ball, const sdp::Variable& x);

struct ObjectiveSpec {
  enum class Kind { frobenius_norm, trace, linear };
  Kind kind = Kind::frobenius_norm;
  Matrix coeff;  ///< linear objective tr(C X); symmetric

  static ObjectiveSpec frobenius_norm() { return {Kind::frobenius_norm, {}}; }
  static ObjectiveSpec trace() { return {Kind::trace, {}}; }
  static ObjectiveSpec linear(const SymmetricMatrix& c) { return {Kind::linear, c.matrix()}; }

  double evaluate(const SymmetricMatrix& x) const;
};

std::string to_string(ObjectiveSpec::Kind k);

/// Closed-form rho^2 may exceed d^2 by at most this much in a sound solution.
inline constexpr double kBallSoundnessTol = 1e-3;

struct BallSolveResult {
  SymmetricMatrix x;
  double value = 0.0;         ///< objective evaluated at x
  double solver_value = 0.0;  ///< solver objective
  /// Closed-form rho^2(center_i, x) for every ball, in input order.
  std::vector<double> closed_form_distance_squared{};
  bool sound = true;  ///< every closed-form check within kBallSoundnessTol
  double min_eigenvalue = 0.0;
  sdp::SdpSolution solution{};
};

/// Minimizes the objective over X >= 0, X in base_set, X in every ball.
/// Throws InfeasibleSetError when the constraints are incompatible and
/// SolverFailure on any other non-optimal outcome.
BallSolveResult solve_ball_constrained(const ObjectiveSpec& objective, const std::optional<ConvexSetSpec>& base_set,
                                       const std::vector<BwBall>& balls, const sdp::SolverSettings& settings = {});

/// Formats solver diagnostics for SolverFailure messages.
std::string describe_failure(const char* what, const sdp::SdpSolution& sol);

}  // namespace bwkit
