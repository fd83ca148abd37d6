#pragma once

#include "bwkit/bw_core.hpp"
#include "bwkit/convex_set.hpp"
#include "bwkit/sdp_solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bwkit {

/// Weighted BW barycenter instance: argmin_X sum_i w_i rho^2(A_i, X).
struct BarycenterProblem {
  std::vector<double> weights;
  std::vector<PdMatrix> matrices;
  /// Extra convex constraints on X; only the SDP route supports them.
  std::optional<ConvexSetSpec> constraints;

  Index dim() const { return matrices.front().dim(); }
  /// Throws InputError / DimensionMismatch when the instance is malformed.
  void validate() const;
  /// Weights scaled to sum to one.
  std::vector<double> normalized_weights() const;
};

enum class BarycenterRoute { sdp, fixed_point };

std::string to_string(BarycenterRoute r);

struct BarycenterResult {
  SymmetricMatrix x;
  /// sum_i w_i rho^2(A_i, X) with the closed form and the problem's raw weights.
  double objective = 0.0;
  BarycenterRoute route = BarycenterRoute::sdp;
  int iterations = 0;   ///< fixed-point iterations (0 for the SDP route)
  double residual = 0.0;  ///< fixed point: last ||X_{k+1} - X_k||_F; SDP: solver gap
  bool converged = true;
  double solver_objective = 0.0;  ///< SDP route only
};

/// sum_i w_i rho^2(A_i, X) with the problem's raw weights.
double barycenter_objective(const BarycenterProblem& p, const SymmetricMatrix& x);

/// minimize sum_i w_i (Tr(A_i) + Tr(X) - 2 Tr(sqrt(A_i) K_i))
/// subject to [[X, K_i^T], [K_i, I]] >= 0 for every i, X in constraints.
BarycenterResult solve_barycenter_sdp(const BarycenterProblem& p, const sdp::SolverSettings& settings = {});

struct FixedPointOptions {
  double tol = 1e-10;
  int max_iter = 500;
};

/// Iterates X <- X^{-1/2} (sum_i w_i sqrt(X^{1/2} A_i X^{1/2}))^2 X^{-1/2}
/// with weights normalized to sum one, starting from x0 (default: the
/// weighted arithmetic mean). Stops when ||X_{k+1} - X_k||_F <= tol (1 + ||X_k||_F).
/// Returns the last iterate with converged == false at max_iter.
BarycenterResult fixed_point_barycenter(const BarycenterProblem& p, const std::optional<PdMatrix>& x0 = std::nullopt,
                                        const FixedPointOptions& options = {});

struct RouteComparison {
  BarycenterResult sdp;
  BarycenterResult fixed_point;
  double max_entry_deviation = 0.0;
  double objective_deviation = 0.0;
  double sdp_seconds = 0.0;
  double fixed_point_seconds = 0.0;
};

RouteComparison compare_routes(const BarycenterProblem& p, const sdp::SolverSettings& settings = {},
                               const FixedPointOptions& options = {});

}  // namespace bwkit
