#pragma once

#include "bwkit/bw_programs.hpp"
#include "bwkit/convex_set.hpp"

#include <optional>
#include <vector>

namespace bwkit {

struct HalfStepResult {
  SymmetricMatrix x;
  /// Tr(anchor) + Tr(X) - 2 Tr(sqrt(anchor) K) at the optimum; equals
  /// rho^2(anchor, X) when the relaxation is tight.
  double value = 0.0;
  Matrix coupling{};
};

/// argmin over X in `target` of rho^2(anchor, X), via
///
///   minimize   Tr(X) - 2 Tr(sqrt(anchor) K)
///   subject to [[X, K^T], [K, I]] >= 0,  X in target.
///
/// The anchor may be PSD; its square root is taken with clamping.
/// Throws InfeasibleSetError, UnboundedSubproblemError or SolverFailure.
HalfStepResult project_half_step(const SymmetricMatrix& anchor, const ConvexSetSpec& target,
                                 const sdp::SolverSettings& settings = {});

struct SetDistanceOptions {
  double tol = 1e-7;
  int max_iter = 200;
  sdp::SolverSettings solver;
};

struct SetDistanceResult {
  double distance_squared = 0.0;
  SymmetricMatrix witness_a;
  SymmetricMatrix witness_b;
  int iterations = 0;
  /// Closed-form rho^2 of the accepted witness pair after every half-step
  /// (B-step, A-step, B-step, ...). A half-step whose solution would raise
  /// the objective is rejected and the previous witness kept.
  std::vector<double> objective_history{};
  bool converged = false;
  /// rho^2(witness_a, witness_b) from the closed form.
  double closed_form_distance_squared = 0.0;
};

/// A deterministic point of the set: (c/n) I for trace slices, otherwise the
/// point maximizing the smallest eigenvalue (capped at 1).
/// Throws InfeasibleSetError when the set is empty.
SymmetricMatrix default_init(const ConvexSetSpec& spec, const sdp::SolverSettings& settings = {});

/// Alternating minimization of rho^2 between two convex sets, starting from
/// `init` in set A (default_init(spec_a) when absent). Stops when two
/// consecutive half-step values agree to tol * (1 + value). Returns the
/// last iterate with converged == false after max_iter full iterations.
SetDistanceResult set_distance(const ConvexSetSpec& spec_a, const ConvexSetSpec& spec_b,
                               const std::optional<SymmetricMatrix>& init = std::nullopt,
                               const SetDistanceOptions& options = {});

}  // namespace bwkit
