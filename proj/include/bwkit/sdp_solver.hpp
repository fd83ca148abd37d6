#pragma once

#include "bwkit/sdp_model.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace bwkit::sdp {

enum class SolveStatus { optimal, infeasible, unbounded, numerical_failure };

std::string to_string(SolveStatus s);

struct SolverSettings {
  double feas_tol = 1e-8;
  double gap_tol = 1e-8;
  int max_iterations = 100;
  /// Iterative refinement passes on each Newton system.
  int refinement_steps = 1;
};

/// Reads BWKIT_SOLVER_TOL (if set) into both tolerances of the defaults.
SolverSettings settings_from_environment(SolverSettings base = {});

struct Residuals {
  double primal = 0.0;  ///< relative primal infeasibility
  double dual = 0.0;    ///< relative dual infeasibility
  double gap = 0.0;     ///< min(absolute gap, relative gap)
  double absolute_gap = 0.0;
};

struct SdpSolution {
  SolveStatus status = SolveStatus::numerical_failure;
  double objective_value = 0.0;  ///< primal objective, constant included
  double dual_value = 0.0;       ///< dual objective, constant included
  Vector slots;                  ///< primal point, one entry per scalar slot
  std::map<VariableId, Matrix> assignments;
  std::vector<Matrix> psd_duals;  ///< multiplier of each PSD block
  Residuals residuals;
  int iterations = 0;
  std::string message;

  bool optimal() const { return status == SolveStatus::optimal; }
  const Matrix& value(const Variable& v) const;
};

/// Solver contract. Implementations must report failures through
/// SdpSolution::status rather than by throwing.
class SdpBackend {
 public:
  virtual ~SdpBackend() = default;
  virtual std::string name() const = 0;
  virtual SdpSolution solve(const SdpProblem& problem, const SolverSettings& settings) const = 0;
};

/// Dense primal-dual path-following method on the homogeneous self-dual
/// embedding, with Nesterov-Todd scaling and Mehrotra correction.
class InteriorPointBackend final : public SdpBackend {
 public:
  std::string name() const override { return "dense-nt-ipm"; }
  SdpSolution solve(const SdpProblem& problem, const SolverSettings& settings) const override;
};

const SdpBackend& default_backend();

SdpSolution solve(const SdpProblem& problem, const SolverSettings& settings = {});

}  // namespace bwkit::sdp
