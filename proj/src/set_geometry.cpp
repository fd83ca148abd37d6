#include "bwkit/set_geometry.hpp"

#include "bwkit/errors.hpp"

#include <cmath>
#include <sstream>

namespace bwkit {

namespace {

constexpr double kInitMembershipTol = 1e-6;

void raise_for_status(const sdp::SdpSolution& sol, const char* what) {
  switch (sol.status) {
    case sdp::SolveStatus::optimal:
      return;
    case sdp::SolveStatus::infeasible:
      throw InfeasibleSetError(std::string(what) + ": the convex set is empty");
    case sdp::SolveStatus::unbounded:
      throw UnboundedSubproblemError(std::string(what) + ": subproblem is unbounded");
    case sdp::SolveStatus::numerical_failure:
      throw SolverFailure(describe_failure(what, sol));
  }
}

// A trace slice with c < 0 has no PSD member; catch it before the solver.
void reject_negative_trace(const ConvexSetSpec& spec) {
  if (spec.trace_eq && *spec.trace_eq < 0.0) {
    std::ostringstream msg;
    msg << "convex set is empty: Tr(X) = " << *spec.trace_eq << " < 0 admits no PSD matrix";
    throw InfeasibleSetError(msg.str());
  }
}

}  // namespace

HalfStepResult project_half_step(const SymmetricMatrix& anchor, const ConvexSetSpec& target,
                                 const sdp::SolverSettings& settings) {
  target.validate();
  if (anchor.dim() != target.dimension) throw DimensionMismatch("project_half_step: anchor/set dimension mismatch");
  reject_negative_trace(target);
  const Index n = anchor.dim();
  const SymmetricMatrix anchor_psd = clamp_psd(anchor);
  const Matrix root = sqrt_psd(anchor_psd).matrix();

  sdp::SdpProblem p;
  const sdp::Variable x = p.add_symmetric(n, "X");
  const sdp::Variable k = p.add_rectangular(n, n, "K");
  Matrix constant = Matrix::Zero(2 * n, 2 * n);
  constant.bottomRightCorner(n, n).setIdentity();
  sdp::AffineMatrixExpr block(constant);
  block.place(x, 0, 0);
  block.place(k, n, 0);
  p.add_psd_block(std::move(block), "[[X, K^T], [K, I]]");
  add_set_constraints(p, target, x);
  p.set_objective(sdp::trace_of(x) - 2.0 * sdp::trace_product(root, k));

  const sdp::SdpSolution sol = sdp::solve(p, settings);
  raise_for_status(sol, "projection half-step");
  HalfStepResult r{.x = SymmetricMatrix::from_symmetric_part(sol.value(x))};
  r.coupling = sol.value(k);
  r.value = std::max(anchor_psd.matrix().trace() + sol.objective_value, 0.0);
  return r;
}

SymmetricMatrix default_init(const ConvexSetSpec& spec, const sdp::SolverSettings& settings) {
  spec.validate();
  reject_negative_trace(spec);
  const Index n = spec.dimension;
  if (spec.is_trace_slice()) return SymmetricMatrix::identity(n).scaled(*spec.trace_eq / static_cast<double>(n));

  // maximize t subject to X - t I >= 0, t <= 1, X in spec
  sdp::SdpProblem p;
  const sdp::Variable x = p.add_symmetric(n, "X");
  const sdp::Variable t = p.add_scalar("t");
  sdp::AffineMatrixExpr block(n);
  block.place(x, 0, 0);
  block.place_scaled_identity(t, 0, n, -1.0);
  p.add_psd_block(std::move(block), "X - t I");
  p.add_linear_ineq(sdp::value_of(t), 1.0, sdp::Direction::less_equal);
  add_set_constraints(p, spec, x);
  p.set_objective(-1.0 * sdp::value_of(t));
  const sdp::SdpSolution sol = sdp::solve(p, settings);
  raise_for_status(sol, "initial point");
  return clamp_psd(SymmetricMatrix::from_symmetric_part(sol.value(x)));
}

SetDistanceResult set_distance(const ConvexSetSpec& spec_a, const ConvexSetSpec& spec_b,
                               const std::optional<SymmetricMatrix>& init, const SetDistanceOptions& options) {
  spec_a.validate();
  spec_b.validate();
  if (spec_a.dimension != spec_b.dimension) throw DimensionMismatch("set_distance: sets have different dimensions");
  reject_negative_trace(spec_a);
  reject_negative_trace(spec_b);

  SymmetricMatrix a = init ? *init : default_init(spec_a, options.solver);
  if (a.dim() != spec_a.dimension) throw DimensionMismatch("set_distance: init has the wrong dimension");
  if (!membership(spec_a, a, kInitMembershipTol)) throw InputError("set_distance: init is not a member of set A");

  SetDistanceResult r{.witness_a = a, .witness_b = a};
  double previous = 0.0;
  bool have_previous = false;
  auto record = [&](double v) {
    r.objective_history.push_back(v);
    const bool done = have_previous && std::abs(previous - v) <= options.tol * (1.0 + v);
    previous = v;
    have_previous = true;
    return done;
  };

  auto closed_form = [](const SymmetricMatrix& x, const SymmetricMatrix& y) {
    return bw_distance_squared_psd(clamp_psd(x), clamp_psd(y)).distance_squared;
  };
  SymmetricMatrix b = a;
  double current = 0.0;
  double solver_value = 0.0;
  for (int it = 1; it <= options.max_iter; ++it) {
    r.iterations = it;
    const HalfStepResult to_b = project_half_step(a, spec_b, options.solver);
    const double vb = closed_form(a, to_b.x);
    if (it == 1 || vb <= current) {
      b = to_b.x;
      current = vb;
      solver_value = to_b.value;
    }
    bool done = record(current);
    const HalfStepResult to_a = project_half_step(b, spec_a, options.solver);
    const double va = closed_form(to_a.x, b);
    if (va <= current) {
      a = to_a.x;
      current = va;
      solver_value = to_a.value;
    }
    done = record(current) || done;
    if (done) {
      r.converged = true;
      break;
    }
  }
  r.witness_a = a;
  r.witness_b = b;
  r.distance_squared = solver_value;
  r.closed_form_distance_squared = bw_distance_squared_psd(clamp_psd(a), clamp_psd(b)).distance_squared;
  return r;
}

}  // namespace bwkit
