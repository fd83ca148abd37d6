#include "suites.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

#include "bwkit/barycenter.hpp"
#include "bwkit/bw_core.hpp"
#include "bwkit/bw_programs.hpp"
#include "bwkit/errors.hpp"
#include "bwkit/random_spd.hpp"
#include "bwkit/set_geometry.hpp"
#include "io.hpp"
#include "table1_data.hpp"

namespace bwkit::app {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double nuclear_norm(const Matrix& k) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(k.transpose() * k, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

struct RelaxationRun {
  double value;
  Matrix u;
};

// max Tr(K U) s.t. [[G, U^T], [U, I]] >= 0
RelaxationRun solve_relaxation(const Matrix& k, const Matrix& g, const sdp::SolverSettings& settings) {
  const Index n = k.rows();
  sdp::SdpProblem p;
  const auto u = p.add_rectangular(n, n, "U");
  p.set_objective(-1.0 * sdp::trace_product(k, u));
  Matrix c = Matrix::Identity(2 * n, 2 * n);
  c.topLeftCorner(n, n) = g;
  sdp::AffineMatrixExpr e(c);
  e.place(u, n, 0);
  p.add_psd_block(e, "[[G, U^T], [U, I]]");
  const auto sol = sdp::solve(p, settings);
  if (!sol.optimal()) throw SolverFailure(describe_failure("relaxation SDP", sol));
  return {-sol.objective_value, sol.value(u)};
}

}  // namespace

void run_metric_suite(const SuiteOptions& opt, Report& rep) {
  const int count = opt.count > 0 ? opt.count : 200;
  Rng rng(opt.seed);
  double symmetry = 0.0, identity = 0.0, triangle = -kInf, trace_bound = -kInf, diagonal = 0.0;
  for (int t = 0; t < count; ++t) {
    const Index n = 2 + t % 7;
    const auto a = random_pd(n, 1e3, rng);
    const auto b = random_pd(n, 1e3, rng);
    const auto c = random_pd(n, 1e3, rng);
    const auto ab = bw_distance_squared(a, b);
    const auto ba = bw_distance_squared(b, a);
    symmetry = std::max(symmetry, std::abs(ab.distance_squared - ba.distance_squared) / (1.0 + ab.distance_squared));
    identity = std::max(identity, bw_distance_squared(a, a).distance_squared / a.matrix().trace());
    triangle = std::max(triangle, bw_distance_squared(a, c).distance - ab.distance - bw_distance_squared(b, c).distance);
    const double lower = std::pow(std::sqrt(a.matrix().trace()) - std::sqrt(b.matrix().trace()), 2);
    trace_bound = std::max(trace_bound, lower - ab.distance_squared);
    const Vector da = a.matrix().diagonal();
    const Vector db = b.matrix().diagonal();
    const double diag = bw_distance_squared(PdMatrix::validate(SymmetricMatrix::diagonal(da)),
                                            PdMatrix::validate(SymmetricMatrix::diagonal(db)))
                            .distance_squared;
    diagonal = std::max(diagonal, std::abs(diag - (da.cwiseSqrt() - db.cwiseSqrt()).squaredNorm()));
  }
  rep.result["instances"] = count;
  rep.result["seed"] = opt.seed;
  rep.check("symmetry (relative)", symmetry, 1e-9);
  rep.check("identity (relative to trace)", identity, 1e-9);
  rep.check("triangle inequality excess", triangle, 1e-7);
  rep.check("trace lower bound excess", trace_bound, 1e-9);
  rep.check("diagonal reduction", diagonal, 1e-9);
}

void run_lemma_suite(const SuiteOptions& opt, Report& rep) {
  const int count = opt.count > 0 ? opt.count : 20;
  Rng rng(opt.seed);
  double value_err = 0.0, orth = 0.0, gen_value_err = 0.0, gen_tight = 0.0;
  for (int t = 0; t < count; ++t) {
    const Index n = 2 + t % 5;
    const Matrix k = random_gaussian(n, n, rng);
    const auto r = solve_relaxation(k, Matrix::Identity(n, n), opt.solver);
    value_err = std::max(value_err, std::abs(r.value - nuclear_norm(k)));
    orth = std::max(orth, (r.u.transpose() * r.u - Matrix::Identity(n, n)).norm());

    const auto g = random_pd(n, 20.0, rng);
    const auto rg = solve_relaxation(k, g.matrix(), opt.solver);
    const Matrix sqrt_g = sqrt_psd(g).matrix();
    gen_value_err = std::max(gen_value_err, std::abs(rg.value - nuclear_norm(sqrt_g * k)));
    gen_tight = std::max(gen_tight, (rg.u.transpose() * rg.u - g.matrix()).norm() / (1.0 + g.matrix().norm()));
  }
  rep.result["instances"] = count;
  rep.result["seed"] = opt.seed;
  rep.check("value equals nuclear norm of K", value_err, 1e-6);
  rep.check("||U^T U - I||_F", orth, 1e-5);
  rep.check("generalized value equals nuclear norm of sqrt(G) K", gen_value_err, 1e-6);
  rep.check("generalized ||U^T U - G||_F / (1 + ||G||_F)", gen_tight, 1e-4);
}

void run_table1_suite(const SuiteOptions& opt, Report& rep) {
  BarycenterProblem p;
  p.weights = table1::barycenter_weights();
  for (const Matrix& m : table1::barycenter_matrices()) p.matrices.push_back(PdMatrix::validate(m));
  const auto cmp = compare_routes(p, opt.solver);
  rep.result["barycenter"] = {{"sdp", matrix_to_json(cmp.sdp.x.matrix(), "X_opt")},
                              {"fixed_point", matrix_to_json(cmp.fixed_point.x.matrix(), "X_fp")},
                              {"fixed_point_iterations", cmp.fixed_point.iterations}};
  rep.check("barycenter SDP vs published X_opt (max entry)", max_abs(cmp.sdp.x.matrix() - table1::barycenter_sdp_solution()), 1e-3);
  rep.check("barycenter fixed point vs published X_fp (max entry)",
            max_abs(cmp.fixed_point.x.matrix() - table1::barycenter_fixed_point_solution()), 1e-3);
  rep.check("barycenter routes agree (max entry)", cmp.max_entry_deviation, 2e-3);

  SetDistanceOptions sd_opt;
  sd_opt.solver = opt.solver;
  const auto sd = set_distance(ConvexSetSpec::trace_slice(5, 1.0), ConvexSetSpec::trace_slice(5, 2.0), std::nullopt, sd_opt);
  rep.result["set_distance"] = {{"distance_squared", sd.distance_squared},
                                {"trace_1_witness", matrix_to_json(sd.witness_a.matrix())},
                                {"trace_2_witness", matrix_to_json(sd.witness_b.matrix())},
                                {"iterations", sd.iterations},
                                {"converged", sd.converged}};
  rep.check("set distance vs (sqrt 2 - 1)^2", std::abs(sd.distance_squared - std::pow(std::sqrt(2.0) - 1.0, 2)), 1e-3);
  rep.check("set witnesses proportional with factor 2 (max entry)",
            max_abs(sd.witness_b.matrix() - 2.0 * sd.witness_a.matrix()), 1e-3);
  rep.check_above("set distance converged", sd.converged ? 1.0 : 0.0, 0.5);

  const auto ball = solve_ball_constrained(ObjectiveSpec::frobenius_norm(), std::nullopt,
                                           {BwBall(PdMatrix::validate(table1::ball_center()), table1::kBallRadiusSquared)},
                                           opt.solver);
  rep.result["ball"] = {{"x", matrix_to_json(ball.x.matrix())},
                        {"value", ball.value},
                        {"closed_form_distance_squared", ball.closed_form_distance_squared.front()}};
  rep.check("ball solution vs published X (max entry)", max_abs(ball.x.matrix() - table1::ball_solution()), 1e-2);
  rep.check("ball constraint active: |rho^2 - 10|", std::abs(ball.closed_form_distance_squared.front() - 10.0), 2e-2);
}

}  // namespace bwkit::app
