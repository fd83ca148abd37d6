#include <gtest/gtest.h>

#include <cmath>

#include "bwkit/bw_core.hpp"
#include "bwkit/bw_programs.hpp"
#include "bwkit/errors.hpp"
#include "table1_data.hpp"
#include "test_support.hpp"

using namespace bwkit;
using bwkit::testing::diag_pd;
using bwkit::testing::seeded;

TEST(DistanceSdp, Structure) {
  const auto d = build_distance_sdp(diag_pd({1, 2}), diag_pd({3, 4}));
  ASSERT_EQ(d.problem.psd_blocks().size(), 1u);
  EXPECT_EQ(d.problem.psd_blocks()[0].expr.dim(), 4);
  EXPECT_EQ(d.coupling.kind, sdp::VariableKind::rectangular_matrix);
  EXPECT_EQ(d.coupling.rows, 2);
  EXPECT_EQ(d.coupling.cols, 2);
  EXPECT_TRUE(d.problem.linear_eqs().empty());
  EXPECT_TRUE(d.problem.linear_ineqs().empty());
  // Constant part of the objective is Tr A + Tr B.
  EXPECT_DOUBLE_EQ(d.problem.objective().constant(), 10.0);
}

TEST(DistanceSdp, DimensionMismatch) {
  EXPECT_THROW(build_distance_sdp(diag_pd({1, 2}), diag_pd({1, 2, 3})), DimensionMismatch);
}

TEST(DistanceSdp, IdentityPair) {
  const auto i3 = PdMatrix::validate(Matrix::Identity(3, 3));
  const auto r = solve_distance(i3, i3);
  EXPECT_NEAR(r.distance_squared, 0.0, 1e-6);
  EXPECT_LE((r.coupling - Matrix::Identity(3, 3)).norm(), 1e-4);
}

TEST(DistanceSdp, SelfDistanceSaturatesCoupling) {
  auto rng = seeded(21);
  const auto a = random_pd(4, 10.0, rng);
  const auto r = solve_distance(a, a);
  EXPECT_NEAR(r.distance_squared, 0.0, 1e-5);
  EXPECT_LE((r.coupling.transpose() * r.coupling - a.matrix()).norm(), 1e-4 * (1.0 + a.matrix().norm()));
}

TEST(DistanceSdp, DiagonalPair) {
  const auto r = solve_distance(diag_pd({1, 4}), diag_pd({4, 1}));
  EXPECT_NEAR(r.distance_squared, 2.0, 1e-5 * 3.0);
}

TEST(DistanceSdp, TableBallPairOnBoundary) {
  const auto r = solve_distance(PdMatrix::validate(table1::ball_center()), PdMatrix::validate(table1::ball_solution()));
  EXPECT_NEAR(r.distance_squared, table1::kBallRadiusSquared, 2e-2);
}

class DistanceOracle : public ::testing::TestWithParam<int> {};

TEST_P(DistanceOracle, MatchesClosedFormAndIsTight) {
  auto rng = seeded(100 + GetParam());
  const Index n = 2 + GetParam() % 5;
  const auto a = random_pd(n, 1e4, rng);
  const auto b = random_pd(n, 1e4, rng);
  const auto r = solve_distance(a, b);
  const double closed = bwkit::testing::bw_squared_oracle(a.matrix(), b.matrix());
  EXPECT_LE(std::abs(r.distance_squared - closed), 1e-5 * (1.0 + closed));
  EXPECT_LE(r.tightness_residual, 1e-4 * (1.0 + b.matrix().norm()));

  // K^T K <= B + 1e-6 I
  const Matrix slack = b.matrix() - r.coupling.transpose() * r.coupling;
  EXPECT_GE(Eigen::SelfAdjointEigenSolver<Matrix>(slack).eigenvalues()(0), -1e-6);

  // Tr(sqrt(A) K) recovers the fidelity term.
  const Matrix sqrt_a = bwkit::testing::sqrt_oracle(a.matrix());
  const double fid = fidelity_term(a, b);
  EXPECT_NEAR((sqrt_a * r.coupling).trace(), fid, 1e-5 * fid);
}

INSTANTIATE_TEST_SUITE_P(Seeded, DistanceOracle, ::testing::Range(0, 15));

TEST(BwBall, RejectsNonPositiveRadius) {
  EXPECT_THROW(BwBall(diag_pd({1, 1}), 0.0), InputError);
  EXPECT_THROW(BwBall(diag_pd({1, 1}), -2.0), InputError);
}

TEST(BallConstraints, OneAndTwoBalls) {
  sdp::SdpProblem p;
  const auto x = p.add_symmetric(3, "X");
  const auto c1 = bw_ball_constraints(p, BwBall(diag_pd({1, 2, 3}), 1.0), x);
  EXPECT_EQ(p.psd_blocks().size(), 1u);
  EXPECT_EQ(p.linear_ineqs().size(), 1u);
  EXPECT_EQ(p.psd_blocks()[c1.psd_block].expr.dim(), 6);

  const auto c2 = bw_ball_constraints(p, BwBall(diag_pd({3, 2, 1}), 1.0), x);
  EXPECT_EQ(p.psd_blocks().size(), 2u);
  EXPECT_EQ(p.linear_ineqs().size(), 2u);
  EXPECT_NE(c1.coupling.id, c2.coupling.id);
  EXPECT_NE(c1.psd_block, c2.psd_block);
}

TEST(BallConstraints, DimensionMismatch) {
  sdp::SdpProblem p;
  const auto x = p.add_symmetric(3, "X");
  EXPECT_THROW(bw_ball_constraints(p, BwBall(diag_pd({1, 2}), 1.0), x), DimensionMismatch);
}

TEST(BallConstraints, CenterIsFeasible) {
  auto rng = seeded(31);
  const auto a = random_pd(3, 5.0, rng);
  sdp::SdpProblem p;
  const auto x = p.add_symmetric(3, "X");
  const auto c = bw_ball_constraints(p, BwBall(a, 0.5), x);

  // X = A, K = sqrt(A) Q for an orthogonal Q: the inequality reads rho^2 = 0 only
  // when Q = I; any Q keeps the PSD block feasible.
  const Matrix sqrt_a = bwkit::testing::sqrt_oracle(a.matrix());
  Vector slots = Vector::Zero(p.num_slots());
  for (Index j = 0; j < 3; ++j) {
    for (Index i = 0; i < 3; ++i) {
      slots(x.slot(i, j)) = a.matrix()(i, j);
      slots(c.coupling.slot(i, j)) = sqrt_a(i, j);
    }
  }
  const auto& ineq = p.linear_ineqs()[c.inequality];
  EXPECT_NEAR(ineq.expr.evaluate(slots), 0.0, 1e-10);
  EXPECT_LE(ineq.expr.evaluate(slots), ineq.rhs);
  const Matrix block = p.psd_blocks()[c.psd_block].expr.evaluate(slots);
  EXPECT_GE(Eigen::SelfAdjointEigenSolver<Matrix>(block).eigenvalues()(0), -1e-10);
}

TEST(ObjectiveSpec, Evaluate) {
  const auto x = SymmetricMatrix::diagonal(Vector::Constant(2, 3.0));
  EXPECT_NEAR(ObjectiveSpec::frobenius_norm().evaluate(x), std::sqrt(18.0), 1e-14);
  EXPECT_DOUBLE_EQ(ObjectiveSpec::trace().evaluate(x), 6.0);
  Matrix c(2, 2);
  c << 1, 1, 1, 2;
  EXPECT_DOUBLE_EQ(ObjectiveSpec::linear(SymmetricMatrix::symmetrize(c)).evaluate(x), 9.0);
}

TEST(BallSolve, ZeroIsInsideIdentityBall) {
  const auto r = solve_ball_constrained(ObjectiveSpec::frobenius_norm(), std::nullopt,
                                        {BwBall(PdMatrix::validate(Matrix::Identity(2, 2)), 2.0)});
  EXPECT_NEAR(r.value, 0.0, 1e-4);
  EXPECT_LE(r.x.matrix().norm(), 1e-4);
  EXPECT_TRUE(r.sound);
}

TEST(BallSolve, TinyBallCollapsesToCenter) {
  auto rng = seeded(41);
  const auto a = random_pd(3, 5.0, rng);
  const auto r = solve_ball_constrained(ObjectiveSpec::trace(), std::nullopt, {BwBall(a, 1e-6)});
  EXPECT_LE((r.x.matrix() - a.matrix()).cwiseAbs().maxCoeff(), 1e-2);
  EXPECT_NEAR(r.value, a.matrix().trace(), 1e-2);
  EXPECT_TRUE(r.sound);
}

TEST(BallSolve, TableInstance) {
  const auto r = solve_ball_constrained(ObjectiveSpec::frobenius_norm(), std::nullopt,
                                        {BwBall(PdMatrix::validate(table1::ball_center()), table1::kBallRadiusSquared)});
  EXPECT_LE((r.x.matrix() - table1::ball_solution()).cwiseAbs().maxCoeff(), 1e-2);
  ASSERT_EQ(r.closed_form_distance_squared.size(), 1u);
  EXPECT_NEAR(r.closed_form_distance_squared[0], 10.0, 2e-2);
  EXPECT_TRUE(r.sound);
}

TEST(BallSolve, MutuallyExclusiveBalls) {
  const auto a = PdMatrix::validate(Matrix::Identity(2, 2));
  const auto b = PdMatrix::validate(Matrix(25.0 * Matrix::Identity(2, 2)));
  // rho^2(I, 25 I) = 2 (1 - 5)^2 = 32, far more than 2 * (sqrt 1 + sqrt 1)^2
  EXPECT_THROW(solve_ball_constrained(ObjectiveSpec::trace(), std::nullopt, {BwBall(a, 1.0), BwBall(b, 1.0)}),
               InfeasibleSetError);
}

TEST(BallSolve, WithBaseSet) {
  // Minimize trace over {Tr X = 3} intersected with a ball around I_2.
  const auto base = ConvexSetSpec::trace_slice(2, 3.0);
  const auto r = solve_ball_constrained(ObjectiveSpec::trace(), base,
                                        {BwBall(PdMatrix::validate(Matrix::Identity(2, 2)), 1.0)});
  EXPECT_NEAR(r.x.matrix().trace(), 3.0, 1e-6);
  EXPECT_TRUE(r.sound);
}

TEST(BallSolve, NeedsSomeConstraint) {
  EXPECT_THROW(solve_ball_constrained(ObjectiveSpec::trace(), std::nullopt, {}), InputError);
}

class BallSoundness : public ::testing::TestWithParam<int> {};

TEST_P(BallSoundness, ClosedFormRevalidationAndActivity) {
  auto rng = seeded(900 + GetParam());
  const Index n = 2 + GetParam() % 4;
  const auto a = random_pd(n, 50.0, rng);
  const double d2 = 0.1 + 0.5 * a.matrix().trace() * (0.2 + 0.1 * (GetParam() % 5));
  const auto r = solve_ball_constrained(ObjectiveSpec::frobenius_norm(), std::nullopt, {BwBall(a, d2)});
  const double closed = bwkit::testing::bw_squared_oracle(a.matrix(), r.x.matrix());
  EXPECT_LE(closed, d2 + 1e-3);
  // 0 is outside the ball whenever Tr A > d2, so the constraint is active.
  if (a.matrix().trace() > d2) EXPECT_NEAR(closed, d2, 1e-3);
}

INSTANTIATE_TEST_SUITE_P(Seeded, BallSoundness, ::testing::Range(0, 10));
