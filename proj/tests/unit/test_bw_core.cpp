#include <gtest/gtest.h>

#include <cmath>

#include "bwkit/bw_core.hpp"
#include "bwkit/errors.hpp"
#include "test_support.hpp"

using namespace bwkit;
using bwkit::testing::diag_pd;
using bwkit::testing::seeded;

TEST(Fidelity, Examples) {
  const auto i5 = PdMatrix::validate(Matrix::Identity(5, 5));
  EXPECT_NEAR(fidelity_term(i5, i5), 5.0, 1e-13);
  EXPECT_NEAR(fidelity_term(diag_pd({1, 4}), diag_pd({4, 1})), 4.0, 1e-13);
  auto rng = seeded(1);
  const auto a = random_pd(5, 30.0, rng);
  EXPECT_NEAR(fidelity_term(a, a), a.matrix().trace(), 1e-10 * a.matrix().trace());
}

TEST(Fidelity, MatchesProductEigenvalueOracle) {
  auto rng = seeded(2);
  for (int t = 0; t < 40; ++t) {
    const Index n = 2 + t % 6;
    const auto a = random_pd(n, 1e3, rng);
    const auto b = random_pd(n, 1e2, rng);
    const double oracle = bwkit::testing::fidelity_oracle(a.matrix(), b.matrix());
    EXPECT_NEAR(fidelity_term(a, b), oracle, 1e-9 * oracle);
    EXPECT_NEAR(fidelity_term(a, b), fidelity_term(b, a), 1e-9 * oracle);
  }
}

TEST(Fidelity, DimensionMismatch) {
  EXPECT_THROW(fidelity_term(diag_pd({1, 2}), diag_pd({1, 2, 3})), DimensionMismatch);
}

TEST(BwDistance, Examples) {
  auto rng = seeded(3);
  const auto a = random_pd(4, 10.0, rng);
  EXPECT_LE(bw_distance_squared(a, a).distance_squared, 1e-9);
  EXPECT_NEAR(bw_distance_squared(diag_pd({1, 4}), diag_pd({4, 1})).distance_squared, 2.0, 1e-13);

  // Commuting pair A, cA with Tr A = 2, c = 1/4.
  const Matrix m = a.matrix() * (2.0 / a.matrix().trace());
  const auto r = bw_distance_squared(PdMatrix::validate(m), PdMatrix::validate(Matrix(0.25 * m)));
  EXPECT_NEAR(r.distance_squared, 0.5, 1e-12);
  EXPECT_NEAR(r.fidelity_term, 0.5 * 2.0, 1e-12);
}

TEST(BwDistance, ResultFieldsConsistent) {
  auto rng = seeded(4);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_pd(3, 20.0, rng);
    const auto b = random_pd(3, 20.0, rng);
    const auto r = bw_distance_squared(a, b);
    EXPECT_DOUBLE_EQ(r.distance, std::sqrt(std::max(r.distance_squared, 0.0)));
    const double expect = a.matrix().trace() + b.matrix().trace() - 2.0 * r.fidelity_term;
    EXPECT_NEAR(r.distance_squared, expect, 1e-12 * (1.0 + std::abs(expect)));
  }
}

TEST(BwDistance, RoundOffNegativesClamp) {
  // Near-identical inputs may give a tiny negative raw value; the reported
  // value never goes below zero.
  auto rng = seeded(5);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_pd(6, 1e4, rng);
    const auto r = bw_distance_squared(a, a);
    EXPECT_GE(r.distance_squared, 0.0);
    EXPECT_GE(r.raw_distance_squared, -1e-9 * 2.0 * a.matrix().trace());
    EXPECT_EQ(r.clamped(), r.raw_distance_squared < 0.0);
  }
}

TEST(BwDistance, MatchesOracle) {
  auto rng = seeded(6);
  for (int t = 0; t < 50; ++t) {
    const Index n = 1 + t % 7;
    const auto a = random_pd(n, 1e2, rng);
    const auto b = random_pd(n, 1e2, rng);
    const double oracle = bwkit::testing::bw_squared_oracle(a.matrix(), b.matrix());
    EXPECT_NEAR(bw_distance_squared(a, b).distance_squared, oracle, 1e-8 * (1.0 + oracle));
  }
}

TEST(BwDistance, PsdVariantHandlesSingularOperand) {
  // rho^2(I_2, 0) = Tr I = 2
  const auto r = bw_distance_squared_psd(SymmetricMatrix::identity(2), SymmetricMatrix::symmetrize(Matrix::Zero(2, 2)));
  EXPECT_NEAR(r.distance_squared, 2.0, 1e-14);
  // Rank-one pair: rho^2(e1 e1^T, diag(1, 1)) = 1 + 2 - 2 = 1
  Vector d(2);
  d << 1, 0;
  const auto s = bw_distance_squared_psd(SymmetricMatrix::diagonal(d), SymmetricMatrix::identity(2));
  EXPECT_NEAR(s.distance_squared, 1.0, 1e-14);
}

TEST(BwDistance, PsdVariantRejectsIndefinite) {
  Vector d(2);
  d << 1, -0.5;
  EXPECT_THROW(bw_distance_squared_psd(SymmetricMatrix::diagonal(d), SymmetricMatrix::identity(2)), NotPsdError);
}

// Property suite; the acceptance binary repeats these on 200 instances.
class MetricProperties : public ::testing::TestWithParam<int> {};

TEST_P(MetricProperties, Axioms) {
  auto rng = seeded(1000 + GetParam());
  const Index n = 2 + GetParam() % 7;
  const auto a = random_pd(n, 1e3, rng);
  const auto b = random_pd(n, 1e3, rng);
  const auto c = random_pd(n, 1e3, rng);

  const double ab = bw_distance_squared(a, b).distance_squared;
  const double ba = bw_distance_squared(b, a).distance_squared;
  EXPECT_LE(std::abs(ab - ba), 1e-9 * (1.0 + ab));
  EXPECT_LE(bw_distance_squared(a, a).distance_squared, 1e-9 * a.matrix().trace());

  const double dab = bw_distance_squared(a, b).distance;
  const double dbc = bw_distance_squared(b, c).distance;
  const double dac = bw_distance_squared(a, c).distance;
  EXPECT_LE(dac, dab + dbc + 1e-7);

  const double lower = std::pow(std::sqrt(a.matrix().trace()) - std::sqrt(b.matrix().trace()), 2);
  EXPECT_GE(ab, lower - 1e-9);

  const Vector da = a.matrix().diagonal();
  const Vector db = b.matrix().diagonal();
  const double diag = bw_distance_squared(PdMatrix::validate(SymmetricMatrix::diagonal(da)),
                                          PdMatrix::validate(SymmetricMatrix::diagonal(db)))
                          .distance_squared;
  EXPECT_NEAR(diag, bwkit::testing::diagonal_bw_oracle(da, db), 1e-9);
}

INSTANTIATE_TEST_SUITE_P(Seeded, MetricProperties, ::testing::Range(0, 40));
