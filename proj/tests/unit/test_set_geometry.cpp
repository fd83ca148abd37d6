#include <gtest/gtest.h>

#include <cmath>
#include <iomanip>

#include "bwkit/bw_core.hpp"
#include "bwkit/convex_set.hpp"
#include "bwkit/errors.hpp"
#include "bwkit/set_geometry.hpp"
#include "table1_data.hpp"
#include "test_support.hpp"

using namespace bwkit;
using bwkit::testing::seeded;

namespace {

const double kTraceBound = std::pow(std::sqrt(2.0) - 1.0, 2);

void expect_monotone(const std::vector<double>& h) {
  for (std::size_t k = 1; k < h.size(); ++k) EXPECT_LE(h[k], h[k - 1] + 1e-9) << std::setprecision(17) << "step " << k << " " << h[k] << " " << h[k - 1];
}

}  // namespace

TEST(Membership, Examples) {
  const auto spec = ConvexSetSpec::trace_slice(5, 1.0);
  EXPECT_TRUE(membership(spec, SymmetricMatrix::identity(5).scaled(0.2), 1e-9));
  EXPECT_FALSE(membership(spec, SymmetricMatrix::identity(5), 1e-9));
  Vector d(5);
  d << 0.5, 0.3, 0.2, 0.1, -0.1;
  EXPECT_FALSE(membership(spec, SymmetricMatrix::diagonal(d), 1e-9));
  EXPECT_FALSE(membership(ConvexSetSpec{}, SymmetricMatrix::diagonal(Vector::Constant(1, -0.1)), 1e-9));
}

TEST(Membership, AffineAndBallConstraints) {
  ConvexSetSpec spec;
  spec.dimension = 2;
  spec.linear_ineqs.push_back({SymmetricMatrix::identity(2), 4.0});  // Tr X <= 4
  spec.frobenius_ball = FrobeniusBall{SymmetricMatrix::identity(2), 1.0};
  EXPECT_TRUE(membership(spec, SymmetricMatrix::identity(2).scaled(1.5), 1e-9));
  EXPECT_FALSE(membership(spec, SymmetricMatrix::identity(2).scaled(2.5), 1e-9));
  EXPECT_FALSE(membership(spec, SymmetricMatrix::identity(2).scaled(0.1), 1e-9));
}

TEST(ConvexSetSpec, ValidateRejectsMalformed) {
  ConvexSetSpec spec = ConvexSetSpec::trace_slice(3, 1.0);
  spec.linear_eqs.push_back({SymmetricMatrix::identity(2), 1.0});
  EXPECT_THROW(spec.validate(), DimensionMismatch);
  EXPECT_THROW(ConvexSetSpec::ball(SymmetricMatrix::identity(2), -1.0).validate(), InputError);
}

TEST(HalfStep, AnchorInsideTarget) {
  const auto r = project_half_step(SymmetricMatrix::identity(5), ConvexSetSpec::trace_slice(5, 5.0));
  EXPECT_LE((r.x.matrix() - Matrix::Identity(5, 5)).norm(), 1e-4);
  EXPECT_NEAR(r.value, 0.0, 1e-6);
}

TEST(HalfStep, ProportionalProjection) {
  auto rng = seeded(51);
  Matrix a = random_pd(4, 10.0, rng).matrix();
  a *= 2.0 / a.trace();
  const auto r = project_half_step(SymmetricMatrix::symmetrize(a), ConvexSetSpec::trace_slice(4, 1.0));
  EXPECT_LE((r.x.matrix() - 0.5 * a).cwiseAbs().maxCoeff(), 1e-4);
  EXPECT_NEAR(r.value, 2.0 * std::pow(1.0 - 1.0 / std::sqrt(2.0), 2), 1e-6);
  EXPECT_NEAR(r.value, bw_distance_squared_psd(SymmetricMatrix::symmetrize(a), r.x).distance_squared, 1e-4);
}

TEST(HalfStep, NearRankOneAnchor) {
  const double eps = 1e-8;
  Vector d(2);
  d << 1.0 + eps, 1e-4 + eps;
  const auto r = project_half_step(SymmetricMatrix::diagonal(d), ConvexSetSpec::trace_slice(2, 1.0));
  // Projection onto a trace slice scales the anchor.
  EXPECT_NEAR(r.x(0, 0), d(0) / d.sum(), 1e-4);
  EXPECT_NEAR(r.x(1, 1), d(1) / d.sum(), 1e-4);
  EXPECT_NEAR(r.x(0, 1), 0.0, 1e-6);
}

TEST(HalfStep, InfeasibleTarget) {
  EXPECT_THROW(project_half_step(SymmetricMatrix::identity(2), ConvexSetSpec::trace_slice(2, -1.0)),
               InfeasibleSetError);
}

TEST(HalfStep, LinearEqualityTarget) {
  // {X >= 0 : X_00 = 1} contains the anchor I_2.
  ConvexSetSpec spec;
  spec.dimension = 2;
  Matrix c = Matrix::Zero(2, 2);
  c(0, 0) = 1.0;
  spec.linear_eqs.push_back({SymmetricMatrix::symmetrize(c), 1.0});
  const auto r = project_half_step(SymmetricMatrix::identity(2), spec);
  EXPECT_LE((r.x.matrix() - Matrix::Identity(2, 2)).norm(), bwkit::testing::kSdpArgminTol);
  EXPECT_NEAR(r.value, 0.0, 1e-6);
}

TEST(SetDistance, IdenticalSets) {
  const auto s = ConvexSetSpec::trace_slice(3, 1.0);
  const auto r = set_distance(s, s);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.distance_squared, 0.0, 1e-6);
  EXPECT_LE((r.witness_a.matrix() - r.witness_b.matrix()).norm(), 1e-4);
}

TEST(SetDistance, TraceSlicesDefaultInit) {
  const auto r = set_distance(ConvexSetSpec::trace_slice(5, 1.0), ConvexSetSpec::trace_slice(5, 2.0));
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.distance_squared, kTraceBound, 1e-3);
  EXPECT_LE((r.witness_b.matrix() - 2.0 * r.witness_a.matrix()).cwiseAbs().maxCoeff(), 1e-3);
  EXPECT_LE(std::abs(r.distance_squared - r.closed_form_distance_squared), 1e-4);
  expect_monotone(r.objective_history);
}

TEST(SetDistance, TraceSlicesFromTableWitness) {
  // Start from the published trace-1 witness, renormalized to trace exactly 1.
  Matrix a = table1::set_witness_trace1();
  a /= a.trace();
  const auto r = set_distance(ConvexSetSpec::trace_slice(5, 1.0), ConvexSetSpec::trace_slice(5, 2.0),
                              SymmetricMatrix::symmetrize(a));
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.distance_squared, kTraceBound, 1e-3);
  EXPECT_LE((r.witness_b.matrix() - 2.0 * r.witness_a.matrix()).cwiseAbs().maxCoeff(), 1e-3);
  // Already at a minimizer, so the witness is unchanged.
  EXPECT_LE((r.witness_a.matrix() - a).cwiseAbs().maxCoeff(), 1e-3);
  expect_monotone(r.objective_history);
}

TEST(SetDistance, RandomInitOnTraceSlice) {
  auto rng = seeded(61);
  for (int t = 0; t < 3; ++t) {
    Matrix a = random_pd(4, 100.0, rng).matrix();
    a /= a.trace();
    const auto r = set_distance(ConvexSetSpec::trace_slice(4, 1.0), ConvexSetSpec::trace_slice(4, 2.0),
                                SymmetricMatrix::symmetrize(a));
    EXPECT_NEAR(r.distance_squared, kTraceBound, 1e-3);
    expect_monotone(r.objective_history);
  }
}

TEST(SetDistance, DisjointFrobeniusBalls) {
  const auto sa = ConvexSetSpec::ball(SymmetricMatrix::identity(2), 1.0);
  const auto sb = ConvexSetSpec::ball(SymmetricMatrix::identity(2).scaled(5.0), 1.0);
  const auto r = set_distance(sa, sb);
  EXPECT_TRUE(r.converged);
  EXPECT_GT(r.distance_squared, 0.1);
  EXPECT_TRUE(membership(sa, r.witness_a, 1e-5));
  EXPECT_TRUE(membership(sb, r.witness_b, 1e-5));
  // Both witnesses sit on their ball boundaries.
  EXPECT_NEAR((r.witness_a.matrix() - Matrix::Identity(2, 2)).norm(), 1.0, 1e-4);
  EXPECT_NEAR((r.witness_b.matrix() - 5.0 * Matrix::Identity(2, 2)).norm(), 1.0, 1e-4);
  EXPECT_NEAR(r.distance_squared, bwkit::testing::bw_squared_oracle(r.witness_a.matrix(), r.witness_b.matrix()), 1e-4);
  expect_monotone(r.objective_history);
}

TEST(SetDistance, SymmetricUnderSwap) {
  const auto sa = ConvexSetSpec::trace_slice(3, 1.0);
  const auto sb = ConvexSetSpec::ball(SymmetricMatrix::identity(3).scaled(2.0), 0.5);
  const auto ab = set_distance(sa, sb);
  const auto ba = set_distance(sb, sa);
  EXPECT_NEAR(ab.distance_squared, ba.distance_squared, 5e-4);
}

TEST(SetDistance, FixedPointConsistency) {
  const auto sa = ConvexSetSpec::trace_slice(3, 1.0);
  const auto sb = ConvexSetSpec::ball(SymmetricMatrix::identity(3).scaled(2.0), 0.5);
  SetDistanceOptions opt;
  const auto r = set_distance(sa, sb, std::nullopt, opt);
  const auto again = project_half_step(r.witness_a, sb);
  EXPECT_LE(std::abs(again.value - r.distance_squared), opt.tol * (1.0 + r.distance_squared) + 1e-7);
}

TEST(SetDistance, InitOutsideSet) {
  EXPECT_THROW(set_distance(ConvexSetSpec::trace_slice(2, 1.0), ConvexSetSpec::trace_slice(2, 2.0),
                            SymmetricMatrix::identity(2)),
               InputError);
}

TEST(SetDistance, EmptySet) {
  EXPECT_THROW(set_distance(ConvexSetSpec::trace_slice(2, 1.0), ConvexSetSpec::trace_slice(2, -1.0)),
               InfeasibleSetError);
}

TEST(SetDistance, IterationCapFlagsResult) {
  const auto sa = ConvexSetSpec::ball(SymmetricMatrix::identity(2), 1.0);
  const auto sb = ConvexSetSpec::ball(SymmetricMatrix::identity(2).scaled(5.0), 1.0);
  SetDistanceOptions opt;
  opt.max_iter = 1;
  opt.tol = 1e-15;
  const auto r = set_distance(sa, sb, SymmetricMatrix::identity(2), opt);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 1);
}
