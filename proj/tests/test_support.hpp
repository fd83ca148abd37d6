#pragma once

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdint>

#include "bwkit/matrix_core.hpp"
#include "bwkit/random_spd.hpp"

namespace bwkit::testing {

// Oracles below avoid the library's own spectral code paths.

// Objective values from the SDP solver are accurate to the gap tolerance, but
// its minimizers only to about the square root of it: the objective is flat
// to second order around a strict minimum.
inline constexpr double kSdpArgminTol = 1e-3;

/// Sum of singular values via the eigenvalues of K^T K.
inline double nuclear_norm_oracle(const Matrix& k) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(k.transpose() * k, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) s += std::sqrt(std::max(0.0, es.eigenvalues()(i)));
  return s;
}

/// Tr sqrt(A B) through the (real, nonnegative) eigenvalues of the
/// nonsymmetric product A B.
inline double fidelity_oracle(const Matrix& a, const Matrix& b) {
  Eigen::EigenSolver<Matrix> es(a * b, false);
  double s = 0.0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) s += std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
  return s;
}

inline double bw_squared_oracle(const Matrix& a, const Matrix& b) {
  return a.trace() + b.trace() - 2.0 * fidelity_oracle(a, b);
}

/// sum_i (sqrt(a_i) - sqrt(b_i))^2
inline double diagonal_bw_oracle(const Vector& a, const Vector& b) {
  return (a.cwiseSqrt() - b.cwiseSqrt()).squaredNorm();
}

/// Symmetric square root by Denman-Beavers iteration.
inline Matrix sqrt_oracle(const Matrix& a) {
  Matrix y = a;
  Matrix z = Matrix::Identity(a.rows(), a.cols());
  for (int k = 0; k < 100; ++k) {
    const Matrix yn = 0.5 * (y + z.inverse());
    const Matrix zn = 0.5 * (z + y.inverse());
    const double delta = (yn - y).norm();
    y = yn;
    z = zn;
    if (delta <= 1e-15 * (1.0 + y.norm())) break;
  }
  return 0.5 * (y + y.transpose());
}

inline PdMatrix pd(const Matrix& m) { return PdMatrix::validate(m); }

inline PdMatrix diag_pd(std::initializer_list<double> d) {
  Vector v(static_cast<Index>(d.size()));
  Index i = 0;
  for (double x : d) v(i++) = x;
  return PdMatrix::validate(SymmetricMatrix::diagonal(v));
}

inline Rng seeded(std::uint64_t seed) { return Rng(seed); }

}  // namespace bwkit::testing
