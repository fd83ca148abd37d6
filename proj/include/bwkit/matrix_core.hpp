#pragma once

#include <Eigen/Dense>

#include <functional>

namespace bwkit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Eigenvalues at or below pd_tolerance * max(1, lambda_max) fail PD checks.
inline constexpr double kPdTolerance = 1e-10;
/// Eigenvalues in [-tol * scale, 0) are clamped to zero by sqrt_psd.
inline constexpr double kNegEigTolerance = 1e-10;
/// Relative asymmetry accepted when reading raw matrices from text.
inline constexpr double kAsymTolerance = 1e-8;

/// Dense real symmetric matrix. Exact symmetry holds after construction.
class SymmetricMatrix {
 public:
  /// Averages `raw` with its transpose. Throws AsymmetryError when
  /// max|raw - raw^T| exceeds asym_tol * (1 + max|raw|).
  static SymmetricMatrix symmetrize(const Matrix& raw, double asym_tol = kAsymTolerance);

  /// Takes the symmetric part without an asymmetry check. Meant for values
  /// produced by arithmetic that is symmetric up to round-off.
  static SymmetricMatrix from_symmetric_part(const Matrix& m);

  static SymmetricMatrix identity(Index n);
  static SymmetricMatrix diagonal(const Vector& d);

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  double operator()(Index i, Index j) const { return m_(i, j); }

  SymmetricMatrix scaled(double c) const;

  friend SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b);
  friend SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b);

 private:
  explicit SymmetricMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

/// Symmetric matrix whose eigenvalues all exceed pd_tolerance.
class PdMatrix {
 public:
  /// Throws NotPdError when the smallest eigenvalue is <= pd_tolerance * max(1, lambda_max).
  static PdMatrix validate(const SymmetricMatrix& s);
  static PdMatrix validate(const Matrix& raw) { return validate(SymmetricMatrix::symmetrize(raw)); }

  const SymmetricMatrix& base() const { return base_; }
  const Matrix& matrix() const { return base_.matrix(); }
  Index dim() const { return base_.dim(); }
  double min_eigenvalue() const { return min_eigenvalue_; }

  operator const SymmetricMatrix&() const { return base_; }  // NOLINT(google-explicit-constructor)

 private:
  PdMatrix(SymmetricMatrix base, double min_eig) : base_(std::move(base)), min_eigenvalue_(min_eig) {}
  SymmetricMatrix base_;
  double min_eigenvalue_;
};

/// Spectral factorization S = Q diag(eigenvalues) Q^T, eigenvalues descending.
struct EigenDecomposition {
  Vector eigenvalues;
  Matrix eigenvectors;
};

EigenDecomposition eig_sym(const SymmetricMatrix& s);

struct ClampPolicy {
  double neg_eig_tolerance = kNegEigTolerance;
};

/// Applies f to the spectrum: Q f(Lambda) Q^T.
SymmetricMatrix spectral_map(const EigenDecomposition& e, const std::function<double(double)>& f);

/// Principal square root of a PSD matrix; small negative eigenvalues are clamped to zero.
SymmetricMatrix sqrt_psd(const SymmetricMatrix& s, ClampPolicy clamp = {});

/// Inverse of the principal square root.
SymmetricMatrix inv_sqrt_pd(const PdMatrix& p);

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues set to zero).
SymmetricMatrix clamp_psd(const SymmetricMatrix& s);

double trace(const SymmetricMatrix& s);
double frobenius_norm(const SymmetricMatrix& s);
double frobenius_norm(const Matrix& m);
double min_eigenvalue(const SymmetricMatrix& s);
double max_eigenvalue(const SymmetricMatrix& s);

/// True iff lambda_min > tol * max(1, lambda_max).
bool is_pd(const SymmetricMatrix& s, double tol = kPdTolerance);

/// True iff lambda_min >= -tol * max(1, lambda_max).
bool is_psd(const SymmetricMatrix& s, double tol = kNegEigTolerance);

void require_same_dim(const SymmetricMatrix& a, const SymmetricMatrix& b, const char* what);

}  // namespace bwkit
