#include "bwkit/matrix_core.hpp"

#include "bwkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bwkit {

SymmetricMatrix SymmetricMatrix::symmetrize(const Matrix& raw, double asym_tol) {
  if (raw.rows() != raw.cols()) {
    std::ostringstream msg;
    msg << "matrix is not square (" << raw.rows() << "x" << raw.cols() << ")";
    throw DimensionMismatch(msg.str());
  }
  if (raw.rows() < 1) throw DimensionMismatch("matrix must have dimension >= 1");
  if (!raw.allFinite()) throw InputError("matrix has non-finite entries");
  const double scale = raw.cwiseAbs().maxCoeff();
  const double asym = (raw - raw.transpose()).cwiseAbs().maxCoeff();
  if (asym > asym_tol * (1.0 + scale)) {
    std::ostringstream msg;
    msg << "matrix asymmetry " << asym << " exceeds tolerance " << asym_tol * (1.0 + scale);
    throw AsymmetryError(msg.str());
  }
  return from_symmetric_part(raw);
}

SymmetricMatrix SymmetricMatrix::from_symmetric_part(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) throw DimensionMismatch("matrix must be square and non-empty");
  Matrix sym = 0.5 * (m + m.transpose());
  return SymmetricMatrix(std::move(sym));
}

SymmetricMatrix SymmetricMatrix::identity(Index n) { return SymmetricMatrix(Matrix::Identity(n, n)); }

SymmetricMatrix SymmetricMatrix::diagonal(const Vector& d) { return SymmetricMatrix(Matrix(d.asDiagonal())); }

SymmetricMatrix SymmetricMatrix::scaled(double c) const { return SymmetricMatrix(c * m_); }

SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  require_same_dim(a, b, "operator+");
  return SymmetricMatrix(a.m_ + b.m_);
}

SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  require_same_dim(a, b, "operator-");
  return SymmetricMatrix(a.m_ - b.m_);
}

PdMatrix PdMatrix::validate(const SymmetricMatrix& s) {
  const EigenDecomposition e = eig_sym(s);
  const double lmax = e.eigenvalues(0);
  const double lmin = e.eigenvalues(e.eigenvalues.size() - 1);
  if (!(lmin > kPdTolerance * std::max(1.0, lmax))) {
    std::ostringstream msg;
    msg << "matrix is not positive definite (smallest eigenvalue " << lmin << ")";
    throw NotPdError(msg.str());
  }
  return PdMatrix(s, lmin);
}

EigenDecomposition eig_sym(const SymmetricMatrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(s.matrix());
  if (solver.info() != Eigen::Success) throw ConvergenceError("symmetric eigensolver did not converge");
  // Eigen sorts ascending.
  EigenDecomposition e;
  e.eigenvalues = solver.eigenvalues().reverse();
  e.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return e;
}

SymmetricMatrix spectral_map(const EigenDecomposition& e, const std::function<double(double)>& f) {
  Vector fl = e.eigenvalues.unaryExpr(f);
  return SymmetricMatrix::from_symmetric_part(e.eigenvectors * fl.asDiagonal() * e.eigenvectors.transpose());
}

SymmetricMatrix sqrt_psd(const SymmetricMatrix& s, ClampPolicy clamp) {
  const EigenDecomposition e = eig_sym(s);
  const double scale = e.eigenvalues.cwiseAbs().maxCoeff();
  const double lmin = e.eigenvalues(e.eigenvalues.size() - 1);
  if (lmin < -clamp.neg_eig_tolerance * scale) {
    std::ostringstream msg;
    msg << "matrix is not positive semidefinite (smallest eigenvalue " << lmin << ")";
    throw NotPsdError(msg.str());
  }
  return spectral_map(e, [](double l) { return std::sqrt(std::max(l, 0.0)); });
}

SymmetricMatrix inv_sqrt_pd(const PdMatrix& p) {
  const EigenDecomposition e = eig_sym(p.base());
  const double lmax = e.eigenvalues(0);
  const double lmin = e.eigenvalues(e.eigenvalues.size() - 1);
  if (!(lmin > kPdTolerance * std::max(1.0, lmax))) throw NotPdError("inv_sqrt_pd: matrix is not positive definite");
  return spectral_map(e, [](double l) { return 1.0 / std::sqrt(l); });
}

SymmetricMatrix clamp_psd(const SymmetricMatrix& s) {
  return spectral_map(eig_sym(s), [](double l) { return std::max(l, 0.0); });
}

double trace(const SymmetricMatrix& s) { return s.matrix().trace(); }

double frobenius_norm(const SymmetricMatrix& s) { return s.matrix().norm(); }

double frobenius_norm(const Matrix& m) { return m.norm(); }

double min_eigenvalue(const SymmetricMatrix& s) {
  const Vector ev = eig_sym(s).eigenvalues;
  return ev(ev.size() - 1);
}

double max_eigenvalue(const SymmetricMatrix& s) { return eig_sym(s).eigenvalues(0); }

bool is_pd(const SymmetricMatrix& s, double tol) {
  const Vector ev = eig_sym(s).eigenvalues;
  return ev(ev.size() - 1) > tol * std::max(1.0, ev(0));
}

bool is_psd(const SymmetricMatrix& s, double tol) {
  const Vector ev = eig_sym(s).eigenvalues;
  return ev(ev.size() - 1) >= -tol * std::max(1.0, ev(0));
}

void require_same_dim(const SymmetricMatrix& a, const SymmetricMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw DimensionMismatch(msg.str());
  }
}

}  // namespace bwkit
