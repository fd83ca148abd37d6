#include "bwkit/random_spd.hpp"

#include "bwkit/errors.hpp"

#include <cmath>

namespace bwkit {

Matrix random_gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

Matrix random_orthogonal(Index n, Rng& rng) {
  const Matrix g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

PdMatrix random_pd(Index n, double cond, Rng& rng) {
  if (n < 1) throw InputError("random_pd: n must be >= 1");
  if (!(cond >= 1.0) || !std::isfinite(cond)) throw InputError("random_pd: cond must be >= 1");
  const Matrix q = random_orthogonal(n, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector lambda(n);
  const double log_cond = std::log(cond);
  for (Index i = 0; i < n; ++i) lambda(i) = std::exp(log_cond * unit(rng));
  if (n >= 2) {
    lambda(0) = 1.0;
    lambda(n - 1) = cond;
  }
  return PdMatrix::validate(SymmetricMatrix::from_symmetric_part(q * lambda.asDiagonal() * q.transpose()));
}

}  // namespace bwkit
