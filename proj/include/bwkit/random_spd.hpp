#pragma once

#include "bwkit/matrix_core.hpp"

#include <cstdint>
#include <random>

namespace bwkit {

using Rng = std::mt19937_64;

/// Haar-distributed orthogonal matrix from the QR factorization of a
/// Gaussian matrix (column signs fixed by diag(R) > 0).
Matrix random_orthogonal(Index n, Rng& rng);

/// Q diag(lambda) Q^T with lambda log-uniform in [1, cond] (the extremes 1 and
/// cond are always included when n >= 2, so the condition number is exact).
PdMatrix random_pd(Index n, double cond, Rng& rng);

/// Square matrix with i.i.d. standard normal entries.
Matrix random_gaussian(Index rows, Index cols, Rng& rng);

}  // namespace bwkit
