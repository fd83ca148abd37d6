#pragma once

#include "bwkit/matrix_core.hpp"

namespace bwkit {

/// Closed-form Bures-Wasserstein distance between two PSD matrices.
struct BwDistanceResult {
  double distance_squared = 0.0;  ///< clamped at zero
  double distance = 0.0;
  double fidelity_term = 0.0;     ///< Tr(sqrt(sqrt(A) B sqrt(A)))
  /// Value of Tr(A) + Tr(B) - 2 * fidelity before clamping. A negative
  /// value here is round-off on near-identical inputs, not an error.
  double raw_distance_squared = 0.0;
  bool clamped() const { return raw_distance_squared < 0.0; }
};

/// Tr(sqrt(sqrt(A) B sqrt(A))).
double fidelity_term(const PdMatrix& a, const PdMatrix& b);

BwDistanceResult bw_distance_squared(const PdMatrix& a, const PdMatrix& b);

/// Same formulas for PSD operands such as solver outputs, which may be
/// singular or carry round-off negatives down to the clamp threshold.
double fidelity_term_psd(const SymmetricMatrix& a, const SymmetricMatrix& b, ClampPolicy clamp = {});
BwDistanceResult bw_distance_squared_psd(const SymmetricMatrix& a, const SymmetricMatrix& b,
                                         ClampPolicy clamp = {});

}  // namespace bwkit
