#include "bwkit/bw_core.hpp"

#include <algorithm>
#include <cmath>

namespace bwkit {

namespace {

BwDistanceResult assemble(const SymmetricMatrix& a, const SymmetricMatrix& b, double fidelity) {
  BwDistanceResult r;
  r.fidelity_term = fidelity;
  r.raw_distance_squared = trace(a) + trace(b) - 2.0 * fidelity;
  r.distance_squared = std::max(r.raw_distance_squared, 0.0);
  r.distance = std::sqrt(r.distance_squared);
  return r;
}

}  // namespace

double fidelity_term_psd(const SymmetricMatrix& a, const SymmetricMatrix& b, ClampPolicy clamp) {
  require_same_dim(a, b, "fidelity_term");
  const SymmetricMatrix root_a = sqrt_psd(a, clamp);
  const SymmetricMatrix root_b = sqrt_psd(b, clamp);
  // sqrt(A) B sqrt(A) = (sqrt(A) sqrt(B)) (sqrt(A) sqrt(B))^T stays PSD under round-off.
  const Matrix m = root_a.matrix() * root_b.matrix();
  const SymmetricMatrix inner = SymmetricMatrix::from_symmetric_part(m * m.transpose());
  return trace(sqrt_psd(inner, clamp));
}

double fidelity_term(const PdMatrix& a, const PdMatrix& b) { return fidelity_term_psd(a.base(), b.base()); }

BwDistanceResult bw_distance_squared(const PdMatrix& a, const PdMatrix& b) {
  return assemble(a.base(), b.base(), fidelity_term(a, b));
}

BwDistanceResult bw_distance_squared_psd(const SymmetricMatrix& a, const SymmetricMatrix& b, ClampPolicy clamp) {
  return assemble(a, b, fidelity_term_psd(a, b, clamp));
}

}  // namespace bwkit
