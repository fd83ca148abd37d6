#pragma once

#include "bwkit/matrix_core.hpp"

#include <array>
#include <vector>

namespace bwkit::table1 {

/// Published reference values for the three worked examples, 5x5, printed to
/// four decimals.

/// Set distance between {Tr X = 1} and {Tr X = 2}. The published table labels
/// the trace-2 witness "A" and the trace-1 witness "B"; these are named by trace.
Matrix set_witness_trace1();
Matrix set_witness_trace2();

/// Barycenter instance.
std::vector<double> barycenter_weights();
std::vector<Matrix> barycenter_matrices();
Matrix barycenter_sdp_solution();
Matrix barycenter_fixed_point_solution();

/// min ||X||_F subject to rho^2(A, X) <= 10.
Matrix ball_center();
inline constexpr double kBallRadiusSquared = 10.0;
Matrix ball_solution();

}  // namespace bwkit::table1
