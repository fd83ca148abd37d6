#pragma once

#include <cstdint>
#include <string>

#include "bwkit/sdp_solver.hpp"
#include "report.hpp"

namespace bwkit::app {

struct SuiteOptions {
  std::uint64_t seed = 20240601;
  int count = 0;  ///< 0 selects the suite's default
  sdp::SolverSettings solver;
};

/// Closed-form metric properties on seeded random triples.
void run_metric_suite(const SuiteOptions& opt, Report& rep);
/// Tightness of the orthogonality relaxation on seeded random K.
void run_lemma_suite(const SuiteOptions& opt, Report& rep);
/// The three published 5x5 reproductions.
void run_table1_suite(const SuiteOptions& opt, Report& rep);

}  // namespace bwkit::app
