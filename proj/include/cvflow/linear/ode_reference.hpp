#pragma once

#include <vector>

#include "cvflow/linear/propagator.hpp"

namespace cvflow::linear {

/// Reference solution of dX/dt = A(r) X, X(0) = I, by classical RK4 with a
/// uniform step no larger than `max_step` (further reduced so that
/// step * ||A|| <= 0.01). Independent of the spectral formula; used as an
/// oracle by semigroup-check.
Propagator2x2 rk4_propagator(const BlockSystem& sys, double r, double t, double max_step = 1e-4);

struct OracleSample {
  double r = 0.0;
  double t = 0.0;
  /// max entrywise |propagator - rk4_propagator|
  double deviation = 0.0;
};

/// Fixed 100-point (r, t) grid for one block: 14 radii spread over [0, 8],
/// six radii within 1e-4 of the confluent radius, five times in [0.01, 7].
std::vector<OracleSample> oracle_grid(const BlockSystem& sys);

/// Fills in the deviation of every sample of oracle_grid(sys).
std::vector<OracleSample> compare_with_oracle(const BlockSystem& sys);

}  // namespace cvflow::linear
