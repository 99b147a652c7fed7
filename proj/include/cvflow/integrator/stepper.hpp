#pragma once

#include <filesystem>
#include <functional>
#include <optional>

#include "cvflow/diagnostics/diagnostics.hpp"
#include "cvflow/model/params.hpp"
#include "cvflow/model/state.hpp"

namespace cvflow::integrator {

using model::FlowState;

struct StepperConfig {
  /// Zero selects cfl_dt(grid, params, cfl_safety).
  double dt = 0.0;
  double t_end = 0.0;
  double cfl_safety = 0.5;
  int output_every = 1;
  bool dealias = true;
  /// With sources off every step is the exact linear propagator.
  bool sources = true;
  double d2 = 4.0;
  /// Skip the constraint residuals in each sample (they dominate the sampling cost).
  bool residuals = true;
};

/// safety / (sqrt(1 + a) |xi|_max), |xi|_max = (2 pi / L)(N/2 - 1).
double cfl_dt(const spectral::Grid& grid, const model::ModelParams& params, double safety = 0.5);

/// One exponential midpoint step:
///   U_mid = K(dt/2) U + dt/2 G(U),
///   U_new = K(dt) U + dt K(dt/2) G(U_mid).
/// Throws model::GuardBreach when U_mid or U_new leaves the guarded regime.
FlowState step(const FlowState& state, const model::ModelParams& params, double dt,
               bool dealias = true, bool sources = true);

struct RunHooks {
  /// Streams the time series; the file is flushed after every row.
  std::optional<std::filesystem::path> csv_path;
  std::function<void(const FlowState&, const diagnostics::Sample&)> on_sample;
  /// Receives the last accepted state before the error is rethrown.
  std::function<void(const FlowState&)> on_abort;
};

struct RunResult {
  diagnostics::TimeSeriesRecord record;
  FlowState final_state;
  long steps = 0;
  double dt = 0.0;
};

/// Advances `initial` to t_end with a uniform step no larger than the
/// requested one, sampling diagnostics every output_every steps and at the
/// end. Throws std::invalid_argument for dt <= 0, t_end < 0 or a step above
/// the stability limit cfl_dt(grid, params, 1).
RunResult run(const FlowState& initial, const model::ModelParams& params, const StepperConfig& config,
              const RunHooks& hooks = {});

}  // namespace cvflow::integrator
