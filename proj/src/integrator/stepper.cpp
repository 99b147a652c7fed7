#include "cvflow/integrator/stepper.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "cvflow/linear/semigroup.hpp"
#include "cvflow/nonlinear/sources.hpp"

namespace cvflow::integrator {

double cfl_dt(const spectral::Grid& grid, const model::ModelParams& params, double safety) {
  if (!(safety > 0.0)) throw std::invalid_argument("cfl_dt: safety must be positive");
  return safety / (std::sqrt(1.0 + params.a) * grid.max_axis_wavenumber());
}

FlowState step(const FlowState& state, const model::ModelParams& params, double dt, bool dealias,
               bool sources) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  const FlowState u = state.to_frequency();
  FlowState full = linear::apply_linear_semigroup(u, params, dt);
  if (!sources) return full;

  const FlowState g0 = nonlinear::nonlinear_term(u, params, dealias);
  FlowState mid = linear::apply_linear_semigroup(u, params, 0.5 * dt);
  mid += (0.5 * dt) * g0;
  model::check_guards(mid);

  const FlowState g_mid = nonlinear::nonlinear_term(mid, params, dealias);
  full += dt * linear::apply_linear_semigroup(g_mid, params, 0.5 * dt);
  full.time = u.time + dt;
  model::check_guards(full);
  return full;
}

RunResult run(const FlowState& initial, const model::ModelParams& params, const StepperConfig& config,
              const RunHooks& hooks) {
  const spectral::Grid& grid = initial.grid();
  if (!(config.t_end >= 0.0)) throw std::invalid_argument("run: t_end must be nonnegative");
  if (config.output_every < 1) throw std::invalid_argument("run: output_every must be >= 1");
  const double requested = config.dt > 0.0 ? config.dt : cfl_dt(grid, params, config.cfl_safety);
  if (config.dt < 0.0) throw std::invalid_argument("run: dt must be positive");
  const double limit = cfl_dt(grid, params, 1.0);
  if (requested > limit) {
    throw std::invalid_argument("run: dt " + std::to_string(requested) + " exceeds the stability limit " +
                                std::to_string(limit));
  }

  const long steps = config.t_end > 0.0 ? static_cast<long>(std::ceil(config.t_end / requested - 1e-9))
                                        : 0L;
  const double dt = steps > 0 ? config.t_end / static_cast<double>(steps) : requested;

  RunResult result;
  result.dt = dt;
  result.final_state = initial.to_frequency();
  const double t0 = result.final_state.time;

  std::ofstream csv;
  if (hooks.csv_path) {
    csv.open(*hooks.csv_path, std::ios::binary | std::ios::trunc);
    if (!csv) throw std::runtime_error("run: cannot open " + hooks.csv_path->string());
    csv << diagnostics::csv_header() << '\n' << std::flush;
  }

  diagnostics::Sampler sampler(params, config.d2, config.residuals);
  auto emit = [&](const FlowState& s) {
    const diagnostics::Sample sample = sampler.observe(s);
    result.record.append(sample);
    if (csv.is_open()) csv << diagnostics::csv_row(sample) << '\n' << std::flush;
    if (hooks.on_sample) hooks.on_sample(s, sample);
  };

  if (config.residuals) {
    const auto r = nonlinear::constraint_residuals(result.final_state);
    if (r.max() > 1e-8) {
      spdlog::warn("initial data violates the constraints: r1={:.3e} r2={:.3e} r3={:.3e}", r.r1, r.r2,
                   r.r3);
    }
  }

  try {
    model::check_guards(result.final_state);
    emit(result.final_state);
    for (long k = 1; k <= steps; ++k) {
      FlowState next = step(result.final_state, params, dt, config.dealias, config.sources);
      // Avoid accumulating round-off in the clock.
      next.time = t0 + static_cast<double>(k) * dt;
      result.final_state = std::move(next);
      result.steps = k;
      if (k % config.output_every == 0 || k == steps) emit(result.final_state);
    }
  } catch (...) {
    if (csv.is_open()) csv.flush();
    if (hooks.on_abort) hooks.on_abort(result.final_state);
    throw;
  }
  return result;
}

}  // namespace cvflow::integrator
