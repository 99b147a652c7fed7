#include "commands.hpp"

#include <spdlog/fmt/fmt.h>
#include <spdlog/spdlog.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cvflow/diagnostics/diagnostics.hpp"
#include "cvflow/initial/initial_data.hpp"
#include "cvflow/integrator/stepper.hpp"
#include "cvflow/linear/ode_reference.hpp"
#include "cvflow/linear/radial_quadrature.hpp"
#include "cvflow/nonlinear/sources.hpp"
#include "cvflow/spectral/snapshot.hpp"
#include "manifest.hpp"

namespace cvflow::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

model::ModelParams to_params(const PhysicsOptions& p) {
  return model::make_params(p.mu, p.lambda, p.alpha, p.gamma, p.pressure_scale);
}

json physics_json(const PhysicsOptions& p) {
  return {{"mu", p.mu}, {"lambda", p.lambda}, {"alpha", p.alpha}, {"gamma", p.gamma},
          {"pressure_scale", p.pressure_scale}};
}

json grid_json(const GridOptions& g) { return {{"n", g.n}, {"box", g.box}}; }

std::string read_text(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot read " + path.string());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

/// Initial data after --ic resolution: either a mode list or a stored state.
struct ResolvedIc {
  std::optional<initial::DisplacementSpec> spec;
  std::optional<fs::path> snapshot_prefix;
  /// Text identifying the data, hashed into the manifest.
  std::string identity;
};

ResolvedIc resolve_ic(const IcOptions& o) {
  ResolvedIc r;
  if (o.ic.rfind("snap:", 0) == 0) {
    if (o.delta) throw std::invalid_argument("--delta cannot rescale a snapshot initial condition");
    r.snapshot_prefix = o.ic.substr(5);
    std::string blob;
    for (const char* c : {"_n.cvf", "_v.cvf", "_E.cvf"}) {
      std::ifstream is(r.snapshot_prefix->string() + c, std::ios::binary);
      if (!is) throw std::invalid_argument("missing snapshot " + r.snapshot_prefix->string() + c);
      blob.append(std::istreambuf_iterator<char>(is), {});
    }
    r.identity = "snapshot " + git_blob_hash(blob);
    return r;
  }
  if (fs::is_regular_file(o.ic)) {
    r.spec = initial::parse_mode_list(read_text(o.ic));
  } else {
    const auto colon = o.ic.find(':');
    const std::string name = o.ic.substr(0, colon);
    double scale = 1e-3;
    if (colon != std::string::npos) {
      try {
        scale = std::stod(o.ic.substr(colon + 1));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad scale in --ic " + o.ic);
      }
    }
    r.spec = initial::builtin_spec(name, scale);
  }
  if (o.delta) r.spec->scale = *o.delta;
  r.identity = initial::format_mode_list(*r.spec);
  return r;
}

model::FlowState load_state(const ResolvedIc& ic, const spectral::GridPtr& grid, const model::ModelParams& params) {
  if (ic.spec) return initial::piola_state(*ic.spec, grid, params);
  const std::string p = ic.snapshot_prefix->string();
  auto n = spectral::read_snapshot(p + "_n.cvf", grid);
  auto v = spectral::read_snapshot(p + "_v.cvf", grid);
  auto E = spectral::read_snapshot(p + "_E.cvf", grid);
  if (n.grid != grid || v.grid != grid || E.grid != grid) {
    throw std::invalid_argument("snapshot grid does not match --n/--box");
  }
  model::FlowState s{n.scalar(), v.vector(), E.tensor(), 0.0};
  return s.to_frequency();
}

void write_state(const fs::path& dir, const std::string& prefix, const model::FlowState& s, RunManifest* m) {
  const auto phys = s.to_physical();
  const fs::path files[3] = {dir / (prefix + "_n.cvf"), dir / (prefix + "_v.cvf"), dir / (prefix + "_E.cvf")};
  spectral::write_snapshot(files[0], phys.n);
  spectral::write_snapshot(files[1], phys.v);
  spectral::write_snapshot(files[2], phys.E);
  if (m != nullptr)
    for (const auto& f : files) m->add_output(f);
}

json residuals_json(const nonlinear::ConstraintReport& r) { return {{"r1", r.r1}, {"r2", r.r2}, {"r3", r.r3}}; }

initial::ProfileShape shape_of(const std::string& s) { return initial::parse_shape(s); }

linear::BlockSystem system_of(const std::string& s, const model::ModelParams& params) {
  if (s == "compressible") return linear::BlockSystem::compressible(params);
  if (s == "shear") return linear::BlockSystem::shear(params);
  throw std::invalid_argument("unknown --system '" + s + "' (compressible or shear)");
}

std::string num(double x) { return fmt::format("{:.17g}", x); }

/// Slope of log y over all (t, y) pairs so far with t >= t0, NaN below eight.
double slope_so_far(const std::vector<double>& t, const std::vector<double>& y, double t0) {
  std::size_t count = 0;
  for (double x : t) count += x >= t0 ? 1 : 0;
  if (count < 8) return kNaN;
  return diagnostics::decay_fit(t, y, t0, t.back()).slope;
}

json fit_json(const diagnostics::DecayFit& f) {
  return {{"t0", f.t0},          {"t1", f.t1},       {"samples", f.samples},   {"slope", f.slope},
          {"intercept", f.intercept}, {"r_squared", f.r_squared}, {"slope_target", f.slope_target},
          {"band_min", f.band_min}, {"band_max", f.band_max}};
}

void print_fit(const std::string& label, const diagnostics::DecayFit& f) {
  std::cout << fmt::format("{:<14} slope {:+.5f}  R^2 {:.6f}  band [{:.6g}, {:.6g}]  window [{:g}, {:g}] ({} samples)\n",
                           label, f.slope, f.r_squared, f.band_min, f.band_max, f.t0, f.t1, f.samples);
}

}  // namespace

std::vector<double> parse_time_grid(const std::string& spec) {
  std::istringstream is(spec);
  std::string kind, a, b, n;
  if (!std::getline(is, kind, ':') || !std::getline(is, a, ':') || !std::getline(is, b, ':') || !std::getline(is, n)) {
    throw std::invalid_argument("--t-grid must look like log:a:b:n or lin:a:b:n, got '" + spec + "'");
  }
  double lo = 0.0, hi = 0.0;
  int count = 0;
  try {
    lo = std::stod(a);
    hi = std::stod(b);
    count = std::stoi(n);
  } catch (const std::exception&) {
    throw std::invalid_argument("--t-grid has a non-numeric field: '" + spec + "'");
  }
  if (count < 2 || !(hi > lo) || lo < 0.0) throw std::invalid_argument("--t-grid needs 0 <= a < b and n >= 2");
  std::vector<double> t(count);
  if (kind == "log") {
    if (!(lo > 0.0)) throw std::invalid_argument("--t-grid log needs a > 0");
    for (int i = 0; i < count; ++i) t[i] = lo * std::pow(hi / lo, double(i) / (count - 1));
  } else if (kind == "lin") {
    for (int i = 0; i < count; ++i) t[i] = lo + (hi - lo) * double(i) / (count - 1);
  } else {
    throw std::invalid_argument("--t-grid kind must be log or lin, got '" + kind + "'");
  }
  t.back() = hi;
  return t;
}

int make_ic(const MakeIcOptions& o) {
  const auto params = to_params(o.physics);
  const auto ic = resolve_ic(o.ic);
  if (!ic.spec) throw std::invalid_argument("make-ic needs a mode list or generator, not a snapshot");
  const auto grid = spectral::Grid::create(o.grid.n, o.grid.box);

  RunManifest m;
  m.command = "make-ic";
  m.inputs = {{"physics", physics_json(o.physics)}, {"grid", grid_json(o.grid)}, {"ic", ic.identity},
              {"prefix", o.prefix}};
  m.write(o.out);

  const auto data = initial::piola_ic(*ic.spec, grid);
  const auto raw = model::phys_to_pert(data.state, params);
  const auto state = model::make_perturbation_state(raw.n, raw.v, raw.E, raw.time);
  const auto res = nonlinear::constraint_residuals(data.state);

  write_state(o.out, o.prefix, state, &m);
  const fs::path modes = o.out / (o.prefix + "_modes.txt");
  std::ofstream(modes) << ic.identity;
  m.add_output(modes);
  m.write(o.out);

  write_summary(o.out, {{"max_grad_phi", data.max_grad_phi},
                        {"h2_norm", data.h2_norm},
                        {"symmetric_lowfreq", data.symmetric_lowfreq},
                        {"residuals", residuals_json(res)}});
  std::cout << fmt::format("initial data on N = {}: max|grad phi| = {:.6g}, |U0|_H2 = {:.6g}\n", o.grid.n,
                           data.max_grad_phi, data.h2_norm);
  std::cout << fmt::format("constraint residuals r1 {:.3e}  r2 {:.3e}  r3 {:.3e}\n", res.r1, res.r2, res.r3);
  std::cout << "wrote " << (o.out / (o.prefix + "_{n,v,E}.cvf")).string() << '\n';
  return 0;
}

int simulate(const SimulateOptions& o) {
  const auto params = to_params(o.physics);
  const auto ic = resolve_ic(o.ic);
  const auto grid = spectral::Grid::create(o.grid.n, o.grid.box);

  integrator::StepperConfig c;
  c.dt = o.dt;
  c.cfl_safety = o.cfl;
  c.t_end = o.t_end;
  c.output_every = o.output_every;
  c.dealias = !o.no_dealias;
  c.sources = !o.linear;
  c.d2 = o.d2;
  c.residuals = !o.skip_residuals;

  RunManifest m;
  m.command = "simulate";
  m.inputs = {{"physics", physics_json(o.physics)},
              {"grid", grid_json(o.grid)},
              {"ic", ic.identity},
              {"dt", o.dt},
              {"cfl_safety", o.cfl},
              {"t_end", o.t_end},
              {"output_every", o.output_every},
              {"dealias", c.dealias},
              {"sources", c.sources},
              {"d2", o.d2},
              {"residuals", c.residuals},
              {"duhamel", o.duhamel}};
  const fs::path csv = o.out / "series.csv";
  m.add_output(csv);
  m.write(o.out);

  const auto initial = load_state(ic, grid, params);
  std::optional<diagnostics::DuhamelTracker> tracker;
  if (o.duhamel) tracker.emplace(initial, params);

  integrator::RunHooks hooks;
  hooks.csv_path = csv;
  hooks.on_sample = [&](const model::FlowState& s, const diagnostics::Sample& smp) {
    if (tracker) tracker->observe(s);
    spdlog::debug("t = {:.6g}  H2 = {:.6e}  M = {:.6e}", smp.t, smp.H2, smp.M);
  };
  hooks.on_abort = [&](const model::FlowState& last) {
    write_state(o.out, "abort", last, nullptr);
    spdlog::error("run aborted after t = {:.6g}; last state written to {}", last.time,
                  (o.out / "abort_{n,v,E}.cvf").string());
  };

  const auto result = integrator::run(initial, params, c, hooks);
  write_state(o.out, "final", result.final_state, &m);

  const auto& rec = result.record;
  const auto& first = rec.samples.front();
  double max_r1 = 0, max_r2 = 0, max_r3 = 0, max_h2 = 0, worst_interp = 0;
  for (const auto& s : rec.samples) {
    max_r1 = std::max(max_r1, s.r1);
    max_r2 = std::max(max_r2, s.r2);
    max_r3 = std::max(max_r3, s.r3);
    max_h2 = std::max(max_h2, s.H2);
    const double bound = std::pow(s.Lp2, 0.25) * std::pow(s.Lp6, 0.75);
    if (bound > 0.0) worst_interp = std::max(worst_interp, (s.Lp4 - bound) / bound);
  }
  diagnostics::LedgerOptions lo;
  lo.a = params.a;
  lo.linear = o.linear;
  const auto verdicts = diagnostics::energy_ledger(rec, lo);

  json summary = {{"steps", result.steps},
                  {"dt", result.dt},
                  {"samples", rec.size()},
                  {"initial_residuals", {{"r1", first.r1}, {"r2", first.r2}, {"r3", first.r3}}},
                  {"max_residuals", {{"r1", max_r1}, {"r2", max_r2}, {"r3", max_r3}}},
                  {"h2_sq_ratio", first.H2 > 0 ? (max_h2 * max_h2) / (first.H2 * first.H2) : 0.0},
                  {"interpolation_violation", worst_interp},
                  {"ledger", json::array()}};
  for (const auto& v : verdicts) {
    summary["ledger"].push_back({{"name", v.name}, {"pass", v.pass}, {"measured", v.measured}, {"bound", v.bound}});
  }
  if (tracker) {
    const fs::path dpath = o.out / "duhamel.csv";
    std::ofstream ds(dpath);
    ds << "t,deviation_H2\n";
    for (std::size_t i = 0; i < tracker->times().size(); ++i) {
      ds << num(tracker->times()[i]) << ',' << num(tracker->deviations()[i]) << '\n';
    }
    m.add_output(dpath);
    summary["duhamel_max_deviation"] = tracker->max_deviation();
  }
  m.write(o.out);
  write_summary(o.out, summary);

  std::cout << fmt::format("{} steps of dt = {:.6g} to t = {:g}, {} samples\n", result.steps, result.dt,
                           result.final_state.time, rec.size());
  std::cout << fmt::format("max residuals r1 {:.3e}  r2 {:.3e}  r3 {:.3e}\n", max_r1, max_r2, max_r3);
  std::cout << fmt::format("max |U|_H2^2 / |U0|_H2^2 = {:.6f}\n", summary["h2_sq_ratio"].get<double>());
  std::cout << fmt::format("worst relative L4 interpolation excess {:.3e}\n", worst_interp);
  for (const auto& v : verdicts) {
    std::cout << fmt::format("  {:<34} {}  measured {:.6g}  bound {:.6g}\n", v.name, v.pass ? "ok  " : "FAIL",
                             v.measured, v.bound);
  }
  if (tracker) std::cout << fmt::format("max H2 deviation from the linear flow {:.6e}\n", tracker->max_deviation());
  return 0;
}

int linear_decay(const LinearDecayOptions& o) {
  const auto params = to_params(o.physics);
  const auto sys = system_of(o.system, params);
  const auto shape = shape_of(o.profile);
  const auto times = parse_time_grid(o.t_grid);
  const double t0 = o.fit_from > 0.0 ? o.fit_from : times.front();

  RunManifest m;
  m.command = "linear-decay";
  m.inputs = {{"physics", physics_json(o.physics)}, {"profile", o.profile}, {"system", o.system},
              {"t_grid", o.t_grid}, {"fit_from", t0}};
  const fs::path csv = o.out / "linear_decay.csv";
  m.add_output(csv);
  m.write(o.out);

  linear::RadialProfile profile;
  profile.first = [shape](double r) { return initial::envelope(shape, r); };
  profile.second = profile.first;
  profile.support_radius = initial::lower_bound_profile(1.0, shape).support_radius;
  profile.name = o.profile;

  std::ofstream os(csv);
  os << "t,norm_L2,norm_grad_L2,fitted_slope_so_far\n";
  std::vector<double> ts, l2, grad;
  for (double t : times) {
    ts.push_back(t);
    l2.push_back(linear::whole_space_norm(profile, sys, t, 0).value);
    grad.push_back(linear::whole_space_norm(profile, sys, t, 1).value);
    os << num(t) << ',' << num(l2.back()) << ',' << num(grad.back()) << ',' << num(slope_so_far(ts, l2, t0)) << '\n';
    os.flush();
  }
  const auto f0 = diagnostics::decay_fit(ts, l2, t0, ts.back(), -0.75);
  const auto f1 = diagnostics::decay_fit(ts, grad, t0, ts.back(), -1.25);
  write_summary(o.out, {{"system", sys.name()}, {"L2", fit_json(f0)}, {"grad_L2", fit_json(f1)}});
  std::cout << fmt::format("{} block, {} profile, nu = {:g}, b = {:g}\n", sys.name(), o.profile, sys.nu, sys.b);
  print_fit("|U|_L2", f0);
  print_fit("|grad U|_L2", f1);
  return 0;
}

int lower_bound(const LowerBoundOptions& o) {
  const auto params = to_params(o.physics);
  const auto sys = system_of(o.system, params);
  const auto shape = shape_of(o.profile);
  const auto times = parse_time_grid(o.t_grid);

  RunManifest m;
  m.command = "lower-bound";
  m.inputs = {{"physics", physics_json(o.physics)}, {"profile", o.profile}, {"system", o.system},
              {"t_grid", o.t_grid}, {"c0", o.c0}};
  if (o.eta) m.inputs["eta"] = *o.eta;
  const fs::path csv = o.out / "lower_bound.csv";
  m.add_output(csv);
  m.write(o.out);

  std::ofstream os(csv);
  std::vector<double> ts;
  json summary = {{"system", sys.name()}};
  if (o.eta) {
    const auto profile = initial::eta_profile(*o.eta, shape);
    const double target = -(*o.eta / 2.0 + 0.75);
    os << "t,norm_L2,band\n";
    std::vector<double> y;
    for (double t : times) {
      ts.push_back(t);
      y.push_back(linear::whole_space_norm(profile, sys, t, 0).value);
      os << num(t) << ',' << num(y.back()) << ',' << num(std::pow(1 + t, -target) * y.back()) << '\n';
    }
    const auto f = diagnostics::decay_fit(ts, y, ts.front(), ts.back(), target);
    summary["eta"] = *o.eta;
    summary["fit"] = fit_json(f);
    summary["slope_bound"] = target + 0.05;
    std::cout << fmt::format("{} block, eta = {:g}: target slope {:.4f}\n", sys.name(), *o.eta, target);
    print_fit("|U|_L2", f);
  } else {
    const auto profile = initial::lower_bound_profile(o.c0, shape);
    os << "t,norm_first,norm_second,band_first,band_second\n";
    std::vector<double> a, b;
    for (double t : times) {
      ts.push_back(t);
      a.push_back(linear::whole_space_norm(profile, sys, t, 0, linear::Component::first).value);
      b.push_back(linear::whole_space_norm(profile, sys, t, 0, linear::Component::second).value);
      const double w = std::pow(1 + t, 0.75);
      os << num(t) << ',' << num(a.back()) << ',' << num(b.back()) << ',' << num(w * a.back()) << ','
         << num(w * b.back()) << '\n';
    }
    const auto fa = diagnostics::decay_fit(ts, a, ts.front(), ts.back(), -0.75);
    const auto fb = diagnostics::decay_fit(ts, b, ts.front(), ts.back(), -0.75);
    summary["first"] = fit_json(fa);
    summary["second"] = fit_json(fb);
    std::cout << fmt::format("{} block, c0 = {:g}, second component zero at t = 0\n", sys.name(), o.c0);
    print_fit("first", fa);
    print_fit("second", fb);
  }
  write_summary(o.out, summary);
  return 0;
}

int semigroup_check(const SemigroupCheckOptions& o) {
  const auto params = to_params(o.physics);
  RunManifest m;
  m.command = "semigroup-check";
  m.inputs = {{"physics", physics_json(o.physics)}, {"tolerance", o.tolerance}};
  const fs::path csv = o.out / "semigroup.csv";
  m.add_output(csv);
  m.write(o.out);

  std::ofstream os(csv);
  os << "system,r,t,deviation\n";
  json summary = json::object();
  double worst = 0.0;
  std::size_t count = 0;
  std::cout << fmt::format("{:<13} {:>8} {:>10} {:>10} {:>12}\n", "system", "samples", "r_conf", "near", "max dev");
  for (const auto& sys : {linear::BlockSystem::compressible(params), linear::BlockSystem::shear(params)}) {
    const auto samples = linear::compare_with_oracle(sys);
    double w = 0.0;
    int near = 0;
    for (const auto& s : samples) {
      os << sys.name() << ',' << num(s.r) << ',' << num(s.t) << ',' << num(s.deviation) << '\n';
      w = std::max(w, s.deviation);
      if (std::abs(s.r - sys.confluent_radius()) <= 1e-4 * (1 + 1e-9)) ++near;
    }
    worst = std::max(worst, w);
    count += samples.size();
    summary[sys.name()] = {{"samples", samples.size()}, {"max_deviation", w}, {"near_confluent", near}};
    std::cout << fmt::format("{:<13} {:>8} {:>10.6f} {:>10} {:>12.3e}\n", sys.name(), samples.size(),
                             sys.confluent_radius(), near, w);
  }
  summary["max_deviation"] = worst;
  summary["within_tolerance"] = worst <= o.tolerance;
  write_summary(o.out, summary);
  std::cout << fmt::format("{} samples, max |closed form - RK4| = {:.3e} ({} {:.0e})\n", count, worst,
                           worst <= o.tolerance ? "within" : "ABOVE", o.tolerance);
  return 0;
}

int fit(const FitOptions& o) {
  const auto table = diagnostics::read_csv(o.csv);
  const auto& t = table.column("t");
  const auto& y = table.column(o.column);
  std::vector<double> tt, yy;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (std::isfinite(y[i])) {
      tt.push_back(t[i]);
      yy.push_back(y[i]);
    }
  }
  const double t1 = std::min(o.t1, tt.empty() ? o.t1 : tt.back());
  const auto f = diagnostics::decay_fit(tt, yy, o.t0, t1, o.target);
  if (o.out) {
    RunManifest m;
    m.command = "fit";
    m.inputs = {{"csv", fs::absolute(o.csv).string()}, {"column", o.column}, {"t0", o.t0}, {"t1", t1}};
    if (o.target) m.inputs["target"] = *o.target;
    m.write(*o.out);
    write_summary(*o.out, {{"column", o.column}, {"fit", fit_json(f)}});
  }
  std::cout << "column: " << o.column << '\n'
            << "window: " << f.t0 << ' ' << f.t1 << '\n'
            << "samples: " << f.samples << '\n'
            << "slope: " << num(f.slope) << '\n'
            << "intercept: " << num(f.intercept) << '\n'
            << "r_squared: " << num(f.r_squared) << '\n'
            << "slope_target: " << num(f.slope_target) << '\n'
            << "band_min: " << num(f.band_min) << '\n'
            << "band_max: " << num(f.band_max) << '\n';
  return 0;
}

}  // namespace cvflow::cli
