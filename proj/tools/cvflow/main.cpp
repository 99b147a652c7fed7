#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <iostream>

#include "commands.hpp"
#include "cvflow/model/state.hpp"

namespace {

using namespace cvflow::cli;

constexpr int kUsage = 2;
constexpr int kNumerical = 3;

void add_physics(CLI::App* app, PhysicsOptions& p) {
  app->add_option("--mu", p.mu, "shear viscosity")->capture_default_str();
  app->add_option("--lambda", p.lambda, "second viscosity")->capture_default_str();
  app->add_option("--alpha", p.alpha, "elastic coupling")->capture_default_str();
  app->add_option("--gamma", p.gamma, "adiabatic exponent of P = s rho^gamma / gamma")->capture_default_str();
  app->add_option("--pressure-scale", p.pressure_scale, "pressure scale s")->capture_default_str();
}

void add_grid(CLI::App* app, GridOptions& g) {
  app->add_option("--n", g.n, "grid points per axis")->capture_default_str();
  app->add_option("--box", g.box, "box side length")->capture_default_str();
}

void add_ic(CLI::App* app, IcOptions& ic) {
  app->add_option("--ic", ic.ic, "mode-list file, generator name[:scale] (zero, shear, mix) or snap:<prefix>")
      ->capture_default_str();
  app->add_option("--delta", ic.delta, "overrides the amplitude scale of the initial data");
}

void add_out(CLI::App* app, std::filesystem::path& out) {
  app->add_option("--out", out, "run directory")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cvflow: compressible viscoelastic flow experiments"};
  app.require_subcommand(1);
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")->capture_default_str();

  MakeIcOptions mk;
  auto* c_mk = app.add_subcommand("make-ic", "build Piola-consistent initial data and write CVF1 snapshots");
  add_out(c_mk, mk.out);
  add_physics(c_mk, mk.physics);
  add_grid(c_mk, mk.grid);
  add_ic(c_mk, mk.ic);
  c_mk->add_option("--prefix", mk.prefix, "snapshot file prefix")->capture_default_str();

  SimulateOptions sim;
  auto* c_sim = app.add_subcommand("simulate", "advance the nonlinear system on the periodic box");
  add_out(c_sim, sim.out);
  add_physics(c_sim, sim.physics);
  add_grid(c_sim, sim.grid);
  add_ic(c_sim, sim.ic);
  c_sim->add_option("--dt", sim.dt, "time step, 0 selects the CFL step")->capture_default_str();
  c_sim->add_option("--cfl", sim.cfl, "CFL safety factor")->capture_default_str();
  c_sim->add_option("--t-end", sim.t_end, "final time")->capture_default_str();
  c_sim->add_option("--output-every", sim.output_every, "steps between samples")->capture_default_str();
  c_sim->add_option("--d2", sim.d2, "weight D2 of the Lyapunov functional")->capture_default_str();
  c_sim->add_flag("--no-dealias", sim.no_dealias, "keep aliased products");
  c_sim->add_flag("--linear", sim.linear, "drop the nonlinear sources");
  c_sim->add_flag("--duhamel", sim.duhamel, "track the H2 distance to the linear flow of the initial data");
  c_sim->add_flag("--skip-residuals", sim.skip_residuals, "do not evaluate constraint residuals per sample");

  LinearDecayOptions ld;
  auto* c_ld = app.add_subcommand("linear-decay", "whole-space linear decay of a radial profile");
  add_out(c_ld, ld.out);
  add_physics(c_ld, ld.physics);
  c_ld->add_option("--profile", ld.profile, "gaussian or exponential")->capture_default_str();
  c_ld->add_option("--system", ld.system, "compressible or shear")->capture_default_str();
  c_ld->add_option("--t-grid", ld.t_grid, "log:a:b:n or lin:a:b:n")->capture_default_str();
  c_ld->add_option("--fit-from", ld.fit_from, "start of the fit window, 0 for the first time")->capture_default_str();

  LowerBoundOptions lb;
  auto* c_lb = app.add_subcommand("lower-bound", "linear decay bands from a profile bounded below at the origin");
  add_out(c_lb, lb.out);
  add_physics(c_lb, lb.physics);
  c_lb->add_option("--profile", lb.profile, "gaussian or exponential")->capture_default_str();
  c_lb->add_option("--system", lb.system, "compressible or shear")->capture_default_str();
  c_lb->add_option("--t-grid", lb.t_grid, "log:a:b:n or lin:a:b:n")->capture_default_str();
  c_lb->add_option("--c0", lb.c0, "value of the first component at the origin")->capture_default_str();
  c_lb->add_option("--eta", lb.eta, "use (0, r^eta psi) data and report the improved rate");

  SemigroupCheckOptions sg;
  auto* c_sg = app.add_subcommand("semigroup-check", "closed-form propagator against an RK4 oracle");
  add_out(c_sg, sg.out);
  add_physics(c_sg, sg.physics);
  c_sg->add_option("--tolerance", sg.tolerance, "reported threshold")->capture_default_str();

  FitOptions ft;
  auto* c_ft = app.add_subcommand("fit", "power-law fit of one CSV column against 1 + t");
  c_ft->add_option("--csv", ft.csv, "input CSV with a t column")->required();
  c_ft->add_option("--column", ft.column, "column to fit")->capture_default_str();
  c_ft->add_option("--t0", ft.t0, "window start")->capture_default_str();
  c_ft->add_option("--t1", ft.t1, "window end");
  c_ft->add_option("--target", ft.target, "slope used for the band constants");
  c_ft->add_option("--out", ft.out, "directory for manifest and summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const auto level = spdlog::level::from_str(log_level);
  if (level == spdlog::level::off && log_level != "off") {
    std::cerr << "unknown --log-level " << log_level << '\n';
    return kUsage;
  }
  spdlog::set_level(level);

  try {
    if (c_mk->parsed()) return make_ic(mk);
    if (c_sim->parsed()) return simulate(sim);
    if (c_ld->parsed()) return linear_decay(ld);
    if (c_lb->parsed()) return lower_bound(lb);
    if (c_sg->parsed()) return semigroup_check(sg);
    if (c_ft->parsed()) return fit(ft);
  } catch (const cvflow::model::GuardBreach& e) {
    spdlog::error("{}", e.what());
    return kNumerical;
  } catch (const std::domain_error& e) {
    spdlog::error("{}", e.what());
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return kUsage;
}
