#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cvflow::cli {

struct PhysicsOptions {
  double mu = 1.0;
  double lambda = 0.0;
  double alpha = 1.0;
  double gamma = 2.0;
  double pressure_scale = 1.0;
};

struct GridOptions {
  int n = 32;
  double box = 6.283185307179586;
};

/// --ic accepts a mode-list file, a generator "name[:scale]" or "snap:<prefix>"
/// for the three CVF1 files <prefix>_n.cvf, <prefix>_v.cvf and <prefix>_E.cvf.
struct IcOptions {
  std::string ic = "mix:1e-3";
  std::optional<double> delta;
};

struct MakeIcOptions {
  std::filesystem::path out = "run";
  PhysicsOptions physics;
  GridOptions grid;
  IcOptions ic;
  std::string prefix = "ic";
};

struct SimulateOptions {
  std::filesystem::path out = "run";
  PhysicsOptions physics;
  GridOptions grid;
  IcOptions ic;
  double dt = 0.0;
  double cfl = 0.5;
  double t_end = 1.0;
  int output_every = 1;
  bool no_dealias = false;
  bool linear = false;
  bool duhamel = false;
  bool skip_residuals = false;
  double d2 = 4.0;
};

struct LinearDecayOptions {
  std::filesystem::path out = "run";
  PhysicsOptions physics;
  std::string profile = "gaussian";
  std::string system = "compressible";
  std::string t_grid = "log:1:1e4:64";
  double fit_from = 0.0;
};

struct LowerBoundOptions {
  std::filesystem::path out = "run";
  PhysicsOptions physics;
  std::string profile = "gaussian";
  std::string system = "compressible";
  std::string t_grid = "log:10:1e4:64";
  double c0 = 1.0;
  std::optional<double> eta;
};

struct SemigroupCheckOptions {
  std::filesystem::path out = "run";
  PhysicsOptions physics;
  double tolerance = 1e-8;
};

struct FitOptions {
  std::filesystem::path csv;
  std::string column = "H2";
  double t0 = 0.0;
  double t1 = 1e300;
  std::optional<double> target;
  std::optional<std::filesystem::path> out;
};

/// "log:a:b:n" (n points geometrically spaced) or "lin:a:b:n".
std::vector<double> parse_time_grid(const std::string& spec);

int make_ic(const MakeIcOptions& o);
int simulate(const SimulateOptions& o);
int linear_decay(const LinearDecayOptions& o);
int lower_bound(const LowerBoundOptions& o);
int semigroup_check(const SemigroupCheckOptions& o);
int fit(const FitOptions& o);

}  // namespace cvflow::cli
