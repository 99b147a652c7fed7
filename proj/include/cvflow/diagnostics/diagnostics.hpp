#pragma once

#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cvflow/model/params.hpp"
#include "cvflow/model/state.hpp"

namespace cvflow::diagnostics {

using model::FlowState;

struct LyapunovParts {
  double value = 0.0;         ///< D2 |grad U|^2_{H^1} + cross1 + cross2
  double grad_h1_sq = 0.0;    ///< |grad (n, v, E)|^2_{H^1} = sum_{j=1,2} |grad^j U|^2
  double cross1 = 0.0;        ///< <div v, Lap n>
  double cross2 = 0.0;        ///< <W, Lap(E^T - E)>, W^{ij} = d_j v^i - d_i v^j

  /// value / grad_h1_sq; NaN for the zero state.
  double ratio() const;
};

/// Lyapunov functional of the decay argument. Throws std::invalid_argument for d2 <= 0.
LyapunovParts lyapunov_M(const FlowState& state, double d2 = 4.0);

/// Pointwise magnitude |U(x)|^2 = n^2 + |v|^2 + |E|^2 integrated by the
/// grid rule: ( sum_x |U(x)|^p dx )^{1/p}.
double lp_norm(const FlowState& state, double p);

/// One diagnostics row. Norms are not squared except M, the cross terms and
/// the accumulated dissipation integrals.
struct Sample {
  double t = 0.0;
  double L2_n = 0.0, L2_v = 0.0, L2_E = 0.0;
  double H1g = 0.0;  ///< |grad (n, v, E)|_{H^1}
  double H2 = 0.0;   ///< |(n, v, E)|_{H^2}
  double M = 0.0, cross1 = 0.0, cross2 = 0.0;
  double r1 = 0.0, r2 = 0.0, r3 = 0.0;
  double diss_acc1 = 0.0;  ///< int |grad (n, E)|^2_{H^1}
  double diss_acc2 = 0.0;  ///< int |grad v|^2_{H^2}
  double N = 0.0;          ///< running sup of (1 + t)^{5/2} M
  double Lp2 = 0.0, Lp4 = 0.0, Lp6 = 0.0;
  /// |grad E|^2 / |grad (n, E^T - E)|^2, the empirical elliptic constant.
  double ell_ratio = 0.0;
};

struct TimeSeriesRecord {
  std::vector<Sample> samples;

  /// Rejects non-increasing times and negative norms with std::invalid_argument.
  void append(const Sample& s);
  bool empty() const { return samples.empty(); }
  std::size_t size() const { return samples.size(); }
  std::vector<double> column(const std::string& name) const;
};

/// Stateful sampler: computes every column of a Sample and advances the
/// dissipation integrals by the trapezoid rule between calls.
class Sampler {
 public:
  Sampler(model::ModelParams params, double d2 = 4.0, bool residuals = true);

  Sample observe(const FlowState& state);

 private:
  model::ModelParams params_;
  double d2_;
  bool residuals_;
  bool started_ = false;
  double last_t_ = 0.0;
  double last_rate1_ = 0.0;
  double last_rate2_ = 0.0;
  double acc1_ = 0.0;
  double acc2_ = 0.0;
  double n_sup_ = 0.0;
};

// CSV: header line then one row per sample, 17 significant digits.
const std::vector<std::string>& csv_columns();
std::string csv_header();
std::string csv_row(const Sample& s);
void write_csv(const std::filesystem::path& path, const TimeSeriesRecord& record);
/// Reads a CSV with a header line into named columns. Throws std::runtime_error
/// on ragged rows or unparsable numbers.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  const std::vector<double>& column(const std::string& name) const;
  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};
CsvTable read_csv(const std::filesystem::path& path);
TimeSeriesRecord record_from_table(const CsvTable& table);

struct DecayFit {
  double t0 = 0.0, t1 = 0.0;
  std::size_t samples = 0;
  double slope = 0.0;
  double intercept = 0.0;  ///< log-space intercept
  double r_squared = 1.0;
  double slope_target = 0.0;
  double band_min = 0.0;   ///< inf over window of (1 + t)^{-slope_target} y
  double band_max = 0.0;
};

/// Least squares of log y against log(1 + t) over samples with t in [t0, t1].
/// The band is measured against `slope_target`, or against the fitted slope
/// when none is given. Throws std::invalid_argument with fewer than 8 samples
/// in the window, non-positive values, or t1 <= t0 < 0.
DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& y, double t0, double t1,
                   std::optional<double> slope_target = std::nullopt);

struct Verdict {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
};

struct LedgerOptions {
  double a = 1.0;
  /// Additionally check that |n|^2 + |v|^2 + a|E|^2 never increases.
  bool linear = false;
  double energy_growth = 2.0;
  double elliptic_bound = 10.0;
};

/// Discrete energy inequalities along a run: H^2 boundedness, finite and
/// nondecreasing dissipation integrals, the elliptic constant and, for
/// linear runs, monotone energy.
std::vector<Verdict> energy_ledger(const TimeSeriesRecord& record, const LedgerOptions& options);

/// Tracks |U(t) - K(t) U0|_{H^2} for a nonlinear run started from U0.
class DuhamelTracker {
 public:
  DuhamelTracker(FlowState initial, model::ModelParams params);

  double observe(const FlowState& state);
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& deviations() const { return deviations_; }
  double max_deviation() const;

 private:
  FlowState initial_;
  model::ModelParams params_;
  std::vector<double> times_;
  std::vector<double> deviations_;
};

/// |(n, v, E)|_{H^k}.
double state_sobolev_norm(const FlowState& state, int order);

}  // namespace cvflow::diagnostics
