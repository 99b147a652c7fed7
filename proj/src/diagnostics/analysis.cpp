#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cvflow/diagnostics/diagnostics.hpp"
#include "cvflow/linear/semigroup.hpp"

namespace cvflow::diagnostics {

namespace {

struct ColumnRef {
  const char* name;
  double Sample::*member;
};

constexpr ColumnRef kColumns[] = {
    {"t", &Sample::t},           {"L2_n", &Sample::L2_n},
    {"L2_v", &Sample::L2_v},     {"L2_E", &Sample::L2_E},
    {"H1g", &Sample::H1g},       {"H2", &Sample::H2},
    {"M", &Sample::M},           {"cross1", &Sample::cross1},
    {"cross2", &Sample::cross2}, {"r1", &Sample::r1},
    {"r2", &Sample::r2},         {"r3", &Sample::r3},
    {"diss_acc1", &Sample::diss_acc1}, {"diss_acc2", &Sample::diss_acc2},
    {"N", &Sample::N},           {"Lp2", &Sample::Lp2},
    {"Lp4", &Sample::Lp4},       {"Lp6", &Sample::Lp6},
    {"ell_ratio", &Sample::ell_ratio},
};

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& c : kColumns) out.emplace_back(c.name);
    return out;
  }();
  return names;
}

std::string csv_header() {
  std::string out;
  for (const auto& c : kColumns) {
    if (!out.empty()) out += ',';
    out += c.name;
  }
  return out;
}

std::string csv_row(const Sample& s) {
  std::string out;
  bool first = true;
  for (const auto& c : kColumns) {
    if (!first) out += ',';
    first = false;
    out += format_number(s.*(c.member));
  }
  return out;
}

std::vector<double> TimeSeriesRecord::column(const std::string& name) const {
  for (const auto& c : kColumns) {
    if (name == c.name) {
      std::vector<double> out;
      out.reserve(samples.size());
      for (const auto& s : samples) out.push_back(s.*(c.member));
      return out;
    }
  }
  throw std::invalid_argument("unknown column '" + name + "'");
}

void write_csv(const std::filesystem::path& path, const TimeSeriesRecord& record) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << csv_header() << '\n';
  for (const auto& s : record.samples) os << csv_row(s) << '\n';
  if (!os) throw std::runtime_error("write failed for " + path.string());
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::invalid_argument("CSV has no column '" + name + "'");
  return columns[static_cast<std::size_t>(it - header.begin())];
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  CsvTable table;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty CSV " + path.string());
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.header.push_back(cell);
  }
  table.columns.assign(table.header.size(), {});
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(ss, cell, ',')) {
      if (col >= table.header.size()) break;
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0) {
        throw std::runtime_error("CSV row " + std::to_string(row) + ": bad number '" + cell + "'");
      }
      table.columns[col++].push_back(x);
    }
    if (col != table.header.size()) {
      throw std::runtime_error("CSV row " + std::to_string(row) + " has the wrong number of cells");
    }
  }
  return table;
}

TimeSeriesRecord record_from_table(const CsvTable& table) {
  TimeSeriesRecord rec;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    Sample s;
    for (const auto& c : kColumns) {
      const auto it = std::find(table.header.begin(), table.header.end(), c.name);
      if (it != table.header.end()) s.*(c.member) = table.columns[it - table.header.begin()][r];
    }
    rec.append(s);
  }
  return rec;
}

DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& y, double t0, double t1,
                   std::optional<double> slope_target) {
  if (t.size() != y.size()) throw std::invalid_argument("decay_fit: size mismatch");
  if (!(t0 >= 0.0) || !(t1 > t0)) throw std::invalid_argument("decay_fit: need t1 > t0 >= 0");
  std::vector<double> xs, ys, ts, vs;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t0 || t[i] > t1) continue;
    if (!(y[i] > 0.0)) throw std::invalid_argument("decay_fit: non-positive value in window");
    xs.push_back(std::log1p(t[i]));
    ys.push_back(std::log(y[i]));
    ts.push_back(t[i]);
    vs.push_back(y[i]);
  }
  if (xs.size() < 8) throw std::invalid_argument("decay_fit: fewer than 8 samples in window");

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("decay_fit: degenerate time window");

  DecayFit fit;
  fit.t0 = t0;
  fit.t1 = t1;
  fit.samples = xs.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
  }
  // A constant series is fitted exactly by slope 0.
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.slope_target = slope_target.value_or(fit.slope);
  fit.band_min = std::numeric_limits<double>::infinity();
  fit.band_max = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double b = std::pow(1.0 + ts[i], -fit.slope_target) * vs[i];
    fit.band_min = std::min(fit.band_min, b);
    fit.band_max = std::max(fit.band_max, b);
  }
  return fit;
}

std::vector<Verdict> energy_ledger(const TimeSeriesRecord& record, const LedgerOptions& options) {
  std::vector<Verdict> out;
  if (record.empty()) return out;
  const auto& s = record.samples;

  const double h2_0 = s.front().H2 * s.front().H2;
  double worst_growth = 0.0;
  for (const auto& x : s) {
    const double h2 = x.H2 * x.H2;
    worst_growth = std::max(worst_growth, h2_0 > 0.0 ? h2 / h2_0 : (h2 > 0.0 ? INFINITY : 0.0));
  }
  out.push_back({"H2 energy bounded", worst_growth <= options.energy_growth, worst_growth,
                 options.energy_growth});

  bool finite = true, monotone = true;
  double worst_drop = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    finite = finite && std::isfinite(s[i].diss_acc1) && std::isfinite(s[i].diss_acc2);
    if (i > 0) {
      const double d1 = s[i].diss_acc1 - s[i - 1].diss_acc1;
      const double d2 = s[i].diss_acc2 - s[i - 1].diss_acc2;
      worst_drop = std::min({worst_drop, d1, d2});
      monotone = monotone && d1 >= 0.0 && d2 >= 0.0;
    }
  }
  out.push_back({"dissipation finite", finite, finite ? 0.0 : 1.0, 0.0});
  out.push_back({"dissipation nondecreasing", monotone, worst_drop, 0.0});

  double worst_ell = 0.0;
  for (const auto& x : s) worst_ell = std::max(worst_ell, x.ell_ratio);
  out.push_back({"elliptic constant", worst_ell <= options.elliptic_bound, worst_ell,
                 options.elliptic_bound});

  if (options.linear) {
    auto energy = [&](const Sample& x) {
      return x.L2_n * x.L2_n + x.L2_v * x.L2_v + options.a * x.L2_E * x.L2_E;
    };
    const double scale = std::max(energy(s.front()), 1e-300);
    double worst_rise = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      worst_rise = std::max(worst_rise, (energy(s[i]) - energy(s[i - 1])) / scale);
    }
    out.push_back({"linear energy nonincreasing", worst_rise <= 1e-10, worst_rise, 1e-10});
  }
  return out;
}

DuhamelTracker::DuhamelTracker(FlowState initial, model::ModelParams params)
    : initial_(initial.to_frequency()), params_(std::move(params)) {}

double DuhamelTracker::observe(const FlowState& state) {
  const FlowState lin = linear::apply_linear_semigroup(initial_, params_, state.time - initial_.time);
  const double dev = state_sobolev_norm(state.to_frequency() - lin, 2);
  times_.push_back(state.time);
  deviations_.push_back(dev);
  return dev;
}

double DuhamelTracker::max_deviation() const {
  double m = 0.0;
  for (double d : deviations_) m = std::max(m, d);
  return m;
}

}  // namespace cvflow::diagnostics
