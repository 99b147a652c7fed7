#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "cvflow/diagnostics/diagnostics.hpp"
#include "cvflow/initial/initial_data.hpp"
#include "cvflow/integrator/stepper.hpp"
#include "support.hpp"

using namespace testsupport;
namespace dg = cvflow::diagnostics;
namespace it = cvflow::integrator;

namespace {

GridPtr box(int n) { return spectral::Grid::create(n, 2 * kPi); }

std::vector<double> log_grid(double a, double b, int count) {
  std::vector<double> t(count);
  for (int i = 0; i < count; ++i) t[i] = a * std::pow(b / a, double(i) / (count - 1));
  return t;
}

const dg::Verdict& find(const std::vector<dg::Verdict>& v, const std::string& key) {
  for (const auto& x : v)
    if (x.name.find(key) != std::string::npos) return x;
  throw std::runtime_error("no verdict " + key);
}

dg::TimeSeriesRecord run_record(const model::FlowState& s, const model::ModelParams& p, bool sources,
                                double t_end = 1.0) {
  it::StepperConfig c;
  c.t_end = t_end;
  c.dt = 0.05;
  c.sources = sources;
  c.output_every = 2;
  return it::run(s, p, c).record;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("Lyapunov functional of a single density mode") {
  const auto g = box(16);
  const double eps = 1e-2;
  auto s = model::FlowState::zeros(g);
  s.n = sine(g, 0, eps).to_frequency();
  const auto m = dg::lyapunov_M(s);
  const double vol = std::pow(2 * kPi, 3);
  CHECK(m.grad_h1_sq == doctest::Approx(eps * eps * vol).epsilon(1e-12));
  CHECK(m.value == doctest::Approx(4 * eps * eps * vol).epsilon(1e-12));
  CHECK(m.cross1 == 0.0);
  CHECK(m.cross2 == 0.0);
  CHECK(dg::lyapunov_M(s, 9.0).value == doctest::Approx(9 * eps * eps * vol).epsilon(1e-12));

  const auto zero = dg::lyapunov_M(model::FlowState::zeros(g));
  CHECK(zero.value == 0.0);
  CHECK(std::isnan(zero.ratio()));
  CHECK_THROWS_AS(dg::lyapunov_M(s, 0.0), std::invalid_argument);
}

TEST_CASE("cross terms match direct inner products") {
  // v = sin x1 e1, n = cos x1: div v = cos x1, Lap n = -cos x1.
  const auto g = box(16);
  auto s = model::FlowState::zeros(g);
  s.v[0] = sine(g, 0).to_frequency();
  s.n = cosine(g, 0).to_frequency();
  CHECK(dg::lyapunov_M(s).cross1 == doctest::Approx(-std::pow(2 * kPi, 3) / 2).epsilon(1e-12));
  // v = sin x1 e2 gives W^{21} = cos x1 = -W^{12}; E^{21} = cos x1 gives
  // Lap(E^T - E) = (-cos x1, +cos x1) in the (12, 21) slots, so the pairing is 2 cos^2 x1.
  auto t = model::FlowState::zeros(g);
  t.v[1] = sine(g, 0).to_frequency();
  t.E(1, 0) = cosine(g, 0).to_frequency();
  CHECK(dg::lyapunov_M(t).cross2 == doctest::Approx(std::pow(2 * kPi, 3)).epsilon(1e-12));
}

TEST_CASE("Lyapunov equivalence band for random states") {
  const auto g = box(16);
  std::mt19937 rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    const auto s = random_state(g, rng, 1 + trial % 4, 1e-3);
    const double r = dg::lyapunov_M(s).ratio();
    CHECK(r >= 2.0);
    CHECK(r <= 8.0);
    const double r9 = dg::lyapunov_M(s, 9.0).ratio();
    CHECK(r9 >= 4.5);
    CHECK(r9 <= 18.0);
  }
}

TEST_CASE("grid Lp norms of a single mode") {
  const auto g = box(16);
  const double eps = 0.3;
  auto s = model::FlowState::zeros(g);
  s.n = sine(g, 0, eps).to_frequency();
  const double vol = std::pow(2 * kPi, 3);
  CHECK(dg::lp_norm(s, 2) == doctest::Approx(eps * std::sqrt(vol / 2)).epsilon(1e-13));
  CHECK(dg::lp_norm(s, 4) == doctest::Approx(eps * std::pow(vol * 3.0 / 8.0, 0.25)).epsilon(1e-13));
  CHECK(dg::lp_norm(s, 6) == doctest::Approx(eps * std::pow(vol * 5.0 / 16.0, 1.0 / 6.0)).epsilon(1e-13));
}

TEST_CASE("interpolation between L2 and L6") {
  const auto g = box(16);
  std::mt19937 rng(32);
  for (int trial = 0; trial < 6; ++trial) {
    const auto s = random_state(g, rng, 3, 1e-2);
    const double l2 = dg::lp_norm(s, 2), l4 = dg::lp_norm(s, 4), l6 = dg::lp_norm(s, 6);
    CHECK(l4 <= std::pow(l2, 0.25) * std::pow(l6, 0.75) * (1 + 1e-10));
  }
}

TEST_CASE("decay fit recovers exact power laws") {
  const auto t = log_grid(1.0, 1e4, 40);
  std::vector<double> y, c;
  for (double x : t) {
    y.push_back(3.0 * std::pow(1 + x, -0.75));
    c.push_back(2.5);
  }
  const auto f = dg::decay_fit(t, y, 1.0, 1e4, -0.75);
  CHECK(f.slope == doctest::Approx(-0.75).epsilon(1e-10));
  CHECK(f.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-10));
  CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.band_min == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.band_max == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.samples == 40);

  const auto flat = dg::decay_fit(t, c, 1.0, 1e4);
  CHECK(std::abs(flat.slope) < 1e-12);
  CHECK(flat.band_min == doctest::Approx(2.5));

  // The window selects samples.
  const auto part = dg::decay_fit(t, y, 10.0, 1e3);
  CHECK(part.samples < 40);
  CHECK(part.t0 == 10.0);
}

TEST_CASE("decay fit rejects thin or non-positive data") {
  const auto t = log_grid(1.0, 100.0, 7);
  std::vector<double> y(t.size(), 1.0);
  CHECK_THROWS_AS(dg::decay_fit(t, y, 0.0, 200.0), std::invalid_argument);
  const auto t2 = log_grid(1.0, 100.0, 10);
  std::vector<double> y2(t2.size(), 1.0);
  y2[4] = 0.0;
  CHECK_THROWS_AS(dg::decay_fit(t2, y2, 0.0, 200.0), std::invalid_argument);
  y2[4] = 1.0;
  CHECK_THROWS_AS(dg::decay_fit(t2, y2, 50.0, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(dg::decay_fit(t2, y2, -1.0, 10.0), std::invalid_argument);
  CHECK_NOTHROW(dg::decay_fit(t2, y2, 0.0, 200.0));
}

TEST_CASE("records enforce monotone time and non-negative norms") {
  dg::TimeSeriesRecord r;
  dg::Sample s;
  r.append(s);
  CHECK_THROWS_AS(r.append(s), std::invalid_argument);
  s.t = 1.0;
  s.H2 = -1.0;
  CHECK_THROWS_AS(r.append(s), std::invalid_argument);
  s.H2 = 2.0;
  r.append(s);
  CHECK(r.column("H2") == std::vector<double>{0.0, 2.0});
  CHECK_THROWS(r.column("nope"));
}

TEST_CASE("CSV round trip keeps every digit") {
  const auto g = box(16);
  const auto s = initial::piola_state(initial::builtin_spec("mix", 1e-3), g, model::make_params(1, 0, 1, 2));
  const auto record = run_record(s, model::make_params(1, 0, 1, 2), true, 0.3);
  const auto path = std::filesystem::temp_directory_path() / "cvflow_csv_roundtrip.csv";
  dg::write_csv(path, record);
  const auto table = dg::read_csv(path);
  CHECK(table.header == dg::csv_columns());
  const auto back = dg::record_from_table(table);
  REQUIRE(back.size() == record.size());
  for (const auto& name : dg::csv_columns()) CHECK(back.column(name) == record.column(name));

  {
    std::ofstream bad(path);
    bad << dg::csv_header() << "\n1,2\n";
  }
  CHECK_THROWS_AS(dg::read_csv(path), std::runtime_error);
  std::filesystem::remove(path);
}

TEST_CASE("energy ledger on a linear run") {
  const auto g = box(16);
  std::mt19937 rng(33);
  const auto s = random_state(g, rng, 3, 1e-3);
  const auto p = model::make_params(1, 0, 1, 2);
  const auto record = run_record(s, p, false, 2.0);
  dg::LedgerOptions opt;
  opt.a = p.a;
  opt.linear = true;
  const auto verdicts = dg::energy_ledger(record, opt);
  for (const auto& v : verdicts) {
    INFO(v.name << " measured " << v.measured << " bound " << v.bound);
    CHECK(v.pass);
  }
  CHECK(find(verdicts, "linear energy").pass);
}

TEST_CASE("energy ledger on a zero run") {
  const auto g = box(8);
  const auto record = run_record(model::FlowState::zeros(g), model::make_params(1, 0, 1, 2), true);
  for (const auto& name : dg::csv_columns()) {
    if (name == "t") continue;
    for (double x : record.column(name)) CHECK(x == 0.0);
  }
  for (const auto& v : dg::energy_ledger(record, dg::LedgerOptions{})) {
    INFO(v.name);
    CHECK(v.pass);
    CHECK(v.measured == 0.0);
  }
}

TEST_CASE("energy ledger flags growth") {
  dg::TimeSeriesRecord r;
  for (int i = 0; i < 4; ++i) {
    dg::Sample s;
    s.t = i;
    s.H2 = 1.0 + i;
    s.L2_n = 1.0 + i;
    r.append(s);
  }
  dg::LedgerOptions opt;
  opt.linear = true;
  const auto v = dg::energy_ledger(r, opt);
  CHECK_FALSE(find(v, "H2").pass);
  CHECK_FALSE(find(v, "linear energy").pass);
}

TEST_CASE("Duhamel deviation vanishes without sources") {
  const auto g = box(16);
  const auto p = model::make_params(1, 0, 1, 2);
  const auto s = initial::piola_state(initial::builtin_spec("mix", 1e-3), g, p);
  dg::DuhamelTracker tracker(s, p);
  it::StepperConfig c;
  c.t_end = 1.0;
  c.dt = 0.05;
  c.sources = false;
  it::RunHooks hooks;
  hooks.on_sample = [&](const model::FlowState& st, const dg::Sample&) { tracker.observe(st); };
  it::run(s, p, c, hooks);
  CHECK(tracker.times().size() == 21);
  CHECK(tracker.max_deviation() <= 1e-10);

  dg::DuhamelTracker zero(model::FlowState::zeros(g), p);
  CHECK(zero.observe(model::FlowState::zeros(g)) == 0.0);
}

TEST_CASE("Duhamel deviation is quadratic in the amplitude") {
  const auto g = box(16);
  const auto p = model::make_params(1, 0, 1, 2);
  auto deviation = [&](double delta) {
    const auto s = initial::piola_state(initial::builtin_spec("mix", delta), g, p);
    dg::DuhamelTracker tracker(s, p);
    it::StepperConfig c;
    c.t_end = 1.0;
    c.dt = 0.05;
    c.residuals = false;
    it::RunHooks hooks;
    hooks.on_sample = [&](const model::FlowState& st, const dg::Sample&) { tracker.observe(st); };
    it::run(s, p, c, hooks);
    return tracker.max_deviation();
  };
  const double ratio = deviation(1e-3) / deviation(5e-4);
  CHECK(ratio >= 3.0);
  CHECK(ratio <= 5.0);
}

TEST_CASE("sampler accumulates dissipation and the running sup") {
  const auto g = box(16);
  const auto p = model::make_params(1, 0, 1, 2);
  const auto s = initial::piola_state(initial::builtin_spec("mix", 1e-2), g, p);
  const auto record = run_record(s, p, true, 1.0);
  const auto acc1 = record.column("diss_acc1");
  const auto acc2 = record.column("diss_acc2");
  const auto N = record.column("N");
  const auto M = record.column("M");
  const auto t = record.column("t");
  CHECK(acc1.front() == 0.0);
  for (std::size_t i = 1; i < record.size(); ++i) {
    CHECK(acc1[i] > acc1[i - 1]);
    CHECK(acc2[i] > acc2[i - 1]);
    CHECK(N[i] >= N[i - 1]);
    CHECK(N[i] >= std::pow(1 + t[i], 2.5) * M[i] * (1 - 1e-15));
  }
  for (double e : record.column("ell_ratio")) {
    CHECK(e > 0.0);
    CHECK(e <= 10.0);
  }
}

}  // TEST_SUITE
