#include "cvflow/diagnostics/diagnostics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cvflow/linear/semigroup.hpp"
#include "cvflow/nonlinear/sources.hpp"
#include "cvflow/spectral/operators.hpp"

namespace cvflow::diagnostics {

namespace sp = spectral;

namespace {

/// sum over the 13 components of |grad^j u|^2.
double state_gradient_sq(const FlowState& s, int order) {
  double acc = sp::gradient_norm_squared(s.n, order);
  for (const auto& c : s.v.comp) acc += sp::gradient_norm_squared(c, order);
  for (const auto& c : s.E.comp) acc += sp::gradient_norm_squared(c, order);
  return acc;
}

double tensor_gradient_sq(const spectral::TensorField& t, int order) {
  double acc = 0.0;
  for (const auto& c : t.comp) acc += sp::gradient_norm_squared(c, order);
  return acc;
}

double vector_gradient_sq(const spectral::VectorField& v, int order) {
  double acc = 0.0;
  for (const auto& c : v.comp) acc += sp::gradient_norm_squared(c, order);
  return acc;
}

double safe_sqrt(double x) { return std::sqrt(std::max(x, 0.0)); }

}  // namespace

double LyapunovParts::ratio() const {
  return grad_h1_sq > 0.0 ? value / grad_h1_sq : std::numeric_limits<double>::quiet_NaN();
}

LyapunovParts lyapunov_M(const FlowState& state, double d2) {
  if (!(d2 > 0.0)) throw std::invalid_argument("lyapunov_M: D2 must be positive");
  const FlowState s = state.to_frequency();
  LyapunovParts out;
  out.grad_h1_sq = state_gradient_sq(s, 1) + state_gradient_sq(s, 2);
  out.cross1 = sp::inner_product(sp::divergence(s.v), sp::laplacian(s.n));
  const spectral::TensorField anti = s.E.antisymmetric_part();
  spectral::TensorField lap_anti;
  for (std::size_t c = 0; c < 9; ++c) lap_anti.comp[c] = sp::laplacian(anti.comp[c]);
  out.cross2 = sp::inner_product(sp::curl_matrix(s.v), lap_anti);
  out.value = d2 * out.grad_h1_sq + out.cross1 + out.cross2;
  return out;
}

double lp_norm(const FlowState& state, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  const FlowState s = state.to_physical();
  const std::size_t m = s.grid().physical_size();
  std::vector<double> mag2(m, 0.0);
  auto add = [&](const spectral::ScalarField& f) {
    const auto x = f.values();
    for (std::size_t q = 0; q < m; ++q) mag2[q] += x[q] * x[q];
  };
  add(s.n);
  for (const auto& c : s.v.comp) add(c);
  for (const auto& c : s.E.comp) add(c);
  double sum = 0.0;
  for (double x : mag2) sum += std::pow(x, 0.5 * p);
  return std::pow(sum * s.grid().cell_volume(), 1.0 / p);
}

double state_sobolev_norm(const FlowState& state, int order) {
  double acc = sp::sobolev_norm_squared(state.n, order);
  for (const auto& c : state.v.comp) acc += sp::sobolev_norm_squared(c, order);
  for (const auto& c : state.E.comp) acc += sp::sobolev_norm_squared(c, order);
  return std::sqrt(acc);
}

void TimeSeriesRecord::append(const Sample& s) {
  if (!samples.empty() && !(s.t > samples.back().t)) {
    throw std::invalid_argument("TimeSeriesRecord: sample times must increase strictly");
  }
  const double norms[] = {s.L2_n, s.L2_v, s.L2_E, s.H1g, s.H2, s.r1, s.r2, s.r3};
  for (double x : norms) {
    if (!(x >= 0.0)) throw std::invalid_argument("TimeSeriesRecord: negative or NaN norm");
  }
  samples.push_back(s);
}

Sampler::Sampler(model::ModelParams params, double d2, bool residuals)
    : params_(std::move(params)), d2_(d2), residuals_(residuals) {
  if (!(d2 > 0.0)) throw std::invalid_argument("Sampler: D2 must be positive");
}

Sample Sampler::observe(const FlowState& state) {
  const FlowState s = state.to_frequency();
  Sample out;
  out.t = s.time;
  out.L2_n = sp::sobolev_norm(s.n, 0);
  out.L2_v = sp::sobolev_norm(s.v, 0);
  out.L2_E = sp::sobolev_norm(s.E, 0);
  const LyapunovParts m = lyapunov_M(s, d2_);
  out.H1g = safe_sqrt(m.grad_h1_sq);
  out.H2 = state_sobolev_norm(s, 2);
  out.M = m.value;
  out.cross1 = m.cross1;
  out.cross2 = m.cross2;
  if (residuals_) {
    const auto r = nonlinear::constraint_residuals(s);
    out.r1 = r.r1;
    out.r2 = r.r2;
    out.r3 = r.r3;
  }

  const double rate1 = sp::gradient_norm_squared(s.n, 1) + sp::gradient_norm_squared(s.n, 2) +
                       tensor_gradient_sq(s.E, 1) + tensor_gradient_sq(s.E, 2);
  const double rate2 =
      vector_gradient_sq(s.v, 1) + vector_gradient_sq(s.v, 2) + vector_gradient_sq(s.v, 3);
  if (started_) {
    const double dt = out.t - last_t_;
    acc1_ += 0.5 * dt * (rate1 + last_rate1_);
    acc2_ += 0.5 * dt * (rate2 + last_rate2_);
  }
  started_ = true;
  last_t_ = out.t;
  last_rate1_ = rate1;
  last_rate2_ = rate2;
  out.diss_acc1 = acc1_;
  out.diss_acc2 = acc2_;

  n_sup_ = std::max(n_sup_, std::pow(1.0 + out.t, 2.5) * out.M);
  out.N = n_sup_;

  out.Lp2 = lp_norm(s, 2.0);
  out.Lp4 = lp_norm(s, 4.0);
  out.Lp6 = lp_norm(s, 6.0);

  const double grad_e = tensor_gradient_sq(s.E, 1);
  const double denom = sp::gradient_norm_squared(s.n, 1) + tensor_gradient_sq(s.E.antisymmetric_part(), 1);
  out.ell_ratio = denom > 0.0 ? grad_e / denom : 0.0;
  return out;
}

}  // namespace cvflow::diagnostics
