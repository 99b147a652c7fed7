#include "cvflow/linear/ode_reference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace cvflow::linear {

namespace {

using Mat = std::array<double, 4>;  // row-major 2x2

Mat mul(const Mat& a, const Mat& x) {
  return {a[0] * x[0] + a[1] * x[2], a[0] * x[1] + a[1] * x[3],
          a[2] * x[0] + a[3] * x[2], a[2] * x[1] + a[3] * x[3]};
}

Mat axpy(const Mat& x, double h, const Mat& k) {
  return {x[0] + h * k[0], x[1] + h * k[1], x[2] + h * k[2], x[3] + h * k[3]};
}

}  // namespace

Propagator2x2 rk4_propagator(const BlockSystem& sys, double r, double t, double max_step) {
  if (t < 0.0 || !(max_step > 0.0)) throw std::invalid_argument("rk4_propagator: bad arguments");
  const Mat a = {0.0, -r, sys.b * r, -sys.nu * r * r};
  const double norm_a = std::max({std::abs(a[1]) + std::abs(a[3]), std::abs(a[2]), 1e-300});
  const double h_target = std::min(max_step, 0.01 / norm_a);
  const long steps = std::max(1L, static_cast<long>(std::ceil(t / h_target)));
  const double h = t / static_cast<double>(steps);
  Mat x = {1.0, 0.0, 0.0, 1.0};
  for (long s = 0; s < steps && t > 0.0; ++s) {
    const Mat k1 = mul(a, x);
    const Mat k2 = mul(a, axpy(x, 0.5 * h, k1));
    const Mat k3 = mul(a, axpy(x, 0.5 * h, k2));
    const Mat k4 = mul(a, axpy(x, h, k3));
    for (int i = 0; i < 4; ++i) x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  Propagator2x2 p;
  p.m[0][0] = x[0];
  p.m[0][1] = x[1];
  p.m[1][0] = x[2];
  p.m[1][1] = x[3];
  return p;
}

std::vector<OracleSample> oracle_grid(const BlockSystem& sys) {
  const double c = sys.confluent_radius();
  const double radii[] = {0.0, 0.01, 0.05, 0.1, 0.2, 0.35, 0.5, 0.75, 1.0, 1.5, 2.5, 4.0, 6.0, 8.0,
                          c - 1e-4, c - 1e-5, c - 1e-7, c, c + 1e-7, c + 1e-4};
  const double times[] = {0.01, 0.3, 1.0, 3.0, 7.0};
  std::vector<OracleSample> out;
  for (double r : radii)
    for (double t : times) out.push_back({r, t, 0.0});
  return out;
}

std::vector<OracleSample> compare_with_oracle(const BlockSystem& sys) {
  auto samples = oracle_grid(sys);
  for (auto& s : samples) s.deviation = propagator(sys, s.r, s.t).max_abs_diff(rk4_propagator(sys, s.r, s.t));
  return samples;
}

}  // namespace cvflow::linear
