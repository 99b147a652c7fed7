#include "cvflow/linear/semigroup.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "cvflow/linear/propagator.hpp"

namespace cvflow::linear {

namespace {

using model::FlowState;
using C3 = std::array<Complex, 3>;

struct ModeOperators {
  Propagator2x2 p_long, q_long, p_shear, q_shear;
};

}  // namespace

FlowState apply_linear_semigroup(const FlowState& state, const model::ModelParams& params,
                                 double t) {
  if (t < 0.0) throw std::invalid_argument("apply_linear_semigroup: negative time");
  FlowState out = state.to_frequency();
  out.time = state.time + t;
  if (t == 0.0) return out;

  const auto& g = out.grid();
  const BlockSystem longitudinal = BlockSystem::compressible(params);
  const BlockSystem transverse = BlockSystem::shear(params);
  const double a = params.a;
  const double base = 2.0 * std::numbers::pi / g.length();

  // Every block quantity depends on |k|^2 only.
  std::unordered_map<long, ModeOperators> cache;
  auto operators_for = [&](long k2) -> const ModeOperators& {
    auto it = cache.find(k2);
    if (it != cache.end()) return it->second;
    const double r = base * std::sqrt(static_cast<double>(k2));
    ModeOperators ops{propagator(longitudinal, r, t), propagator_integral(longitudinal, r, t),
                      propagator(transverse, r, t), propagator_integral(transverse, r, t)};
    return cache.emplace(k2, ops).first->second;
  };

  auto n_hat = out.n.coefficients();
  std::array<std::span<Complex>, 3> v_hat{out.v[0].coefficients(), out.v[1].coefficients(),
                                          out.v[2].coefficients()};
  std::array<std::span<Complex>, 9> e_hat;
  for (std::size_t c = 0; c < 9; ++c) e_hat[c] = out.E.comp[c].coefficients();

  const Complex I(0.0, 1.0);
  const int n = g.n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < g.half_n(); ++l) {
        const std::size_t s = g.spectral_index(i, j, l);
        if (s == 0 || g.nyquist_mask()[s]) continue;
        const auto k = g.mode(i, j, l);
        const long k2 = long(k[0]) * k[0] + long(k[1]) * k[1] + long(k[2]) * k[2];
        const ModeOperators& ops = operators_for(k2);
        const double r = base * std::sqrt(static_cast<double>(k2));
        const std::array<double, 3> e = {k[0] / std::sqrt(double(k2)), k[1] / std::sqrt(double(k2)),
                                         k[2] / std::sqrt(double(k2))};

        C3 v{v_hat[0][s], v_hat[1][s], v_hat[2][s]};
        C3 col{}, row{};
        for (int p = 0; p < 3; ++p) {
          for (int q = 0; q < 3; ++q) {
            col[p] += e_hat[3 * p + q][s] * e[q];
            row[q] += e[p] * e_hat[3 * p + q][s];
          }
        }
        Complex v_e{}, e_ee{};
        for (int p = 0; p < 3; ++p) {
          v_e += e[p] * v[p];
          e_ee += e[p] * col[p];
        }

        // Longitudinal block on (n, d), forced by the conserved n + E_ee.
        const Complex conserved = n_hat[s] + e_ee;
        const Complex force_l = -a * r * conserved;
        const Complex d = I * v_e;
        const Complex n_new = ops.p_long(0, 0) * n_hat[s] + ops.p_long(0, 1) * d +
                              ops.q_long(0, 1) * force_l;
        const Complex d_new = ops.p_long(1, 0) * n_hat[s] + ops.p_long(1, 1) * d +
                              ops.q_long(1, 1) * force_l;
        const Complex v_e_new = -I * d_new;
        const Complex e_ee_new = conserved - n_new;

        // Shear block on ((E^T - E) e, i v_perp) per transverse direction,
        // forced by the conserved transverse row (E^T e)_perp.
        C3 v_new{}, col_new{};
        for (int p = 0; p < 3; ++p) {
          const Complex v_perp = v[p] - e[p] * v_e;
          const Complex w = col[p] - e[p] * e_ee;
          const Complex z = row[p] - e[p] * e_ee;
          const Complex x = z - w;
          const Complex y = I * v_perp;
          const Complex force_s = -a * r * z;
          const Complex x_new = ops.p_shear(0, 0) * x + ops.p_shear(0, 1) * y +
                                ops.q_shear(0, 1) * force_s;
          const Complex y_new = ops.p_shear(1, 0) * x + ops.p_shear(1, 1) * y +
                                ops.q_shear(1, 1) * force_s;
          v_new[p] = e[p] * v_e_new - I * y_new;
          col_new[p] = e[p] * e_ee_new + (z - x_new);
        }

        n_hat[s] = n_new;
        for (int p = 0; p < 3; ++p) {
          v_hat[p][s] = v_new[p];
          const Complex dcol = col_new[p] - col[p];
          for (int q = 0; q < 3; ++q) e_hat[3 * p + q][s] += dcol * e[q];
        }
      }
    }
  }
  return out;
}

}  // namespace cvflow::linear
