#include "cvflow/nonlinear/sources.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "cvflow/spectral/operators.hpp"

namespace cvflow::nonlinear {

namespace {

namespace sp = spectral;
using Values = std::vector<double>;

Values values_of(const ScalarField& f) {
  const ScalarField p = f.is_physical() ? f : f.to_physical();
  const auto s = p.values();
  return Values(s.begin(), s.end());
}

/// Back to frequency space, truncated when requested.
ScalarField finish(const sp::GridPtr& grid, Values v, bool dealias) {
  ScalarField f = ScalarField::from_values(grid, std::move(v)).to_frequency();
  return dealias ? sp::dealias(f) : f;
}

ScalarField prepare(const ScalarField& f, bool dealias) {
  ScalarField out = f.to_frequency();
  return dealias ? sp::dealias(out) : out;
}

/// Physical samples of a state and of the derivatives the sources need.
struct Workspace {
  sp::GridPtr grid;
  std::size_t size = 0;
  Values n;
  std::array<Values, 3> v;
  std::array<Values, 9> E;        // E[3i+j] = E^{ij}
  std::array<Values, 3> dn;       // d_k n
  std::array<Values, 9> dv;       // dv[3i+k] = d_k v^i
  std::array<Values, 27> dE;      // dE[9i+3j+k] = d_k E^{ij}
  ScalarField n_hat;
  VectorField v_hat;
  TensorField E_hat;

  const Values& grad_E(int i, int j, int k) const { return dE[9 * i + 3 * j + k]; }
};

Workspace load(const FlowState& state, bool dealias) {
  Workspace w;
  w.grid = state.grid_ptr();
  w.size = w.grid->physical_size();
  w.n_hat = prepare(state.n, dealias);
  for (int i = 0; i < 3; ++i) w.v_hat[i] = prepare(state.v[i], dealias);
  for (int c = 0; c < 9; ++c) w.E_hat.comp[c] = prepare(state.E.comp[c], dealias);

  w.n = values_of(w.n_hat);
  for (int i = 0; i < 3; ++i) w.v[i] = values_of(w.v_hat[i]);
  for (int c = 0; c < 9; ++c) w.E[c] = values_of(w.E_hat.comp[c]);
  for (int k = 0; k < 3; ++k) {
    w.dn[k] = values_of(sp::derivative(w.n_hat, k));
    for (int i = 0; i < 3; ++i) w.dv[3 * i + k] = values_of(sp::derivative(w.v_hat[i], k));
    for (int c = 0; c < 9; ++c) w.dE[3 * c + k] = values_of(sp::derivative(w.E_hat.comp[c], k));
  }
  return w;
}

Values zeros(std::size_t n) { return Values(n, 0.0); }

}  // namespace

SourceTriple evaluate_sources(const FlowState& state, const model::ModelParams& params,
                              SourceOptions options) {
  const bool dl = options.dealias;
  const Workspace w = load(state, dl);
  const std::size_t m = w.size;
  const double a = params.a;
  const double mu = params.mu;
  const double lm = params.lambda + params.mu;

  const Values coef = values_of(model::pressure_coefficient(w.n_hat, params));

  std::array<Values, 3> lap_v, grad_div_v;
  const ScalarField div_v_hat = sp::divergence(w.v_hat);
  for (int i = 0; i < 3; ++i) {
    lap_v[i] = values_of(sp::laplacian(w.v_hat[i]));
    grad_div_v[i] = values_of(sp::derivative(div_v_hat, i));
  }

  SourceTriple out;

  Values f = zeros(m), adv_n = zeros(m);
  for (std::size_t p = 0; p < m; ++p) {
    const double div = w.dv[0][p] + w.dv[4][p] + w.dv[8][p];
    f[p] = -w.n[p] * div;
    adv_n[p] = w.v[0][p] * w.dn[0][p] + w.v[1][p] * w.dn[1][p] + w.v[2][p] * w.dn[2][p];
  }
  out.f = finish(w.grid, std::move(f), dl);
  out.advect_n = finish(w.grid, std::move(adv_n), dl);

  for (int i = 0; i < 3; ++i) {
    Values el = zeros(m), visc = zeros(m), iner = zeros(m), pres = zeros(m);
    for (std::size_t p = 0; p < m; ++p) {
      double s = 0.0;
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) s += w.E[3 * j + k][p] * w.grad_E(i, k, j)[p];
      }
      el[p] = a * s;
      const double n = w.n[p];
      visc[p] = -n / (1.0 + n) * (mu * lap_v[i][p] + lm * grad_div_v[i][p]);
      iner[p] = -(w.v[0][p] * w.dv[3 * i][p] + w.v[1][p] * w.dv[3 * i + 1][p] +
                  w.v[2][p] * w.dv[3 * i + 2][p]);
      pres[p] = -coef[p] * w.dn[i][p];
    }
    out.g_elastic[i] = finish(w.grid, std::move(el), dl);
    out.g_viscous[i] = finish(w.grid, std::move(visc), dl);
    out.g_inertial[i] = finish(w.grid, std::move(iner), dl);
    out.g_pressure[i] = finish(w.grid, std::move(pres), dl);
    out.g[i] = out.g_elastic[i] + out.g_viscous[i] + out.g_inertial[i] + out.g_pressure[i];
  }

  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Values h = zeros(m), adv = zeros(m);
      for (std::size_t p = 0; p < m; ++p) {
        double sh = 0.0, sa = 0.0;
        for (int k = 0; k < 3; ++k) {
          sh += w.dv[3 * i + k][p] * w.E[3 * k + j][p];
          sa += w.v[k][p] * w.grad_E(i, j, k)[p];
        }
        h[p] = sh;
        adv[p] = sa;
      }
      out.h(i, j) = finish(w.grid, std::move(h), dl);
      out.advect_E(i, j) = finish(w.grid, std::move(adv), dl);
    }
  }

  if (options.derived) {
    out.has_derived = true;
    TensorField nE;
    for (int c = 0; c < 9; ++c) {
      Values prod = zeros(m);
      for (std::size_t p = 0; p < m; ++p) prod[p] = w.n[p] * w.E[c][p];
      nE.comp[c] = finish(w.grid, std::move(prod), dl);
    }
    out.g1 = out.g - a * sp::tensor_divergence(nE);

    // T^{ijk} = E^{lk} d_l E^{ij}; P^{ij} = d_k (T^{ijk} - T^{ikj}).
    std::array<Values, 27> t;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          Values& x = t[9 * i + 3 * j + k];
          x = zeros(m);
          for (std::size_t p = 0; p < m; ++p) {
            double s = 0.0;
            for (int l = 0; l < 3; ++l) s += w.E[3 * l + k][p] * w.grad_E(i, j, l)[p];
            x[p] = s;
          }
        }
      }
    }
    TensorField P = TensorField::zeros(w.grid, sp::Representation::frequency);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          Values q(m);
          const Values& tijk = t[9 * i + 3 * j + k];
          const Values& tikj = t[9 * i + 3 * k + j];
          for (std::size_t p = 0; p < m; ++p) q[p] = tijk[p] - tikj[p];
          P(i, j) += sp::derivative(finish(w.grid, std::move(q), dl), k);
        }
      }
    }
    out.S = TensorField::zeros(w.grid, sp::Representation::frequency);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        out.S(i, j) = P(i, j) - P(j, i);
      }
    }
  }
  return out;
}

FlowState nonlinear_term(const FlowState& state, const model::ModelParams& params, bool dealias) {
  SourceTriple s = evaluate_sources(state, params, SourceOptions{dealias, false});
  FlowState g;
  g.n = s.f - s.advect_n;
  g.v = std::move(s.g);
  g.E = s.h - s.advect_E;
  g.time = state.time;
  return g;
}

double ConstraintReport::max() const { return std::max({r1, r2, r3}); }

namespace {

double grid_l2(const Values& x, double cell_volume) {
  double s = 0.0;
  for (double y : x) s += y * y;
  return std::sqrt(s * cell_volume);
}

ConstraintReport residuals(const ScalarField& rho_in, const TensorField& F_in) {
  const sp::GridPtr grid = rho_in.grid_ptr();
  const std::size_t m = grid->physical_size();
  const Values rho = values_of(rho_in);
  std::array<Values, 9> F;
  std::array<ScalarField, 9> F_hat;
  for (int c = 0; c < 9; ++c) {
    F_hat[c] = F_in.comp[c].to_frequency();
    F[c] = values_of(F_hat[c]);
  }

  // rho F^{jk}, differentiated on its first index.
  TensorField rho_F;
  for (int c = 0; c < 9; ++c) {
    Values prod(m);
    for (std::size_t p = 0; p < m; ++p) prod[p] = rho[p] * F[c][p];
    rho_F.comp[c] = ScalarField::from_values(grid, std::move(prod));
  }
  const VectorField div_rho_FT = sp::tensor_divergence(rho_F.transpose());

  ConstraintReport rep;
  rep.r1 = sp::sobolev_norm(div_rho_FT, 0);
  rep.r3 = sp::sobolev_norm(sp::divergence(div_rho_FT), 0);

  std::array<Values, 27> dF;  // dF[9i+3j+l] = d_l F^{ij}
  for (int c = 0; c < 9; ++c) {
    for (int l = 0; l < 3; ++l) dF[3 * c + l] = values_of(sp::derivative(F_hat[c], l));
  }
  const double cell = grid->cell_volume();
  Values x(m);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = j + 1; k < 3; ++k) {
        for (std::size_t p = 0; p < m; ++p) {
          double s = 0.0;
          for (int l = 0; l < 3; ++l) {
            s += F[3 * l + k][p] * dF[9 * i + 3 * j + l][p] - F[3 * l + j][p] * dF[9 * i + 3 * k + l][p];
          }
          x[p] = s;
        }
        // The (i, k, j) slot is the negative of (i, j, k); (i, j, j) vanishes.
        rep.r2 = std::max(rep.r2, grid_l2(x, cell));
      }
    }
  }
  return rep;
}

}  // namespace

ConstraintReport constraint_residuals(const FlowState& state) {
  const auto grid = state.grid_ptr();
  const ScalarField rho = state.n.to_physical() + ScalarField::constant(grid, 1.0);
  const TensorField F = state.E.to_physical() + TensorField::identity(grid);
  return residuals(rho, F);
}

ConstraintReport constraint_residuals(const PhysState& state) {
  return residuals(state.rho, state.F);
}

}  // namespace cvflow::nonlinear
