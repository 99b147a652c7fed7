#pragma once

#include "cvflow/model/params.hpp"
#include "cvflow/model/state.hpp"

namespace cvflow::nonlinear {

using model::FlowState;
using model::PhysState;
using spectral::ScalarField;
using spectral::TensorField;
using spectral::VectorField;

/// Right-hand sides of the perturbation system
///   n_t + div v = f - v.grad n
///   v_t - mu Lap v - (lambda + mu) grad div v + grad n - a div E = g
///   E_t - grad v = h - v.grad E
/// with
///   f = -n div v,  h^{ij} = d_k v^i E^{kj},
///   g = g_elastic + g_viscous + g_inertial + g_pressure,
///   g_elastic^i  = a E^{jk} d_j E^{ik},
///   g_viscous^i  = -n / (1 + n) (mu Lap v^i + (lambda + mu) d_i div v),
///   g_inertial^i = -v^k d_k v^i,
///   g_pressure^i = -(P'(1 + n) / ((1 + n) P'(1)) - 1) d_i n.
/// All fields are in frequency representation.
struct SourceTriple {
  ScalarField f;
  VectorField g;
  TensorField h;

  VectorField g_elastic;
  VectorField g_viscous;
  VectorField g_inertial;
  VectorField g_pressure;

  ScalarField advect_n;  ///< v.grad n
  TensorField advect_E;  ///< (v.grad E)^{ij} = v^k d_k E^{ij}

  /// Filled when requested: g1 = g - a div(n E) with (div(nE))^i = d_j(n E^{ij}),
  /// and S = P - P^T, P^{ij} = d_k(E^{lk} d_l E^{ij} - E^{lj} d_l E^{ik}).
  bool has_derived = false;
  VectorField g1;
  TensorField S;
};

struct SourceOptions {
  /// Truncate inputs and every product with the 2/3 rule.
  bool dealias = true;
  bool derived = false;
};

/// Throws model::GuardBreach when min(1 + n) < 0.5.
SourceTriple evaluate_sources(const FlowState& state, const model::ModelParams& params,
                              SourceOptions options = {});

/// G = (f - v.grad n, g, h - v.grad E), the forcing seen by the linear
/// semigroup. Frequency representation, time copied from `state`.
FlowState nonlinear_term(const FlowState& state, const model::ModelParams& params,
                         bool dealias = true);

struct ConstraintReport {
  double r1 = 0.0;  ///< |d_j(rho F^{jk})|
  double r2 = 0.0;  ///< max_{ijk} |F^{lk} d_l F^{ij} - F^{lj} d_l F^{ik}|
  double r3 = 0.0;  ///< |d_k d_j(rho F^{jk})|

  double max() const;
};

/// L^2 norms of the two constraint families, evaluated without truncation so
/// that exactly admissible data give residuals at round-off level.
ConstraintReport constraint_residuals(const FlowState& state);
ConstraintReport constraint_residuals(const PhysState& state);

}  // namespace cvflow::nonlinear
