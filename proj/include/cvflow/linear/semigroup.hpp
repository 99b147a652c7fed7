#pragma once

#include "cvflow/model/params.hpp"
#include "cvflow/model/state.hpp"

namespace cvflow::linear {

/// Exact evolution of the linearised perturbation system
///   n_t + div v = 0,
///   v_t - mu Lap v - (lambda + mu) grad div v + grad n - a div E = 0,
///   E_t - grad v = 0,
/// over time t, mode by mode.
///
/// For xi != 0 with unit direction e, the longitudinal pair (n, d = i e.v)
/// follows the compressible block and each transverse pair
/// ((E^T - E) e, i v_perp) follows the shear block. The combinations
/// n + e.E e and (E^T e)_perp are conserved by the linear flow; they enter the
/// blocks as constant forcing, integrated with propagator_integral, so states
/// off the linearised constraint manifold are evolved exactly as well.
/// Columns E b with b orthogonal to e are constant. The zero mode and the
/// Nyquist planes do not evolve. Returns the state in frequency
/// representation at time state.time + t.
model::FlowState apply_linear_semigroup(const model::FlowState& state,
                                        const model::ModelParams& params, double t);

}  // namespace cvflow::linear
