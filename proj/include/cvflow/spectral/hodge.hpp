#pragma once

#include <array>

#include "cvflow/spectral/field.hpp"

namespace cvflow::spectral {

/// Compressible / incompressible split of a velocity field:
///   d = Lambda^{-1} div v,   omega = Lambda^{-1} (grad v - (grad v)^T).
struct HodgeParts {
  ScalarField d;
  TensorField omega;
  /// Means removed from v before the split (Lambda^{-1} is undefined at xi = 0).
  std::array<double, 3> removed_mean{};
};

HodgeParts hodge_decompose(const VectorField& v);

/// v = -Lambda^{-1} grad d + Lambda^{-1} curl omega, with (curl omega)^i = d_j omega^{ji}.
/// This is the exact left inverse of hodge_decompose on mean-zero fields.
/// Throws std::invalid_argument if omega is not antisymmetric.
VectorField hodge_reconstruct(const ScalarField& d, const TensorField& omega);

}  // namespace cvflow::spectral
