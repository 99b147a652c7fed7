#pragma once

#include <array>
#include <functional>

#include "cvflow/spectral/field.hpp"

namespace cvflow::spectral {

using Symbol = std::function<Complex(const std::array<double, 3>& xi)>;

// All operators below accept either representation and return fields in the
// frequency representation. Differential operators zero the Nyquist planes.

/// Multiplies every mode by symbol(xi). Nyquist modes are zeroed unless
/// `zero_nyquist` is false.
ScalarField apply_multiplier(const ScalarField& field, const Symbol& symbol,
                             bool zero_nyquist = true);

/// d/dx_axis, symbol i xi_axis.
ScalarField derivative(const ScalarField& field, int axis);
ScalarField laplacian(const ScalarField& field);

/// Lambda^s with symbol |xi|^s. The zero mode maps to zero for every s.
ScalarField lambda_power(const ScalarField& field, double s);

VectorField gradient(const ScalarField& field);
ScalarField divergence(const VectorField& v);
/// (grad v)^{ij} = d_j v^i.
TensorField vector_gradient(const VectorField& v);
/// (div T)^i = d_j T^{ij}.
VectorField tensor_divergence(const TensorField& t);
/// Matrix curl W^{ij} = d_j v^i - d_i v^j.
TensorField curl_matrix(const VectorField& v);
/// Contraction back to a vector: (curl w)^i = d_j w^{ji}.
VectorField curl_contract(const TensorField& w);

/// 2/3-rule truncation (see Grid::keeps_after_dealias).
ScalarField dealias(const ScalarField& field);

/// Zeroes the mean and returns the removed value through `removed`.
ScalarField remove_mean(const ScalarField& field, double* removed = nullptr);

/// <a, b>_{L^2} = L^3 sum_xi Re(a_hat conj(b_hat)).
double inner_product(const ScalarField& a, const ScalarField& b);
double inner_product(const VectorField& a, const VectorField& b);
double inner_product(const TensorField& a, const TensorField& b);

/// |grad^j u|^2_{L^2} summed over components, for a single order j.
double gradient_norm_squared(const ScalarField& u, int order);
/// |u|^2_{H^k} = sum_{j <= k} |grad^j u|^2_{L^2}.
double sobolev_norm_squared(const ScalarField& u, int order);
double sobolev_norm(const ScalarField& u, int order);
double sobolev_norm(const VectorField& u, int order);
double sobolev_norm(const TensorField& u, int order);

}  // namespace cvflow::spectral
