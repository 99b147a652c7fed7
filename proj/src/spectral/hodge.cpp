#include "cvflow/spectral/hodge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cvflow/spectral/operators.hpp"

namespace cvflow::spectral {

HodgeParts hodge_decompose(const VectorField& v) {
  HodgeParts parts;
  VectorField centred;
  for (int i = 0; i < 3; ++i) centred[i] = remove_mean(v[i], &parts.removed_mean[i]);
  parts.d = lambda_power(divergence(centred), -1.0);
  const TensorField w = curl_matrix(centred);
  for (std::size_t k = 0; k < 9; ++k) parts.omega.comp[k] = lambda_power(w.comp[k], -1.0);
  return parts;
}

VectorField hodge_reconstruct(const ScalarField& d, const TensorField& omega) {
  const TensorField w = omega.to_frequency();
  double scale = 0.0;
  for (const auto& c : w.comp) {
    for (const Complex& z : c.coefficients()) scale = std::max(scale, std::abs(z));
  }
  if (w.symmetric_defect() > 1e-12 * std::max(1.0, scale)) {
    throw std::invalid_argument("hodge_reconstruct: omega is not antisymmetric");
  }
  const VectorField grad_d = gradient(d);
  const VectorField curl_w = curl_contract(w);
  VectorField v;
  for (int i = 0; i < 3; ++i) {
    v[i] = lambda_power(curl_w[i], -1.0);
    v[i] -= lambda_power(grad_d[i], -1.0);
  }
  return v;
}

}  // namespace cvflow::spectral
