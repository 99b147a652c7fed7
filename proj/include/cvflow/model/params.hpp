#pragma once

#include <string>

namespace cvflow::model {

/// Barotropic law P(rho) = K rho^gamma / gamma. With the default K = 1,
/// P'(1) = 1 for every gamma.
struct PressureLaw {
  double scale = 1.0;
  double gamma = 2.0;

  double value(double rho) const;
  double derivative(double rho) const;
};

/// Material parameters of the viscoelastic model plus the quantities derived
/// from the rescaling to the perturbation frame.
struct ModelParams {
  double mu = 1.0;
  double lambda = 0.0;
  double alpha = 1.0;
  PressureLaw pressure;

  double p_prime_1 = 1.0;  ///< P'(1)
  double chi0 = 1.0;       ///< (P'(1))^{-1/2}
  double a = 1.0;          ///< alpha / P'(1)

  double compressible_viscosity() const { return 2.0 * mu + lambda; }
  std::string describe() const;
};

/// Validates mu > 0, 2 mu + 3 lambda > 0, alpha > 0, P'(1) > 0 and
/// gamma >= 1 (convex pressure); throws std::invalid_argument naming the
/// violated condition.
ModelParams make_params(double mu, double lambda, double alpha, double gamma,
                        double pressure_scale = 1.0);

}  // namespace cvflow::model
