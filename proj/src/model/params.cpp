#include "cvflow/model/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cvflow::model {

double PressureLaw::value(double rho) const { return scale * std::pow(rho, gamma) / gamma; }

double PressureLaw::derivative(double rho) const { return scale * std::pow(rho, gamma - 1.0); }

std::string ModelParams::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "mu=" << mu << " lambda=" << lambda << " alpha=" << alpha << " gamma=" << pressure.gamma
     << " pressure_scale=" << pressure.scale << " P'(1)=" << p_prime_1 << " chi0=" << chi0
     << " a=" << a;
  return os.str();
}

ModelParams make_params(double mu, double lambda, double alpha, double gamma,
                        double pressure_scale) {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(mu) || !finite(lambda) || !finite(alpha) || !finite(gamma) || !finite(pressure_scale)) {
    throw std::invalid_argument("params: non-finite parameter");
  }
  if (!(mu > 0.0)) throw std::invalid_argument("params: viscosity condition mu > 0 violated");
  if (!(2.0 * mu + 3.0 * lambda > 0.0)) {
    throw std::invalid_argument("params: Lame condition 2*mu + 3*lambda > 0 violated");
  }
  if (!(alpha > 0.0)) throw std::invalid_argument("params: elastic coupling alpha > 0 violated");
  if (!(gamma >= 1.0)) throw std::invalid_argument("params: convex pressure requires gamma >= 1");

  ModelParams p;
  p.mu = mu;
  p.lambda = lambda;
  p.alpha = alpha;
  p.pressure = PressureLaw{pressure_scale, gamma};
  p.p_prime_1 = p.pressure.derivative(1.0);
  if (!(p.p_prime_1 > 0.0)) throw std::invalid_argument("params: P'(1) > 0 violated");
  p.chi0 = 1.0 / std::sqrt(p.p_prime_1);
  p.a = alpha / p.p_prime_1;
  return p;
}

}  // namespace cvflow::model
