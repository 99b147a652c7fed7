#include "cvflow/linear/radial_quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cvflow::linear {

namespace {

/// Adaptive GK31 per panel. Boost's tolerance is relative to the panel's own
/// L1 mass, so each panel gets a tolerance scaled against a coarse global
/// estimate; panels that carry no mass are not refined to round-off.
double integrate_panels(const std::function<double(double)>& f, const std::vector<double>& edges) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  std::vector<double> l1(edges.size() - 1, 0.0);
  double total_l1 = 0.0;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    GK::integrate(f, edges[p], edges[p + 1], 0, 0.0, nullptr, &l1[p]);
    total_l1 += l1[p];
  }
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    if (l1[p] == 0.0) continue;
    const double tol = std::clamp(1e-13 * total_l1 / l1[p], 1e-11, 1e-2);
    double err = 0.0;
    total += GK::integrate(f, edges[p], edges[p + 1], 15, tol, &err);
  }
  return total;
}

std::vector<double> panel_edges(const BlockSystem& sys, double t, double radius) {
  std::vector<double> edges{0.0};
  double scale = radius / 8.0;
  if (t > 0.0) scale = std::min(scale, 1.0 / std::sqrt(sys.nu * t));
  for (double e = scale; e < radius; e *= 2.0) edges.push_back(e);
  edges.push_back(radius);
  const double rc = sys.confluent_radius();
  if (rc > 0.0 && rc < radius) edges.push_back(rc);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace

QuadratureResult whole_space_norm(const RadialProfile& profile, const BlockSystem& sys, double t,
                                  int derivative_order, Component component) {
  if (t < 0.0 || derivative_order < 0) throw std::invalid_argument("whole_space_norm: bad arguments");
  const double radius = profile.support_radius;
  if (!(radius > 0.0)) throw std::invalid_argument("whole_space_norm: support radius must be positive");

  auto data_density = [&](double r) {
    const double x = profile.first(r);
    const double y = profile.second(r);
    return std::pow(r, 2 * derivative_order + 2) * (x * x + y * y);
  };
  auto integrand = [&](double r) {
    const auto u = propagator(sys, r, t).apply(profile.first(r), profile.second(r));
    double mag2 = 0.0;
    if (component != Component::second) mag2 += std::norm(u[0]);
    if (component != Component::first) mag2 += std::norm(u[1]);
    return std::pow(r, 2 * derivative_order) * mag2 * r * r;
  };

  // Tail test on the undamped data: the density at the cut must be
  // negligible against the total mass of the data.
  const std::vector<double> coarse = panel_edges(sys, 0.0, radius);
  const double data_mass = integrate_panels(data_density, coarse);
  if (!std::isfinite(data_mass)) throw std::domain_error("whole_space_norm: non-finite profile");
  if (data_mass == 0.0) return {};
  if (data_density(radius) * radius > 1e-12 * data_mass) {
    throw std::domain_error("whole_space_norm: profile '" + profile.name +
                            "' does not decay within the support radius");
  }

  const std::vector<double> edges = panel_edges(sys, t, radius);
  std::vector<double> halved;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    halved.push_back(edges[p]);
    halved.push_back(0.5 * (edges[p] + edges[p + 1]));
  }
  halved.push_back(edges.back());

  const double coarse_val = integrate_panels(integrand, edges);
  const double fine_val = integrate_panels(integrand, halved);
  const double prefactor = 4.0 * std::numbers::pi / std::pow(2.0 * std::numbers::pi, 3);
  QuadratureResult res;
  res.value = std::sqrt(prefactor * std::max(fine_val, 0.0));
  const double rel = std::abs(fine_val - coarse_val) / std::max(std::abs(fine_val), 1e-300);
  res.error_estimate = 0.5 * rel * res.value;  // d sqrt(x) / sqrt(x) = dx / (2x)
  if (rel > 1e-8) {
    throw std::runtime_error("whole_space_norm: quadrature did not reach 1e-8 relative accuracy");
  }
  return res;
}

}  // namespace cvflow::linear
