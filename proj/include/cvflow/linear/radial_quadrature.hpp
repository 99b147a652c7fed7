#pragma once

#include <functional>
#include <string>

#include "cvflow/linear/propagator.hpp"

namespace cvflow::linear {

/// Radially symmetric initial data in frequency space for one 2x2 block:
/// U0_hat(xi) = (first(|xi|), second(|xi|)). `support_radius` bounds the
/// region where the profile is numerically nonzero.
struct RadialProfile {
  std::function<double(double)> first;
  std::function<double(double)> second;
  double support_radius = 12.0;
  std::string name;
};

enum class Component { both, first, second };

struct QuadratureResult {
  double value = 0.0;
  /// Difference between the panel integration and its halved-panel rerun.
  double error_estimate = 0.0;
};

/// || grad^k K(t) U0 ||_{L^2(R^3)} for radial data:
///   ( (2 pi)^{-3} 4 pi int_0^R r^{2k} |P_sel(r, t) U0_hat(r)|^2 r^2 dr )^{1/2},
/// where P_sel restricts the propagated pair to the selected component(s).
/// Adaptive Gauss-Kronrod on geometric panels anchored at (nu t)^{-1/2} and
/// the confluent radius. Throws std::domain_error when the profile does not
/// decay by `support_radius`, std::runtime_error when the halving check
/// misses a relative accuracy of 1e-8.
QuadratureResult whole_space_norm(const RadialProfile& profile, const BlockSystem& sys, double t,
                                  int derivative_order, Component component = Component::both);

}  // namespace cvflow::linear
