#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "cvflow/linear/radial_quadrature.hpp"
#include "cvflow/model/params.hpp"
#include "cvflow/model/state.hpp"

namespace cvflow::initial {

/// One Fourier mode of a real vector field: Re(amp exp(i xi.x)) with
/// xi = (2 pi / L) k, so amplitude (0, -1) on a component gives sin(k.x).
struct VectorMode {
  std::array<int, 3> k{};
  std::array<std::complex<double>, 3> amp{};
};

/// Displacement phi and velocity u as finite mode lists, both multiplied by `scale`.
struct DisplacementSpec {
  std::vector<VectorMode> phi;
  std::vector<VectorMode> u;
  double scale = 1.0;
};

/// Plain-text mode list, one entry per line:
///   phi k1 k2 k3 re1 im1 re2 im2 re3 im3
///   u   k1 k2 k3 re1 im1 re2 im2 re3 im3
///   scale s
/// Blank lines and '#' comments are ignored. Throws std::invalid_argument
/// with the offending line number.
DisplacementSpec parse_mode_list(const std::string& text);
std::string format_mode_list(const DisplacementSpec& spec);

/// Named generators: "zero", "shear" (phi = sin x1 e2) and "mix" (both sectors
/// excited, several wavevectors). Throws std::invalid_argument for unknown names.
DisplacementSpec builtin_spec(const std::string& name, double scale);

struct PiolaData {
  model::PhysState state;
  double max_grad_phi = 0.0;    ///< max over the grid of |grad phi|_Frobenius
  double h2_norm = 0.0;         ///< |(rho - 1, u, F - I)|_{H^2}
  /// Largest |xi| = 2 pi / L coefficient of the symmetric part of F - I.
  double symmetric_lowfreq = 0.0;
};

/// X(x) = x + phi(x), A = I + grad phi, F = A^{-1} (adjugate formula),
/// rho = det A, u from the velocity modes. Rejects (std::invalid_argument)
/// modes outside the dealiased ball |k| <= N/3 and max |grad phi| >= 1.
PiolaData piola_ic(const DisplacementSpec& spec, const spectral::GridPtr& grid);

/// Perturbation state of piola_ic, ready for the stepper.
model::FlowState piola_state(const DisplacementSpec& spec, const spectral::GridPtr& grid,
                             const model::ModelParams& params);

enum class ProfileShape { gaussian, exponential };

ProfileShape parse_shape(const std::string& name);

/// Radial envelope psi(r): exp(-r^2/2) or exp(-r).
double envelope(ProfileShape shape, double r);

/// (c0 psi(r), 0): first component bounded below near r = 0, second identically 0.
linear::RadialProfile lower_bound_profile(double c0, ProfileShape shape);
/// (0, r^eta psi(r)): first component 0, second vanishing like r^eta.
linear::RadialProfile eta_profile(double eta, ProfileShape shape);

}  // namespace cvflow::initial
