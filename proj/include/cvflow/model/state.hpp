#pragma once

#include <stdexcept>
#include <string>

#include "cvflow/model/params.hpp"
#include "cvflow/spectral/field.hpp"

namespace cvflow::model {

using spectral::GridPtr;
using spectral::Representation;
using spectral::ScalarField;
using spectral::TensorField;
using spectral::VectorField;

/// Perturbation triple around (rho, u, F) = (1, 0, I) in the rescaled frame:
/// n = rho - 1, v = chi0 u, E = F - I.
struct FlowState {
  ScalarField n;
  VectorField v;
  TensorField E;
  double time = 0.0;

  static FlowState zeros(GridPtr grid, Representation rep = Representation::frequency);

  const GridPtr& grid_ptr() const { return n.grid_ptr(); }
  const spectral::Grid& grid() const { return n.grid(); }

  FlowState to_frequency() const;
  FlowState to_physical() const;

  FlowState& operator+=(const FlowState& o);
  FlowState& operator-=(const FlowState& o);
  FlowState& operator*=(double s);
};

FlowState operator+(FlowState a, const FlowState& b);
FlowState operator-(FlowState a, const FlowState& b);
FlowState operator*(double s, FlowState a);

/// Builds a perturbation state with n and v projected to mean zero. A
/// warning is logged when a removed mean exceeds 1e-13. The mean of E is
/// kept: a deformation built from a periodic displacement has a nonzero
/// O(delta^2) mean of F - I, and removing it would break div(rho F^T) = 0.
FlowState make_perturbation_state(ScalarField n, VectorField v, TensorField E, double time = 0.0);

/// Physical variables in the original frame.
struct PhysState {
  ScalarField rho;
  VectorField u;
  TensorField F;
  double time = 0.0;
};

/// Structured abort raised when a state leaves the small-perturbation regime.
class GuardBreach : public std::runtime_error {
 public:
  GuardBreach(std::string quantity, double observed, double threshold);
  const std::string& quantity() const { return quantity_; }
  double observed() const { return observed_; }
  double threshold() const { return threshold_; }

 private:
  std::string quantity_;
  double observed_;
  double threshold_;
};

inline constexpr double kVacuumGuard = 0.5;

/// Throws GuardBreach if min(1 + n) < 0.5 or min det(I + E) < 0.5.
void check_guards(const FlowState& state);

/// Pointwise det of a physical tensor field.
ScalarField determinant(const TensorField& physical_tensor);

/// Rescaling (t, x) -> (chi0^2 t, chi0 x) interpreted on the box: grid samples
/// are relabelled, so the physical box length is chi0 * L of the perturbation
/// grid. Throws std::invalid_argument if rho <= 0 or det F <= 0 anywhere.
FlowState phys_to_pert(const PhysState& phys, const ModelParams& params);
PhysState pert_to_phys(const FlowState& state, const ModelParams& params);

/// P'(1 + n) / ((1 + n) P'(1)) - 1 evaluated pointwise. Throws GuardBreach
/// when min(1 + n) < 0.5.
ScalarField pressure_coefficient(const ScalarField& n, const ModelParams& params);

}  // namespace cvflow::model
