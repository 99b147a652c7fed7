#include "cvflow/model/state.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <sstream>

#include "cvflow/spectral/operators.hpp"

namespace cvflow::model {

using spectral::Complex;

FlowState FlowState::zeros(GridPtr grid, Representation rep) {
  FlowState s;
  s.n = ScalarField::zeros(grid, rep);
  s.v = VectorField::zeros(grid, rep);
  s.E = TensorField::zeros(grid, rep);
  return s;
}

FlowState FlowState::to_frequency() const {
  return FlowState{n.to_frequency(), v.to_frequency(), E.to_frequency(), time};
}

FlowState FlowState::to_physical() const {
  return FlowState{n.to_physical(), v.to_physical(), E.to_physical(), time};
}

FlowState& FlowState::operator+=(const FlowState& o) {
  n += o.n;
  v += o.v;
  E += o.E;
  return *this;
}

FlowState& FlowState::operator-=(const FlowState& o) {
  n -= o.n;
  v -= o.v;
  E -= o.E;
  return *this;
}

FlowState& FlowState::operator*=(double s) {
  n *= s;
  v *= s;
  E *= s;
  return *this;
}

FlowState operator+(FlowState a, const FlowState& b) { return a += b; }
FlowState operator-(FlowState a, const FlowState& b) { return a -= b; }
FlowState operator*(double s, FlowState a) { return a *= s; }

FlowState make_perturbation_state(ScalarField n, VectorField v, TensorField E, double time) {
  FlowState s;
  const Representation rep = n.representation();
  auto project = [&](const ScalarField& f, const char* name) {
    double removed = 0.0;
    ScalarField out = spectral::remove_mean(f, &removed);
    if (std::abs(removed) > 1e-13) {
      spdlog::warn("perturbation field {} had mean {:.3e}; projected to mean zero", name, removed);
    }
    return rep == Representation::physical ? out.to_physical() : out;
  };
  s.n = project(n, "n");
  for (int i = 0; i < 3; ++i) s.v[i] = project(v[i], "v");
  s.E = std::move(E);
  s.time = time;
  return s;
}

GuardBreach::GuardBreach(std::string quantity, double observed, double threshold)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "guard breach: min " << quantity << " = " << observed << " below " << threshold;
        return os.str();
      }()),
      quantity_(std::move(quantity)),
      observed_(observed),
      threshold_(threshold) {}

ScalarField determinant(const TensorField& t) {
  const auto a = [&](int i, int j) { return t(i, j).values(); };
  std::vector<double> out(t.grid().physical_size());
  const auto a00 = a(0, 0), a01 = a(0, 1), a02 = a(0, 2);
  const auto a10 = a(1, 0), a11 = a(1, 1), a12 = a(1, 2);
  const auto a20 = a(2, 0), a21 = a(2, 1), a22 = a(2, 2);
  for (std::size_t p = 0; p < out.size(); ++p) {
    out[p] = a00[p] * (a11[p] * a22[p] - a12[p] * a21[p]) -
             a01[p] * (a10[p] * a22[p] - a12[p] * a20[p]) +
             a02[p] * (a10[p] * a21[p] - a11[p] * a20[p]);
  }
  return ScalarField::from_values(t.grid_ptr(), std::move(out));
}

void check_guards(const FlowState& state) {
  const FlowState p = state.n.is_physical() ? state : state.to_physical();
  const double min_rho = 1.0 + p.n.min_value();
  if (!(min_rho >= kVacuumGuard)) throw GuardBreach("1+n", min_rho, kVacuumGuard);
  const double min_det = determinant(TensorField::identity(p.grid_ptr()) + p.E).min_value();
  if (!(min_det >= kVacuumGuard)) throw GuardBreach("det(I+E)", min_det, kVacuumGuard);
}

FlowState phys_to_pert(const PhysState& phys, const ModelParams& params) {
  const ScalarField rho = phys.rho.to_physical();
  const double min_rho = rho.min_value();
  if (!(min_rho > 0.0)) throw std::invalid_argument("phys_to_pert: density must be positive");
  const TensorField F = phys.F.to_physical();
  if (!(determinant(F).min_value() > 0.0)) {
    throw std::invalid_argument("phys_to_pert: det F must be positive");
  }
  FlowState s;
  s.n = rho - ScalarField::constant(rho.grid_ptr(), 1.0);
  s.v = params.chi0 * phys.u.to_physical();
  s.E = F - TensorField::identity(F.grid_ptr());
  s.time = phys.time / (params.chi0 * params.chi0);
  return s;
}

PhysState pert_to_phys(const FlowState& state, const ModelParams& params) {
  const FlowState p = state.to_physical();
  PhysState phys;
  phys.rho = p.n + ScalarField::constant(p.grid_ptr(), 1.0);
  phys.u = (1.0 / params.chi0) * p.v;
  phys.F = p.E + TensorField::identity(p.grid_ptr());
  phys.time = state.time * params.chi0 * params.chi0;
  return phys;
}

ScalarField pressure_coefficient(const ScalarField& n, const ModelParams& params) {
  ScalarField out = n.is_physical() ? n : n.to_physical();
  const double min_rho = 1.0 + out.min_value();
  if (!(min_rho >= kVacuumGuard)) throw GuardBreach("1+n", min_rho, kVacuumGuard);
  const PressureLaw& law = params.pressure;
  for (double& x : out.values()) {
    const double rho = 1.0 + x;
    x = law.derivative(rho) / (rho * params.p_prime_1) - 1.0;
  }
  return out;
}

}  // namespace cvflow::model
