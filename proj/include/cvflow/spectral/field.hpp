#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cvflow/spectral/grid.hpp"

namespace cvflow::spectral {

enum class Representation : std::uint8_t { physical = 0, frequency = 1 };

/// Real scalar grid function held either as physical samples or as the
/// Hermitian half spectrum. Forward coefficients carry the 1/N^3 factor, so
/// the zero mode is the mean:
///   u_hat(xi) = N^-3 sum_x u(x) exp(-i xi.x),   u(x) = sum_xi u_hat(xi) exp(i xi.x).
class ScalarField {
 public:
  ScalarField() = default;

  static ScalarField zeros(GridPtr grid, Representation rep);
  static ScalarField constant(GridPtr grid, double value);
  static ScalarField from_function(GridPtr grid,
                                   const std::function<double(double, double, double)>& fn);
  static ScalarField from_values(GridPtr grid, std::vector<double> values);
  static ScalarField from_coefficients(GridPtr grid, std::vector<Complex> coefficients);

  const GridPtr& grid_ptr() const { return grid_; }
  const Grid& grid() const { return *grid_; }
  bool empty() const { return grid_ == nullptr; }
  Representation representation() const { return rep_; }
  bool is_physical() const { return rep_ == Representation::physical; }
  bool is_frequency() const { return rep_ == Representation::frequency; }

  std::span<const double> values() const;
  std::span<double> values();
  std::span<const Complex> coefficients() const;
  std::span<Complex> coefficients();

  ScalarField to_frequency() const;
  ScalarField to_physical() const;

  double mean() const;
  double max_abs() const;
  double min_value() const;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double s);

 private:
  ScalarField(GridPtr grid, Representation rep);
  void require_compatible(const ScalarField& other) const;

  GridPtr grid_;
  Representation rep_ = Representation::physical;
  std::vector<double> real_;
  std::vector<Complex> spec_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

/// Pointwise product of two physical fields.
ScalarField multiply(const ScalarField& a, const ScalarField& b);

/// Converts to the requested representation; rejects non-finite data.
ScalarField transform(const ScalarField& field, Representation target);

/// Fixed-size bundle of scalar components sharing one grid.
template <class Derived, std::size_t K>
class FieldTuple {
 public:
  static constexpr std::size_t size = K;

  static Derived zeros(GridPtr grid, Representation rep) {
    Derived d;
    for (auto& c : d.comp) c = ScalarField::zeros(grid, rep);
    return d;
  }

  Derived to_frequency() const {
    Derived d;
    for (std::size_t i = 0; i < K; ++i) d.comp[i] = comp[i].to_frequency();
    return d;
  }
  Derived to_physical() const {
    Derived d;
    for (std::size_t i = 0; i < K; ++i) d.comp[i] = comp[i].to_physical();
    return d;
  }

  Derived& operator+=(const Derived& o) {
    for (std::size_t i = 0; i < K; ++i) comp[i] += o.comp[i];
    return self();
  }
  Derived& operator-=(const Derived& o) {
    for (std::size_t i = 0; i < K; ++i) comp[i] -= o.comp[i];
    return self();
  }
  Derived& operator*=(double s) {
    for (auto& c : comp) c *= s;
    return self();
  }
  friend Derived operator+(Derived a, const Derived& b) { return a += b; }
  friend Derived operator-(Derived a, const Derived& b) { return a -= b; }
  friend Derived operator*(double s, Derived a) { return a *= s; }

  const GridPtr& grid_ptr() const { return comp[0].grid_ptr(); }
  const Grid& grid() const { return comp[0].grid(); }
  bool is_frequency() const { return comp[0].is_frequency(); }

  std::array<ScalarField, K> comp;

 private:
  Derived& self() { return static_cast<Derived&>(*this); }
};

class VectorField : public FieldTuple<VectorField, 3> {
 public:
  ScalarField& operator[](int i) { return comp[i]; }
  const ScalarField& operator[](int i) const { return comp[i]; }
};

/// 3x3 tensor field; component (i, j) is stored at 3 * i + j.
class TensorField : public FieldTuple<TensorField, 9> {
 public:
  static TensorField identity(GridPtr grid);

  ScalarField& operator()(int i, int j) { return comp[3 * i + j]; }
  const ScalarField& operator()(int i, int j) const { return comp[3 * i + j]; }

  TensorField transpose() const;
  /// Returns T^T - T (no factor 1/2), which is exactly antisymmetric.
  TensorField antisymmetric_part() const;
  /// Largest |T + T^T| entry, zero for an exactly antisymmetric field.
  double symmetric_defect() const;
};

}  // namespace cvflow::spectral
