#include "cvflow/spectral/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cvflow::spectral {

ScalarField::ScalarField(GridPtr grid, Representation rep) : grid_(std::move(grid)), rep_(rep) {
  if (!grid_) throw std::invalid_argument("field: null grid");
  if (rep_ == Representation::physical) {
    real_.assign(grid_->physical_size(), 0.0);
  } else {
    spec_.assign(grid_->spectral_size(), Complex{});
  }
}

ScalarField ScalarField::zeros(GridPtr grid, Representation rep) {
  return ScalarField(std::move(grid), rep);
}

ScalarField ScalarField::constant(GridPtr grid, double value) {
  ScalarField f(std::move(grid), Representation::physical);
  std::fill(f.real_.begin(), f.real_.end(), value);
  return f;
}

ScalarField ScalarField::from_function(GridPtr grid,
                                       const std::function<double(double, double, double)>& fn) {
  ScalarField f(grid, Representation::physical);
  const int n = grid->n();
  for (int i = 0; i < n; ++i) {
    const double x = grid->coordinate(i);
    for (int j = 0; j < n; ++j) {
      const double y = grid->coordinate(j);
      for (int l = 0; l < n; ++l) {
        f.real_[grid->physical_index(i, j, l)] = fn(x, y, grid->coordinate(l));
      }
    }
  }
  return f;
}

ScalarField ScalarField::from_values(GridPtr grid, std::vector<double> values) {
  if (values.size() != grid->physical_size()) {
    throw std::invalid_argument("field: physical value count does not match grid");
  }
  ScalarField f;
  f.grid_ = std::move(grid);
  f.rep_ = Representation::physical;
  f.real_ = std::move(values);
  return f;
}

ScalarField ScalarField::from_coefficients(GridPtr grid, std::vector<Complex> coefficients) {
  if (coefficients.size() != grid->spectral_size()) {
    throw std::invalid_argument("field: coefficient count does not match grid");
  }
  ScalarField f;
  f.grid_ = std::move(grid);
  f.rep_ = Representation::frequency;
  f.spec_ = std::move(coefficients);
  return f;
}

std::span<const double> ScalarField::values() const {
  if (rep_ != Representation::physical) throw std::logic_error("field: not in physical representation");
  return real_;
}

std::span<double> ScalarField::values() {
  if (rep_ != Representation::physical) throw std::logic_error("field: not in physical representation");
  return real_;
}

std::span<const Complex> ScalarField::coefficients() const {
  if (rep_ != Representation::frequency) throw std::logic_error("field: not in frequency representation");
  return spec_;
}

std::span<Complex> ScalarField::coefficients() {
  if (rep_ != Representation::frequency) throw std::logic_error("field: not in frequency representation");
  return spec_;
}

ScalarField ScalarField::to_frequency() const { return transform(*this, Representation::frequency); }

ScalarField ScalarField::to_physical() const { return transform(*this, Representation::physical); }

double ScalarField::mean() const {
  if (rep_ == Representation::frequency) return spec_[0].real();
  double s = 0.0;
  for (double v : real_) s += v;
  return s / static_cast<double>(real_.size());
}

double ScalarField::max_abs() const {
  const ScalarField p = is_physical() ? *this : to_physical();
  double m = 0.0;
  for (double v : p.real_) m = std::max(m, std::abs(v));
  return m;
}

double ScalarField::min_value() const {
  const ScalarField p = is_physical() ? *this : to_physical();
  double m = std::numeric_limits<double>::infinity();
  for (double v : p.real_) m = std::min(m, v);
  return m;
}

void ScalarField::require_compatible(const ScalarField& other) const {
  if (!grid_ || !other.grid_ || !grid_->same_as(*other.grid_)) {
    throw std::invalid_argument("field: grid mismatch");
  }
  if (rep_ != other.rep_) throw std::invalid_argument("field: representation mismatch");
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_compatible(other);
  if (is_physical()) {
    for (std::size_t i = 0; i < real_.size(); ++i) real_[i] += other.real_[i];
  } else {
    for (std::size_t i = 0; i < spec_.size(); ++i) spec_[i] += other.spec_[i];
  }
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_compatible(other);
  if (is_physical()) {
    for (std::size_t i = 0; i < real_.size(); ++i) real_[i] -= other.real_[i];
  } else {
    for (std::size_t i = 0; i < spec_.size(); ++i) spec_[i] -= other.spec_[i];
  }
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (auto& v : real_) v *= s;
  for (auto& v : spec_) v *= s;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

ScalarField multiply(const ScalarField& a, const ScalarField& b) {
  if (!a.is_physical() || !b.is_physical()) {
    throw std::invalid_argument("multiply: both fields must be physical");
  }
  if (!a.grid().same_as(b.grid())) throw std::invalid_argument("multiply: grid mismatch");
  std::vector<double> out(a.values().begin(), a.values().end());
  const auto bv = b.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= bv[i];
  return ScalarField::from_values(a.grid_ptr(), std::move(out));
}

ScalarField transform(const ScalarField& field, Representation target) {
  if (field.empty()) throw std::invalid_argument("transform: empty field");
  if (field.representation() == target) return field;
  const Grid& g = field.grid();
  if (target == Representation::frequency) {
    const auto in = field.values();
    for (std::size_t i = 0; i < in.size(); ++i) {
      if (!std::isfinite(in[i])) {
        throw std::domain_error("transform: non-finite physical value at flat index " +
                                std::to_string(i));
      }
    }
    std::vector<Complex> out(g.spectral_size());
    g.forward(in.data(), out.data());
    const double scale = 1.0 / static_cast<double>(g.physical_size());
    for (auto& c : out) c *= scale;
    return ScalarField::from_coefficients(field.grid_ptr(), std::move(out));
  }
  const auto in = field.coefficients();
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (!std::isfinite(in[i].real()) || !std::isfinite(in[i].imag())) {
      throw std::domain_error("transform: non-finite coefficient at flat index " +
                              std::to_string(i));
    }
  }
  std::vector<double> out(g.physical_size());
  g.backward(in.data(), out.data());
  return ScalarField::from_values(field.grid_ptr(), std::move(out));
}

TensorField TensorField::identity(GridPtr grid) {
  TensorField t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      t(i, j) = ScalarField::constant(grid, i == j ? 1.0 : 0.0);
    }
  }
  return t;
}

TensorField TensorField::transpose() const {
  TensorField t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
  }
  return t;
}

TensorField TensorField::antisymmetric_part() const {
  TensorField t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i) - (*this)(i, j);
  }
  return t;
}

double TensorField::symmetric_defect() const {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      const ScalarField s = (*this)(i, j) + (*this)(j, i);
      if (s.is_physical()) {
        worst = std::max(worst, s.max_abs());
      } else {
        for (const Complex& c : s.coefficients()) worst = std::max(worst, std::abs(c));
      }
    }
  }
  return worst;
}

}  // namespace cvflow::spectral
