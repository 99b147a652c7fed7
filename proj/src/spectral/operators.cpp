#include "cvflow/spectral/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace cvflow::spectral {

namespace {

ScalarField as_frequency(const ScalarField& f) {
  return f.is_frequency() ? f : f.to_frequency();
}

template <class PerMode>
ScalarField map_modes(const ScalarField& field, PerMode&& per_mode) {
  ScalarField out = as_frequency(field);
  const Grid& g = out.grid();
  auto c = out.coefficients();
  const int n = g.n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < g.half_n(); ++l) {
        const std::size_t s = g.spectral_index(i, j, l);
        c[s] = per_mode(i, j, l, s, c[s]);
      }
    }
  }
  return out;
}

template <class Fn>
double weighted_mode_sum(const Grid& g, Fn&& fn) {
  double total = 0.0;
  const int n = g.n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < g.half_n(); ++l) {
        total += g.hermitian_weight(l) * fn(i, j, l, g.spectral_index(i, j, l));
      }
    }
  }
  return total;
}

void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (!a.grid().same_as(b.grid())) throw std::invalid_argument("inner product: grid mismatch");
}

}  // namespace

ScalarField apply_multiplier(const ScalarField& field, const Symbol& symbol, bool zero_nyquist) {
  const Grid& g = field.grid();
  return map_modes(field, [&](int i, int j, int l, std::size_t s, Complex c) {
    if (zero_nyquist && g.nyquist_mask()[s]) return Complex{};
    return symbol(g.wavevector(i, j, l)) * c;
  });
}

ScalarField derivative(const ScalarField& field, int axis) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("derivative: axis out of range");
  const Grid& g = field.grid();
  return map_modes(field, [&](int i, int j, int l, std::size_t s, Complex c) {
    if (g.nyquist_mask()[s]) return Complex{};
    const double xi = g.wavevector(i, j, l)[axis];
    return Complex(-xi * c.imag(), xi * c.real());
  });
}

ScalarField laplacian(const ScalarField& field) {
  const Grid& g = field.grid();
  const auto& xi2 = g.xi_squared();
  return map_modes(field, [&](int, int, int, std::size_t s, Complex c) {
    if (g.nyquist_mask()[s]) return Complex{};
    return -xi2[s] * c;
  });
}

ScalarField lambda_power(const ScalarField& field, double s_exp) {
  const Grid& g = field.grid();
  const auto& xi2 = g.xi_squared();
  return map_modes(field, [&](int, int, int, std::size_t s, Complex c) {
    if (s == 0 || g.nyquist_mask()[s]) return Complex{};
    return std::pow(xi2[s], 0.5 * s_exp) * c;
  });
}

VectorField gradient(const ScalarField& field) {
  const ScalarField f = as_frequency(field);
  VectorField v;
  for (int i = 0; i < 3; ++i) v[i] = derivative(f, i);
  return v;
}

ScalarField divergence(const VectorField& v) {
  ScalarField d = derivative(v[0], 0);
  d += derivative(v[1], 1);
  d += derivative(v[2], 2);
  return d;
}

TensorField vector_gradient(const VectorField& v) {
  TensorField t;
  for (int i = 0; i < 3; ++i) {
    const ScalarField vi = as_frequency(v[i]);
    for (int j = 0; j < 3; ++j) t(i, j) = derivative(vi, j);
  }
  return t;
}

VectorField tensor_divergence(const TensorField& t) {
  VectorField v;
  for (int i = 0; i < 3; ++i) {
    v[i] = derivative(t(i, 0), 0);
    v[i] += derivative(t(i, 1), 1);
    v[i] += derivative(t(i, 2), 2);
  }
  return v;
}

TensorField curl_matrix(const VectorField& v) {
  const TensorField grad = vector_gradient(v);
  TensorField w;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) w(i, j) = grad(i, j) - grad(j, i);
  }
  return w;
}

VectorField curl_contract(const TensorField& w) {
  VectorField v;
  for (int i = 0; i < 3; ++i) {
    v[i] = derivative(w(0, i), 0);
    v[i] += derivative(w(1, i), 1);
    v[i] += derivative(w(2, i), 2);
  }
  return v;
}

ScalarField dealias(const ScalarField& field) {
  const Grid& g = field.grid();
  return map_modes(field, [&](int, int, int, std::size_t s, Complex c) {
    return g.dealias_mask()[s] ? c : Complex{};
  });
}

ScalarField remove_mean(const ScalarField& field, double* removed) {
  ScalarField out = as_frequency(field);
  if (removed != nullptr) *removed = out.coefficients()[0].real();
  out.coefficients()[0] = Complex{};
  return out;
}

double inner_product(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  const ScalarField fa = as_frequency(a);
  const ScalarField fb = as_frequency(b);
  const auto ca = fa.coefficients();
  const auto cb = fb.coefficients();
  const Grid& g = fa.grid();
  const double sum = weighted_mode_sum(g, [&](int, int, int, std::size_t s) {
    return ca[s].real() * cb[s].real() + ca[s].imag() * cb[s].imag();
  });
  return g.volume() * sum;
}

double inner_product(const VectorField& a, const VectorField& b) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += inner_product(a[i], b[i]);
  return s;
}

double inner_product(const TensorField& a, const TensorField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < 9; ++i) s += inner_product(a.comp[i], b.comp[i]);
  return s;
}

double gradient_norm_squared(const ScalarField& u, int order) {
  if (order < 0) throw std::invalid_argument("sobolev: negative order");
  const ScalarField f = as_frequency(u);
  const auto c = f.coefficients();
  const Grid& g = f.grid();
  const auto& xi2 = g.xi_squared();
  const double sum = weighted_mode_sum(g, [&](int, int, int, std::size_t s) {
    if (order > 0 && g.nyquist_mask()[s]) return 0.0;
    return std::pow(xi2[s], order) * std::norm(c[s]);
  });
  return g.volume() * sum;
}

double sobolev_norm_squared(const ScalarField& u, int order) {
  if (order < 0) throw std::invalid_argument("sobolev: negative order");
  const ScalarField f = as_frequency(u);
  const auto c = f.coefficients();
  const Grid& g = f.grid();
  const auto& xi2 = g.xi_squared();
  const double sum = weighted_mode_sum(g, [&](int, int, int, std::size_t s) {
    double poly = 1.0;
    if (!g.nyquist_mask()[s]) {
      double p = 1.0;
      for (int j = 1; j <= order; ++j) {
        p *= xi2[s];
        poly += p;
      }
    }
    return poly * std::norm(c[s]);
  });
  return g.volume() * sum;
}

double sobolev_norm(const ScalarField& u, int order) { return std::sqrt(sobolev_norm_squared(u, order)); }

double sobolev_norm(const VectorField& u, int order) {
  double s = 0.0;
  for (const auto& c : u.comp) s += sobolev_norm_squared(c, order);
  return std::sqrt(s);
}

double sobolev_norm(const TensorField& u, int order) {
  double s = 0.0;
  for (const auto& c : u.comp) s += sobolev_norm_squared(c, order);
  return std::sqrt(s);
}

}  // namespace cvflow::spectral
