#include "cvflow/linear/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cvflow::linear {

namespace {

// (e^{z} - 1) / z * t with z = kappa t, i.e. int_0^t e^{kappa s} ds.
Complex phi1(Complex kappa, double t) {
  const Complex z = kappa * t;
  if (std::abs(z) < 1e-3) {
    return t * (1.0 + z * (1.0 / 2.0 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0))));
  }
  return (std::exp(z) - 1.0) / kappa;
}

// int_0^t s^k e^{m s} ds for k = 0..3 and real m.
std::array<double, 4> power_moments(double m, double t) {
  std::array<double, 4> out{};
  const double z = m * t;
  if (std::abs(z) < 2.0) {
    // sum_n m^n t^{n+k+1} / (n! (n+k+1))
    for (int k = 0; k < 4; ++k) {
      double term = std::pow(t, k + 1);  // m^n t^{n+k+1} / n!
      double sum = 0.0;
      for (int n = 0; n < 40; ++n) {
        sum += term / (n + k + 1);
        term *= z / (n + 1);
      }
      out[k] = sum;
    }
    return out;
  }
  const double e = std::exp(z);
  out[0] = std::expm1(z) / m;
  for (int k = 1; k < 4; ++k) out[k] = (std::pow(t, k) * e - k * out[k - 1]) / m;
  return out;
}

}  // namespace

BlockSystem BlockSystem::make(double nu, double b, BlockKind kind) {
  if (!(nu > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("block system: requires nu > 0 and b > 0");
  }
  return BlockSystem{nu, b, kind};
}

BlockSystem BlockSystem::compressible(const model::ModelParams& params) {
  return make(params.compressible_viscosity(), 1.0 + params.a, BlockKind::compressible);
}

BlockSystem BlockSystem::shear(const model::ModelParams& params) {
  return make(params.mu, params.a, BlockKind::shear);
}

double BlockSystem::confluent_radius() const { return 2.0 * std::sqrt(b) / nu; }

std::string BlockSystem::name() const {
  return kind == BlockKind::compressible ? "compressible" : "shear";
}

EigenPair eigenvalues(const BlockSystem& sys, double r) {
  if (r == 0.0) return {Complex{}, Complex{}};
  const double r2 = r * r;
  const double mean = -0.5 * sys.nu * r2;
  const double disc = r2 * (0.25 * sys.nu * sys.nu * r2 - sys.b);
  if (disc >= 0.0) {
    const double minus = mean - std::sqrt(disc);
    return {Complex(sys.b * r2 / minus, 0.0), Complex(minus, 0.0)};
  }
  const double s = std::sqrt(-disc);
  return {Complex(mean, s), Complex(mean, -s)};
}

Propagator2x2 Propagator2x2::identity() {
  Propagator2x2 p;
  p.m[0][0] = 1.0;
  p.m[1][1] = 1.0;
  return p;
}

Propagator2x2 Propagator2x2::operator*(const Propagator2x2& o) const {
  Propagator2x2 r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
  }
  return r;
}

std::array<Complex, 2> Propagator2x2::apply(Complex x, Complex y) const {
  return {m[0][0] * x + m[0][1] * y, m[1][0] * x + m[1][1] * y};
}

Complex Propagator2x2::determinant() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

double Propagator2x2::max_abs_diff(const Propagator2x2& o) const {
  double d = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) d = std::max(d, std::abs(m[i][j] - o.m[i][j]));
  }
  return d;
}

double Propagator2x2::max_imag() const {
  double d = 0.0;
  for (const auto& row : m) {
    for (const auto& z : row) d = std::max(d, std::abs(z.imag()));
  }
  return d;
}

Propagator2x2 generator(const BlockSystem& sys, double r) {
  Propagator2x2 a;
  a.m[0][0] = 0.0;
  a.m[0][1] = -r;
  a.m[1][0] = sys.b * r;
  a.m[1][1] = -sys.nu * r * r;
  return a;
}

bool is_confluent(const EigenPair& k) {
  return std::abs(k.plus - k.minus) < 1e-6 * (std::abs(k.plus) + std::abs(k.minus) + 1.0);
}

Propagator2x2 propagator(const BlockSystem& sys, double r, double t) {
  if (t < 0.0) throw std::invalid_argument("propagator: negative time");
  if (t == 0.0) return Propagator2x2::identity();
  const Propagator2x2 a = generator(sys, r);
  const EigenPair k = eigenvalues(sys, r);
  Propagator2x2 p;
  if (is_confluent(k)) {
    const double mean = -0.5 * sys.nu * r * r;
    const Complex half_gap = 0.5 * (k.plus - k.minus);
    const double q = (half_gap * half_gap).real();
    const double e = std::exp(mean * t);
    const double c0 = e * (1.0 + q * t * t / 2.0);
    const double c1 = e * t * (1.0 + q * t * t / 6.0);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const Complex shifted = a.m[i][j] - (i == j ? mean : 0.0);
        p.m[i][j] = (i == j ? c0 : 0.0) + c1 * shifted;
      }
    }
    return p;
  }
  const Complex ep = std::exp(k.plus * t);
  const Complex em = std::exp(k.minus * t);
  const Complex gap = k.plus - k.minus;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Complex diag = (i == j) ? 1.0 : 0.0;
      p.m[i][j] = (ep * (a.m[i][j] - k.minus * diag) - em * (a.m[i][j] - k.plus * diag)) / gap;
    }
  }
  return p;
}

Propagator2x2 propagator_integral(const BlockSystem& sys, double r, double t) {
  if (t < 0.0) throw std::invalid_argument("propagator_integral: negative time");
  Propagator2x2 q;
  if (t == 0.0) return q;
  const Propagator2x2 a = generator(sys, r);
  const EigenPair k = eigenvalues(sys, r);
  if (is_confluent(k)) {
    const double mean = -0.5 * sys.nu * r * r;
    const Complex half_gap = 0.5 * (k.plus - k.minus);
    const double g2 = (half_gap * half_gap).real();
    const auto mom = power_moments(mean, t);
    const double c0 = mom[0] + g2 * mom[2] / 2.0;
    const double c1 = mom[1] + g2 * mom[3] / 6.0;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const Complex shifted = a.m[i][j] - (i == j ? mean : 0.0);
        q.m[i][j] = (i == j ? c0 : 0.0) + c1 * shifted;
      }
    }
    return q;
  }
  const Complex fp = phi1(k.plus, t);
  const Complex fm = phi1(k.minus, t);
  const Complex gap = k.plus - k.minus;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Complex diag = (i == j) ? 1.0 : 0.0;
      q.m[i][j] = (fp * (a.m[i][j] - k.minus * diag) - fm * (a.m[i][j] - k.plus * diag)) / gap;
    }
  }
  return q;
}

}  // namespace cvflow::linear
