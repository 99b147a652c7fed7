#pragma once

#include <array>
#include <complex>
#include <string>

#include "cvflow/model/params.hpp"

namespace cvflow::linear {

using Complex = std::complex<double>;

enum class BlockKind { compressible, shear };

/// Per-frequency 2x2 system dX/dt = A(r) X with
///   A(r) = [[0, -r], [b r, -nu r^2]].
/// Compressible pair (n, d): nu = 2 mu + lambda, b = 1 + a.
/// Shear pair (E^T - E, omega): nu = mu, b = a.
struct BlockSystem {
  double nu = 2.0;
  double b = 2.0;
  BlockKind kind = BlockKind::compressible;

  static BlockSystem make(double nu, double b, BlockKind kind);
  static BlockSystem compressible(const model::ModelParams& params);
  static BlockSystem shear(const model::ModelParams& params);

  /// Radius where the eigenvalues coalesce, 2 sqrt(b) / nu.
  double confluent_radius() const;
  std::string name() const;
};

struct EigenPair {
  Complex plus;
  Complex minus;
};

/// Roots of kappa^2 + nu r^2 kappa + b r^2 = 0. In the real regime the
/// smaller-magnitude root is recovered from the product b r^2 to avoid
/// cancellation.
EigenPair eigenvalues(const BlockSystem& sys, double r);

struct Propagator2x2 {
  std::array<std::array<Complex, 2>, 2> m{};

  static Propagator2x2 identity();

  Complex& operator()(int i, int j) { return m[i][j]; }
  const Complex& operator()(int i, int j) const { return m[i][j]; }

  Propagator2x2 operator*(const Propagator2x2& o) const;
  std::array<Complex, 2> apply(Complex x, Complex y) const;
  Complex determinant() const;
  double max_abs_diff(const Propagator2x2& o) const;
  /// Largest imaginary part of any entry (round-off only for real systems).
  double max_imag() const;
};

/// Gap test for the two-term formula: |k+ - k-| < 1e-6 (|k+| + |k-| + 1).
bool is_confluent(const EigenPair& k);

/// exp(t A(r)). Away from confluence this is the two-term spectral formula
///   e^{k+ t}(A - k- I)/(k+ - k-) + e^{k- t}(A - k+ I)/(k- - k+);
/// at confluence, the expansion about the mean eigenvalue m,
///   e^{m t}[(1 + q t^2/2) I + t (1 + q t^2/6)(A - m I)],  q = ((k+ - k-)/2)^2,
/// which reduces to e^{m t}(I + t(A - m I)) at the coalescence point.
Propagator2x2 propagator(const BlockSystem& sys, double r, double t);

/// int_0^t exp(s A(r)) ds in closed form, with the same confluence guard.
Propagator2x2 propagator_integral(const BlockSystem& sys, double r, double t);

/// A(r) as a Propagator2x2-shaped matrix.
Propagator2x2 generator(const BlockSystem& sys, double r);

}  // namespace cvflow::linear
