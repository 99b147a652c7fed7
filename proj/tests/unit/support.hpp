#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "cvflow/model/state.hpp"
#include "cvflow/spectral/field.hpp"

namespace testsupport {

using namespace cvflow;
using spectral::Complex;
using spectral::GridPtr;
using spectral::ScalarField;
using spectral::TensorField;
using spectral::VectorField;

inline constexpr double kPi = std::numbers::pi;

/// Random real field with modes |k| <= kmax, no Nyquist content and, unless
/// `with_mean`, zero mean. Built in frequency space so it is exactly band limited.
inline ScalarField random_field(const GridPtr& grid, std::mt19937& rng, int kmax = 4,
                                bool with_mean = false, double amplitude = 1.0) {
  std::normal_distribution<double> nd(0.0, amplitude);
  const auto& g = *grid;
  std::vector<double> values(g.physical_size(), 0.0);
  const double base = 2.0 * kPi / g.length();
  // Superpose explicit cosines and sines so the result is real by construction.
  struct Term { int k[3]; double c, s; };
  std::vector<Term> terms;
  for (int a = -kmax; a <= kmax; ++a)
    for (int b = -kmax; b <= kmax; ++b)
      for (int c = 0; c <= kmax; ++c) {
        if (a * a + b * b + c * c > kmax * kmax) continue;
        if (c == 0 && (b < 0 || (b == 0 && a <= 0))) continue;  // one of each +-k pair, skip k = 0
        terms.push_back({{a, b, c}, nd(rng), nd(rng)});
      }
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j)
      for (int l = 0; l < g.n(); ++l) {
        const double x[3] = {g.coordinate(i), g.coordinate(j), g.coordinate(l)};
        double v = 0.0;
        for (const auto& t : terms) {
          const double ph = base * (t.k[0] * x[0] + t.k[1] * x[1] + t.k[2] * x[2]);
          v += t.c * std::cos(ph) + t.s * std::sin(ph);
        }
        values[g.physical_index(i, j, l)] = v;
      }
  if (with_mean) {
    const double m = nd(rng);
    for (double& v : values) v += m;
  }
  return ScalarField::from_values(grid, std::move(values));
}

inline VectorField random_vector(const GridPtr& grid, std::mt19937& rng, int kmax = 4,
                                 double amplitude = 1.0) {
  VectorField v;
  for (auto& c : v.comp) c = random_field(grid, rng, kmax, false, amplitude);
  return v;
}

inline TensorField random_tensor(const GridPtr& grid, std::mt19937& rng, int kmax = 4,
                                 double amplitude = 1.0) {
  TensorField t;
  for (auto& c : t.comp) c = random_field(grid, rng, kmax, false, amplitude);
  return t;
}

inline model::FlowState random_state(const GridPtr& grid, std::mt19937& rng, int kmax = 3,
                                     double amplitude = 1.0) {
  model::FlowState s;
  s.n = random_field(grid, rng, kmax, false, amplitude);
  s.v = random_vector(grid, rng, kmax, amplitude);
  s.E = random_tensor(grid, rng, kmax, amplitude);
  return s.to_frequency();
}

inline ScalarField sine(const GridPtr& grid, int axis, double amplitude = 1.0, int k = 1) {
  return ScalarField::from_function(grid, [=](double x, double y, double z) {
    const double c[3] = {x, y, z};
    return amplitude * std::sin(k * c[axis] * 2.0 * kPi / grid->length());
  });
}

inline ScalarField cosine(const GridPtr& grid, int axis, double amplitude = 1.0, int k = 1) {
  return ScalarField::from_function(grid, [=](double x, double y, double z) {
    const double c[3] = {x, y, z};
    return amplitude * std::cos(k * c[axis] * 2.0 * kPi / grid->length());
  });
}

/// max |a - b| over physical samples.
inline double max_diff(const ScalarField& a, const ScalarField& b) {
  const ScalarField pa = a.to_physical();
  const ScalarField pb = b.to_physical();
  double m = 0.0;
  for (std::size_t i = 0; i < pa.values().size(); ++i) m = std::max(m, std::abs(pa.values()[i] - pb.values()[i]));
  return m;
}

template <class T>
double max_diff_tuple(const T& a, const T& b) {
  double m = 0.0;
  for (std::size_t c = 0; c < T::size; ++c) m = std::max(m, max_diff(a.comp[c], b.comp[c]));
  return m;
}

inline double max_diff_state(const model::FlowState& a, const model::FlowState& b) {
  return std::max({max_diff(a.n, b.n), max_diff_tuple(a.v, b.v), max_diff_tuple(a.E, b.E)});
}

}  // namespace testsupport
