#include <doctest.h>

#include "cvflow/initial/initial_data.hpp"
#include "cvflow/nonlinear/sources.hpp"
#include "cvflow/spectral/operators.hpp"
#include "support.hpp"

using namespace testsupport;
namespace sp = cvflow::spectral;
using cvflow::nonlinear::SourceOptions;
using cvflow::nonlinear::evaluate_sources;

namespace {

GridPtr box(int n = 16) { return sp::Grid::create(n, 2 * kPi); }

double l2(const ScalarField& f) { return sp::sobolev_norm(f, 0); }
double l2(const VectorField& f) { return sp::sobolev_norm(f, 0); }
double l2(const TensorField& f) { return sp::sobolev_norm(f, 0); }

model::FlowState piola(double delta, int n = 32) {
  return initial::piola_state(initial::builtin_spec("mix", delta), box(n), model::make_params(1, 0, 1, 2));
}

/// v_t from the momentum equation, evaluated without truncation.
VectorField velocity_rate(const model::FlowState& s, const model::ModelParams& p, const VectorField& g) {
  VectorField out;
  const auto div_v = sp::divergence(s.v);
  const auto div_e = sp::tensor_divergence(s.E);
  for (int i = 0; i < 3; ++i) {
    out[i] = p.mu * sp::laplacian(s.v[i]) + (p.lambda + p.mu) * sp::derivative(div_v, i) -
             sp::derivative(s.n, i) + p.a * div_e[i] + g[i];
  }
  return out;
}

}  // namespace

TEST_SUITE("nonlinear") {

TEST_CASE("zero state has zero sources") {
  const auto s = evaluate_sources(model::FlowState::zeros(box(8)), model::make_params(1, 0, 1, 2),
                                  SourceOptions{true, true});
  CHECK(s.f.to_physical().max_abs() == 0.0);
  for (const auto& c : s.g.comp) CHECK(c.to_physical().max_abs() == 0.0);
  for (const auto& c : s.h.comp) CHECK(c.to_physical().max_abs() == 0.0);
  for (const auto& c : s.S.comp) CHECK(c.to_physical().max_abs() == 0.0);
}

TEST_CASE("f = -n div v with a constant density offset") {
  const auto g = box(16);
  auto s = model::FlowState::zeros(g);
  s.n = ScalarField::constant(g, 0.1).to_frequency();
  s.v[0] = sine(g, 0).to_frequency();
  const auto src = evaluate_sources(s, model::make_params(1, 0, 1, 2));
  CHECK(max_diff(src.f, -0.1 * cosine(g, 0)) < 1e-14);
}

TEST_CASE("E = 0 removes h and the elastic parts") {
  const auto g = box(16);
  std::mt19937 rng(8);
  auto s = model::FlowState::zeros(g);
  s.n = random_field(g, rng, 3, false, 0.004).to_frequency();
  s.v = random_vector(g, rng, 3, 0.05).to_frequency();
  const auto src = evaluate_sources(s, model::make_params(1, 0, 1, 2), SourceOptions{true, true});
  for (const auto& c : src.h.comp) CHECK(c.to_physical().max_abs() == 0.0);
  for (const auto& c : src.g_elastic.comp) CHECK(c.to_physical().max_abs() == 0.0);
  for (const auto& c : src.S.comp) CHECK(c.to_physical().max_abs() == 0.0);
  CHECK(l2(src.g_viscous) > 0.0);
}

TEST_CASE("sources agree with a direct product evaluation") {
  const auto g = box(16);
  std::mt19937 rng(12);
  const auto s = random_state(g, rng, 3, 0.004);
  const auto params = model::make_params(0.8, 0.3, 1.7, 3.0);
  const auto src = evaluate_sources(s, params, SourceOptions{false, false});

  const auto grad_v = sp::vector_gradient(s.v);
  const auto div_v = sp::divergence(s.v);
  const auto n = s.n.to_physical();
  CHECK(max_diff(src.f, -1.0 * sp::multiply(n, div_v.to_physical())) < 1e-13);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      ScalarField h = ScalarField::zeros(g, sp::Representation::physical);
      for (int k = 0; k < 3; ++k) h += sp::multiply(grad_v(i, k).to_physical(), s.E(k, j).to_physical());
      CHECK(max_diff(src.h(i, j), h) < 1e-13);
    }
    // g_pressure for gamma = 3 is -n d_i n.
    CHECK(max_diff(src.g_pressure[i], -1.0 * sp::multiply(n, sp::derivative(s.n, i).to_physical())) < 1e-13);
    ScalarField el = ScalarField::zeros(g, sp::Representation::physical);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        el += sp::multiply(s.E(j, k).to_physical(), sp::derivative(s.E(i, k), j).to_physical());
    CHECK(max_diff(src.g_elastic[i], params.a * el) < 1e-13);
  }
}

TEST_CASE("changing gamma changes g only") {
  const auto g = box(16);
  std::mt19937 rng(14);
  const auto s = random_state(g, rng, 3, 0.004);
  const auto a = evaluate_sources(s, model::make_params(1, 0, 1, 2));
  const auto b = evaluate_sources(s, model::make_params(1, 0, 1, 3));
  CHECK(max_diff(a.f, b.f) == 0.0);
  CHECK(max_diff_tuple(a.h, b.h) == 0.0);
  CHECK(l2(a.g_pressure) == 0.0);
  CHECK(max_diff_tuple(a.g, b.g) > 1e-6);
}

TEST_CASE("dealiasing leaves resolved products untouched") {
  const auto g = box(24);  // products of |k| <= 3 fields stay inside |k| <= 8
  std::mt19937 rng(15);
  const auto s = random_state(g, rng, 3, 0.004);
  const auto params = model::make_params(1, 0, 1, 3);
  const auto on = evaluate_sources(s, params, SourceOptions{true, false});
  const auto off = evaluate_sources(s, params, SourceOptions{false, false});
  CHECK(max_diff(on.f, off.f) < 1e-14);
  CHECK(max_diff_tuple(on.h, off.h) < 1e-14);
  CHECK(max_diff_tuple(on.g_elastic, off.g_elastic) < 1e-14);
}

TEST_CASE("S is exactly antisymmetric") {
  const auto g = box(16);
  std::mt19937 rng(16);
  const auto s = random_state(g, rng, 3, 0.008);
  const auto src = evaluate_sources(s, model::make_params(1, 0, 1, 2), SourceOptions{true, true});
  REQUIRE(src.has_derived);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const auto a = src.S(i, j).coefficients();
      const auto b = src.S(j, i).coefficients();
      for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == -b[k]);
    }
  }
  CHECK(l2(src.S) > 0.0);
}

TEST_CASE("residual example: F = I + eps sin x1 e1 e1") {
  const auto g = box(16);
  const double eps = 0.01;
  model::PhysState p{ScalarField::constant(g, 1.0), VectorField::zeros(g, sp::Representation::physical),
                     TensorField::identity(g), 0.0};
  p.F(0, 0) = ScalarField::constant(g, 1.0) + eps * sine(g, 0);
  const auto r = nonlinear::constraint_residuals(p);
  const double expect = eps * std::pow(2 * kPi, 1.5) / std::sqrt(2.0);
  CHECK(expect == doctest::Approx(0.111367).epsilon(1e-5));
  CHECK(r.r1 == doctest::Approx(expect).epsilon(1e-12));
  CHECK(r.r2 < 1e-15);
  CHECK(r.r3 == doctest::Approx(expect).epsilon(1e-12));

  model::PhysState eq{ScalarField::constant(g, 1.0), VectorField::zeros(g, sp::Representation::physical),
                      TensorField::identity(g), 0.0};
  const auto z = nonlinear::constraint_residuals(eq);
  CHECK(z.r1 == 0.0);
  CHECK(z.r2 == 0.0);
  CHECK(z.r3 == 0.0);
}

TEST_CASE("r3 is bounded by the top wavenumber times r1") {
  const auto g = box(16);
  std::mt19937 rng(17);
  for (int trial = 0; trial < 3; ++trial) {
    const auto s = random_state(g, rng, 4, 0.004);
    const auto r = nonlinear::constraint_residuals(s);
    CHECK(r.r3 <= g->max_axis_wavenumber() * std::sqrt(3.0) * r.r1 * (1 + 1e-12));
    CHECK(r.r2 > 0.0);
  }
}

TEST_CASE("Piola data satisfies both constraint families") {
  for (double delta : {1e-3, 0.05}) {
    const auto r = nonlinear::constraint_residuals(piola(delta));
    CHECK(r.r1 <= 1e-10);
    CHECK(r.r2 <= 1e-10);
    CHECK(r.r3 <= 1e-10);
  }
}

TEST_CASE("g1 closes the divergence equation on admissible data") {
  const auto s = piola(0.05);
  const auto params = model::make_params(1, 0, 1, 2);
  const auto src = evaluate_sources(s, params, SourceOptions{false, true});
  const auto vt = velocity_rate(s, params, src.g);
  const double nu = params.compressible_viscosity();
  const auto div_v = sp::divergence(s.v);
  const ScalarField lhs = sp::divergence(vt) - nu * sp::laplacian(div_v) + (1.0 + params.a) * sp::laplacian(s.n);
  const ScalarField rhs = sp::divergence(src.g1);
  CHECK(l2(lhs - rhs) <= 1e-9 * l2(rhs));
  // Without the n E correction the identity fails at second order.
  CHECK(l2(lhs - sp::divergence(src.g)) > 1e-4 * l2(rhs));
}

TEST_CASE("S closes the curl equation on admissible data") {
  const auto s = piola(0.05);
  const auto params = model::make_params(1, 0, 1, 2);
  const auto src = evaluate_sources(s, params, SourceOptions{false, true});
  const auto vt = velocity_rate(s, params, src.g);
  const auto W = sp::curl_matrix(s.v);
  const auto anti = s.E.antisymmetric_part();
  const auto curl_vt = sp::curl_matrix(vt);
  const auto curl_g = sp::curl_matrix(src.g);
  double worst = 0.0, scale = 0.0;
  for (int c = 0; c < 9; ++c) {
    const ScalarField lhs = curl_vt.comp[c] - params.mu * sp::laplacian(W.comp[c]) +
                            params.a * sp::laplacian(anti.comp[c]);
    const ScalarField rhs = curl_g.comp[c] + params.a * src.S.comp[c];
    worst = std::max(worst, l2(lhs - rhs));
    scale = std::max(scale, l2(src.S.comp[c]));
  }
  CHECK(scale > 1e-6);
  CHECK(worst <= 1e-9 * scale);
}

TEST_CASE("sources are quadratic in the amplitude") {
  const auto g = box(16);
  std::mt19937 rng(18);
  const auto base = random_state(g, rng, 3, 0.002);
  const auto params = model::make_params(1, 0, 1, 3);
  auto norms = [&](double theta) {
    const auto s = evaluate_sources(theta * base, params);
    return std::array<double, 5>{l2(s.f), l2(s.h), l2(s.g_elastic), l2(s.g_viscous), l2(s.g_pressure)};
  };
  const auto n1 = norms(1.0), n2 = norms(0.5), n4 = norms(0.25);
  for (int q = 0; q < 5; ++q) {
    CHECK(n1[q] / n2[q] >= 3.0);
    CHECK(n1[q] / n2[q] <= 5.0);
    CHECK(n2[q] / n4[q] >= 3.0);
    CHECK(n2[q] / n4[q] <= 5.0);
  }
}

TEST_CASE("nonlinear term collects sources and advection") {
  const auto g = box(16);
  std::mt19937 rng(19);
  auto s = random_state(g, rng, 3, 0.004);
  s.time = 2.5;
  const auto params = model::make_params(1, 0, 1, 2);
  const auto G = nonlinear::nonlinear_term(s, params);
  const auto src = evaluate_sources(s, params);
  CHECK(G.time == 2.5);
  CHECK(max_diff(G.n, src.f - src.advect_n) < 1e-15);
  CHECK(max_diff_tuple(G.E, src.h - src.advect_E) < 1e-15);
  CHECK(max_diff_tuple(G.v, src.g) == 0.0);
  // Mass is conserved: f - v.grad n = -div(n v) has zero mean.
  CHECK(std::abs(G.n.coefficients()[0]) < 1e-17);
}

TEST_CASE("near-vacuum states abort") {
  const auto g = box(8);
  auto s = model::FlowState::zeros(g);
  s.n = (-0.7 * ScalarField::constant(g, 1.0)).to_frequency();
  CHECK_THROWS_AS(evaluate_sources(s, model::make_params(1, 0, 1, 2)), model::GuardBreach);
}

}  // TEST_SUITE
