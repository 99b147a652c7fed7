#include <doctest.h>

#include "cvflow/diagnostics/diagnostics.hpp"
#include "cvflow/initial/initial_data.hpp"
#include "cvflow/nonlinear/sources.hpp"
#include "support.hpp"

using namespace testsupport;
namespace in = cvflow::initial;

namespace {

GridPtr box(int n) { return spectral::Grid::create(n, 2 * kPi); }

std::string parse_error(const std::string& text) {
  try {
    in::parse_mode_list(text);
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("initial") {

TEST_CASE("mode lists round trip through text") {
  const auto spec = in::builtin_spec("mix", 0.01);
  const auto back = in::parse_mode_list(in::format_mode_list(spec));
  CHECK(back.scale == spec.scale);
  REQUIRE(back.phi.size() == spec.phi.size());
  REQUIRE(back.u.size() == spec.u.size());
  for (std::size_t m = 0; m < spec.phi.size(); ++m) {
    CHECK(back.phi[m].k == spec.phi[m].k);
    CHECK(back.phi[m].amp == spec.phi[m].amp);
  }
  const auto parsed = in::parse_mode_list("# comment\n\nscale 0.5\nphi 1 0 0  0 0  0 -1  0 0  # trailing\n");
  CHECK(parsed.scale == 0.5);
  REQUIRE(parsed.phi.size() == 1);
  CHECK(parsed.phi[0].amp[1] == std::complex<double>(0, -1));
}

TEST_CASE("mode list errors carry the line number") {
  CHECK(parse_error("phi 1 0 0 0 0 0 0 0 0\nphi 1 0\n").find("line 2") != std::string::npos);
  CHECK(parse_error("u 1 0 0 1 0 0 0 0\n").find("line 1") != std::string::npos);
  CHECK(parse_error("\n\nwarp 1\n").find("line 3") != std::string::npos);
  CHECK(parse_error("scale abc\n").find("line 1") != std::string::npos);
  CHECK(parse_error("phi 1 0 0 0 0 0 0 0 0 7\n").find("trailing") != std::string::npos);
  CHECK_FALSE(parse_error("phi 1.5 0 0 0 0 0 0 0 0\n").empty());
  CHECK_THROWS_AS(in::builtin_spec("vortex", 1.0), std::invalid_argument);
}

TEST_CASE("zero displacement is the equilibrium") {
  const auto g = box(8);
  const auto data = in::piola_ic(in::builtin_spec("zero", 1.0), g);
  CHECK(max_diff(data.state.rho, ScalarField::constant(g, 1.0)) == 0.0);
  CHECK(max_diff_tuple(data.state.F, TensorField::identity(g)) == 0.0);
  CHECK(data.h2_norm == 0.0);
  const auto s = in::piola_state(in::builtin_spec("zero", 1.0), g, model::make_params(1, 0, 1, 2));
  CHECK(diagnostics::state_sobolev_norm(s, 2) == 0.0);
}

TEST_CASE("shear displacement has a closed form") {
  // phi = d sin x1 e2: A = I + d cos x1 e2 e1, det A = 1, F = I - d cos x1 e2 e1.
  const auto g = box(16);
  const double d = 0.3;
  const auto data = in::piola_ic(in::builtin_spec("shear", d), g);
  CHECK(max_diff(data.state.rho, ScalarField::constant(g, 1.0)) < 1e-15);
  auto F = TensorField::identity(g);
  F(1, 0) = -1.0 * cosine(g, 0, d);
  CHECK(max_diff_tuple(data.state.F, F) < 1e-15);
  CHECK(data.max_grad_phi == doctest::Approx(d));
  CHECK(data.symmetric_lowfreq > 0.0);
  const auto r = nonlinear::constraint_residuals(data.state);
  CHECK(r.r1 <= 1e-10);
  CHECK(r.r2 <= 1e-10);
}

TEST_CASE("velocity modes follow the sine convention") {
  const auto g = box(8);
  const auto spec = in::parse_mode_list("u 1 0 0  0 -1  0 0  0 0\nu 0 0 2  0 0  0 0  0.5 0\n");
  const auto data = in::piola_ic(spec, g);
  CHECK(max_diff(data.state.u[0], sine(g, 0)) < 1e-14);
  CHECK(max_diff(data.state.u[2], cosine(g, 2, 0.5, 2)) < 1e-14);
  CHECK(data.state.u[1].max_abs() == 0.0);
}

TEST_CASE("large or unresolved displacements are rejected") {
  const auto g = box(16);
  CHECK_THROWS_AS(in::piola_ic(in::builtin_spec("shear", 1.2), g), std::invalid_argument);
  CHECK_NOTHROW(in::piola_ic(in::builtin_spec("shear", 0.9), g));
  in::DisplacementSpec far;
  far.phi.push_back({{6, 0, 0}, {std::complex<double>(0, -1e-3), 0.0, 0.0}});
  CHECK_THROWS_AS(in::piola_ic(far, g), std::invalid_argument);
  CHECK_NOTHROW(in::piola_ic(far, box(32)));
  in::DisplacementSpec fast;
  fast.u.push_back({{4, 4, 3}, {1.0, 0.0, 0.0}});
  CHECK_THROWS_AS(in::piola_ic(fast, g), std::invalid_argument);
}

TEST_CASE("the H2 size is linear in the scale") {
  const auto g = box(16);
  const double h_small = in::piola_ic(in::builtin_spec("mix", 1e-3), g).h2_norm / 1e-3;
  const double h_large = in::piola_ic(in::builtin_spec("mix", 1e-2), g).h2_norm / 1e-2;
  CHECK(h_small > 0.0);
  CHECK(h_large == doctest::Approx(h_small).epsilon(0.1));
}

TEST_CASE("constraint residuals shrink with resolution") {
  const auto spec = in::builtin_spec("mix", 0.2);
  const auto coarse = nonlinear::constraint_residuals(in::piola_ic(spec, box(16)).state);
  const auto fine = nonlinear::constraint_residuals(in::piola_ic(spec, box(32)).state);
  auto improved = [](double c, double f) { return f <= 1e-3 * c || f <= 1e-12; };
  CHECK(improved(coarse.r1, fine.r1));
  CHECK(improved(coarse.r2, fine.r2));
  CHECK(improved(coarse.r3, fine.r3));
  const auto small = nonlinear::constraint_residuals(in::piola_ic(in::builtin_spec("mix", 1e-3), box(32)).state);
  CHECK(small.max() <= 1e-10);
}

TEST_CASE("perturbation state removes the velocity mean only") {
  const auto g = box(16);
  in::DisplacementSpec spec = in::builtin_spec("mix", 0.05);
  spec.u.push_back({{0, 0, 0}, {0.3, 0.0, 0.0}});
  const auto s = in::piola_state(spec, g, model::make_params(1, 0, 1, 2));
  CHECK(s.n.is_frequency());
  CHECK(std::abs(s.v[0].coefficients()[0]) < 1e-15);
  CHECK(std::abs(s.n.coefficients()[0]) < 1e-15);
}

TEST_CASE("radial profiles") {
  const auto lb = in::lower_bound_profile(2.0, in::ProfileShape::gaussian);
  CHECK(lb.first(0.0) == 2.0);
  CHECK(lb.first(1.0) == doctest::Approx(2.0 * std::exp(-0.5)));
  CHECK(lb.second(1.0) == 0.0);
  const auto eta = in::eta_profile(1.5, in::ProfileShape::exponential);
  CHECK(eta.first(0.7) == 0.0);
  CHECK(eta.second(0.0) == 0.0);
  CHECK(eta.second(2.0) == doctest::Approx(std::pow(2.0, 1.5) * std::exp(-2.0)));
  CHECK(eta.support_radius > lb.support_radius);
  CHECK_THROWS_AS(in::lower_bound_profile(0.0, in::ProfileShape::gaussian), std::invalid_argument);
  CHECK_THROWS_AS(in::eta_profile(-1.0, in::ProfileShape::gaussian), std::invalid_argument);
  CHECK(in::parse_shape("exponential") == in::ProfileShape::exponential);
  CHECK_THROWS_AS(in::parse_shape("box"), std::invalid_argument);
}

}  // TEST_SUITE
