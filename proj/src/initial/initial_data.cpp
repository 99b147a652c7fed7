#include "cvflow/initial/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cvflow/spectral/operators.hpp"

namespace cvflow::initial {

namespace {

using spectral::ScalarField;
using spectral::TensorField;
using spectral::VectorField;
using cd = std::complex<double>;

VectorMode parse_vector_mode(std::istringstream& is, int line_no) {
  VectorMode m;
  for (int& k : m.k) {
    if (!(is >> k)) throw std::invalid_argument("mode list line " + std::to_string(line_no) + ": expected 3 integer wavenumbers");
  }
  for (auto& a : m.amp) {
    double re = 0.0, im = 0.0;
    if (!(is >> re >> im)) throw std::invalid_argument("mode list line " + std::to_string(line_no) + ": expected 6 amplitude values");
    a = {re, im};
  }
  std::string extra;
  if (is >> extra) throw std::invalid_argument("mode list line " + std::to_string(line_no) + ": trailing token '" + extra + "'");
  return m;
}

VectorMode real_mode(std::array<int, 3> k, int component, cd amp) {
  VectorMode m;
  m.k = k;
  m.amp[component] = amp;
  return m;
}

const cd kSin{0.0, -1.0};
const cd kCos{1.0, 0.0};

void check_resolved(const std::vector<VectorMode>& modes, const spectral::Grid& grid, const char* what) {
  const double cutoff = grid.n() / 3.0;
  for (const auto& m : modes) {
    const double k2 = double(m.k[0]) * m.k[0] + double(m.k[1]) * m.k[1] + double(m.k[2]) * m.k[2];
    if (k2 > cutoff * cutoff) {
      std::ostringstream os;
      os << "piola_ic: " << what << " mode (" << m.k[0] << ", " << m.k[1] << ", " << m.k[2]
         << ") is outside |k| <= N/3 for N = " << grid.n();
      throw std::invalid_argument(os.str());
    }
  }
}

}  // namespace

DisplacementSpec parse_mode_list(const std::string& text) {
  DisplacementSpec spec;
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream is(line);
    std::string tag;
    if (!(is >> tag)) continue;
    if (tag == "phi") {
      spec.phi.push_back(parse_vector_mode(is, line_no));
    } else if (tag == "u") {
      spec.u.push_back(parse_vector_mode(is, line_no));
    } else if (tag == "scale") {
      if (!(is >> spec.scale)) throw std::invalid_argument("mode list line " + std::to_string(line_no) + ": bad scale");
    } else {
      throw std::invalid_argument("mode list line " + std::to_string(line_no) + ": unknown entry '" + tag + "'");
    }
  }
  return spec;
}

std::string format_mode_list(const DisplacementSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  os << "scale " << spec.scale << '\n';
  auto put = [&](const char* tag, const VectorMode& m) {
    os << tag << ' ' << m.k[0] << ' ' << m.k[1] << ' ' << m.k[2];
    for (const auto& a : m.amp) os << ' ' << a.real() << ' ' << a.imag();
    os << '\n';
  };
  for (const auto& m : spec.phi) put("phi", m);
  for (const auto& m : spec.u) put("u", m);
  return os.str();
}

DisplacementSpec builtin_spec(const std::string& name, double scale) {
  DisplacementSpec spec;
  spec.scale = scale;
  if (name == "zero") return spec;
  if (name == "shear") {
    spec.phi.push_back(real_mode({1, 0, 0}, 1, kSin));
    return spec;
  }
  if (name == "mix") {
    spec.phi.push_back(real_mode({1, 0, 0}, 0, kSin));
    spec.phi.push_back(real_mode({0, 1, 0}, 2, kSin));
    spec.phi.push_back(real_mode({0, 0, 1}, 1, 0.5 * kCos));
    spec.phi.push_back(real_mode({1, 1, 0}, 1, 0.5 * kSin));
    spec.u.push_back(real_mode({0, 0, 1}, 0, kSin));
    spec.u.push_back(real_mode({0, 1, 0}, 1, 0.5 * kSin));
    return spec;
  }
  throw std::invalid_argument("unknown builtin initial condition '" + name + "'");
}

PiolaData piola_ic(const DisplacementSpec& spec, const spectral::GridPtr& grid) {
  const spectral::Grid& g = *grid;
  check_resolved(spec.phi, g, "displacement");
  check_resolved(spec.u, g, "velocity");
  const double base = 2.0 * std::numbers::pi / g.length();
  const int n = g.n();
  const std::size_t m = g.physical_size();

  std::array<std::vector<double>, 9> grad_phi;  // [3i+j] = d_j phi^i
  std::array<std::vector<double>, 3> u;
  for (auto& x : grad_phi) x.assign(m, 0.0);
  for (auto& x : u) x.assign(m, 0.0);

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        const std::size_t p = g.physical_index(i, j, l);
        const double x[3] = {g.coordinate(i), g.coordinate(j), g.coordinate(l)};
        for (const auto& mode : spec.phi) {
          const double phase = base * (mode.k[0] * x[0] + mode.k[1] * x[1] + mode.k[2] * x[2]);
          const cd e{std::cos(phase), std::sin(phase)};
          for (int a = 0; a < 3; ++a) {
            const cd w = cd(0.0, 1.0) * mode.amp[a] * e;
            for (int b = 0; b < 3; ++b) grad_phi[3 * a + b][p] += spec.scale * base * mode.k[b] * w.real();
          }
        }
        for (const auto& mode : spec.u) {
          const double phase = base * (mode.k[0] * x[0] + mode.k[1] * x[1] + mode.k[2] * x[2]);
          const cd e{std::cos(phase), std::sin(phase)};
          for (int a = 0; a < 3; ++a) u[a][p] += spec.scale * (mode.amp[a] * e).real();
        }
      }
    }
  }

  PiolaData out;
  std::vector<double> rho(m);
  std::array<std::vector<double>, 9> F;
  for (auto& x : F) x.assign(m, 0.0);
  for (std::size_t p = 0; p < m; ++p) {
    double fro = 0.0;
    double A[3][3];
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const double d = grad_phi[3 * a + b][p];
        fro += d * d;
        A[a][b] = (a == b ? 1.0 : 0.0) + d;
      }
    }
    out.max_grad_phi = std::max(out.max_grad_phi, std::sqrt(fro));
    const double c00 = A[1][1] * A[2][2] - A[1][2] * A[2][1];
    const double c01 = A[1][2] * A[2][0] - A[1][0] * A[2][2];
    const double c02 = A[1][0] * A[2][1] - A[1][1] * A[2][0];
    const double det = A[0][0] * c00 + A[0][1] * c01 + A[0][2] * c02;
    rho[p] = det;
    // adj(A)^{ij} = cofactor(A)^{ji}
    const double adj[3][3] = {
        {c00, A[0][2] * A[2][1] - A[0][1] * A[2][2], A[0][1] * A[1][2] - A[0][2] * A[1][1]},
        {c01, A[0][0] * A[2][2] - A[0][2] * A[2][0], A[0][2] * A[1][0] - A[0][0] * A[1][2]},
        {c02, A[0][1] * A[2][0] - A[0][0] * A[2][1], A[0][0] * A[1][1] - A[0][1] * A[1][0]}};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) F[3 * a + b][p] = adj[a][b] / det;
    }
  }
  if (!(out.max_grad_phi < 1.0)) {
    throw std::invalid_argument("piola_ic: max |grad phi| = " + std::to_string(out.max_grad_phi) +
                                " is not below 1, I + grad phi may be singular");
  }

  out.state.rho = ScalarField::from_values(grid, std::move(rho));
  for (int a = 0; a < 3; ++a) out.state.u[a] = ScalarField::from_values(grid, std::move(u[a]));
  for (int c = 0; c < 9; ++c) out.state.F.comp[c] = ScalarField::from_values(grid, std::move(F[c]));

  const ScalarField dn = out.state.rho - ScalarField::constant(grid, 1.0);
  const TensorField E = out.state.F - TensorField::identity(grid);
  double h2 = spectral::sobolev_norm_squared(dn, 2);
  for (const auto& c : out.state.u.comp) h2 += spectral::sobolev_norm_squared(c, 2);
  for (const auto& c : E.comp) h2 += spectral::sobolev_norm_squared(c, 2);
  out.h2_norm = std::sqrt(h2);

  // Symmetric part of F - I on the unit shell |k| = 1.
  const TensorField sym_f = (E + E.transpose()).to_frequency();
  const double base2 = base * base;
  for (int c = 0; c < 9; ++c) {
    const auto coef = sym_f.comp[c].coefficients();
    for (std::size_t s = 0; s < coef.size(); ++s) {
      if (std::abs(g.xi_squared()[s] - base2) < 1e-9 * base2) {
        out.symmetric_lowfreq = std::max(out.symmetric_lowfreq, 0.5 * std::abs(coef[s]));
      }
    }
  }
  return out;
}

model::FlowState piola_state(const DisplacementSpec& spec, const spectral::GridPtr& grid,
                             const model::ModelParams& params) {
  const PiolaData data = piola_ic(spec, grid);
  const model::FlowState raw = model::phys_to_pert(data.state, params);
  return model::make_perturbation_state(raw.n, raw.v, raw.E, raw.time).to_frequency();
}

ProfileShape parse_shape(const std::string& name) {
  if (name == "gaussian") return ProfileShape::gaussian;
  if (name == "exponential") return ProfileShape::exponential;
  throw std::invalid_argument("unknown profile shape '" + name + "'");
}

double envelope(ProfileShape shape, double r) {
  return shape == ProfileShape::gaussian ? std::exp(-0.5 * r * r) : std::exp(-r);
}

namespace {

double support_for(ProfileShape shape) { return shape == ProfileShape::gaussian ? 12.0 : 60.0; }

const char* shape_name(ProfileShape shape) {
  return shape == ProfileShape::gaussian ? "gaussian" : "exponential";
}

}  // namespace

linear::RadialProfile lower_bound_profile(double c0, ProfileShape shape) {
  if (!(c0 > 0.0)) throw std::invalid_argument("lower_bound_profile: c0 must be positive");
  linear::RadialProfile p;
  p.first = [c0, shape](double r) { return c0 * envelope(shape, r); };
  p.second = [](double) { return 0.0; };
  p.support_radius = support_for(shape);
  p.name = std::string(shape_name(shape)) + " lower-bound";
  return p;
}

linear::RadialProfile eta_profile(double eta, ProfileShape shape) {
  if (!(eta > 0.0)) throw std::invalid_argument("eta_profile: eta must be positive");
  linear::RadialProfile p;
  p.first = [](double) { return 0.0; };
  p.second = [eta, shape](double r) { return std::pow(r, eta) * envelope(shape, r); };
  p.support_radius = support_for(shape);
  p.name = std::string(shape_name(shape)) + " eta";
  return p;
}

}  // namespace cvflow::initial
