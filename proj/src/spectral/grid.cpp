#include "cvflow/spectral/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cvflow::spectral {

namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::shared_ptr<const Grid> Grid::create(int n_per_axis, double box_length) {
  if (n_per_axis < 4 || n_per_axis % 2 != 0) {
    throw std::invalid_argument("grid: points per axis must be even and >= 4, got " +
                                std::to_string(n_per_axis));
  }
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw std::invalid_argument("grid: box length must be positive and finite");
  }
  return std::shared_ptr<const Grid>(new Grid(n_per_axis, box_length));
}

Grid::Grid(int n_per_axis, double box_length)
    : n_(n_per_axis),
      length_(box_length),
      physical_size_(static_cast<std::size_t>(n_per_axis) * n_per_axis * n_per_axis),
      spectral_size_(static_cast<std::size_t>(n_per_axis) * n_per_axis * (n_per_axis / 2 + 1)) {
  xi2_.resize(spectral_size_);
  nyquist_.resize(spectral_size_);
  dealias_.resize(spectral_size_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      for (int l = 0; l < half_n(); ++l) {
        const std::size_t s = spectral_index(i, j, l);
        const auto xi = wavevector(i, j, l);
        xi2_[s] = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        nyquist_[s] = is_nyquist(i, j, l) ? 1 : 0;
        dealias_[s] = keeps_after_dealias(i, j, l) ? 1 : 0;
      }
    }
  }

  std::lock_guard lock(planner_mutex());
  double* real_buf = fftw_alloc_real(physical_size_);
  fftw_complex* cplx_buf = fftw_alloc_complex(spectral_size_);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_plan_ = fftw_plan_dft_r2c_3d(n_, n_, n_, real_buf, cplx_buf, flags);
  backward_plan_ = fftw_plan_dft_c2r_3d(n_, n_, n_, cplx_buf, real_buf, flags);
  fftw_free(real_buf);
  fftw_free(cplx_buf);
  if (forward_plan_ == nullptr || backward_plan_ == nullptr) {
    throw std::runtime_error("grid: FFTW planning failed");
  }
}

Grid::~Grid() {
  std::lock_guard lock(planner_mutex());
  if (forward_plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  if (backward_plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

double Grid::cell_volume() const {
  const double h = length_ / n_;
  return h * h * h;
}

std::array<double, 3> Grid::wavevector(int i, int j, int l) const {
  const double base = 2.0 * std::numbers::pi / length_;
  const auto k = mode(i, j, l);
  return {base * k[0], base * k[1], base * k[2]};
}

double Grid::max_axis_wavenumber() const {
  return (2.0 * std::numbers::pi / length_) * (n_ / 2 - 1);
}

bool Grid::keeps_after_dealias(int i, int j, int l) const {
  const auto k = mode(i, j, l);
  const double k2 = double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
  const double cutoff = n_ / 3.0;
  return k2 <= cutoff * cutoff;
}

void Grid::forward(const double* in, Complex* out) const {
  // Out-of-place r2c leaves its input untouched.
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
}

void Grid::backward(const Complex* in, double* out) const {
  std::vector<Complex> scratch(in, in + spectral_size_);
  fftw_execute_dft_c2r(static_cast<fftw_plan>(backward_plan_),
                       reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

}  // namespace cvflow::spectral
