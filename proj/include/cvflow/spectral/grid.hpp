#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace cvflow::spectral {

using Complex = std::complex<double>;

/// Uniform periodic grid on the box [0, L)^3 with N points per axis.
///
/// Physical samples are stored row-major as (i, j, l) with x = L * (i, j, l) / N.
/// Frequency coefficients use the real-to-complex half spectrum of shape
/// N x N x (N/2 + 1); integer wavenumbers are k in [-N/2, N/2) along the
/// first two axes and k3 in [0, N/2] along the last, where k3 = N/2 is the
/// Nyquist plane. The wavevector is xi = (2 pi / L) k.
///
/// The grid owns the FFTW plans, so it is shared by reference (shared_ptr)
/// between every field defined on it.
class Grid {
 public:
  static std::shared_ptr<const Grid> create(int n_per_axis, double box_length);

  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int n() const { return n_; }
  double length() const { return length_; }
  double volume() const { return length_ * length_ * length_; }
  double cell_volume() const;

  std::size_t physical_size() const { return physical_size_; }
  std::size_t spectral_size() const { return spectral_size_; }
  int half_n() const { return n_ / 2 + 1; }

  std::size_t physical_index(int i, int j, int l) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + l;
  }
  std::size_t spectral_index(int i, int j, int l) const {
    return (static_cast<std::size_t>(i) * n_ + j) * half_n() + l;
  }
  double coordinate(int i) const { return length_ * i / n_; }

  /// Signed integer wavenumber for storage index `i` along a full axis.
  int wavenumber(int i) const { return i < n_ / 2 ? i : i - n_; }

  /// Integer wavevector of half-spectrum slot (i, j, l); the last component
  /// is reported as -N/2 on the Nyquist plane.
  std::array<int, 3> mode(int i, int j, int l) const {
    return {wavenumber(i), wavenumber(j), l == n_ / 2 ? -n_ / 2 : l};
  }
  std::array<double, 3> wavevector(int i, int j, int l) const;

  /// True when any component of the wavevector sits on a Nyquist plane.
  bool is_nyquist(int i, int j, int l) const {
    return i == n_ / 2 || j == n_ / 2 || l == n_ / 2;
  }

  /// Multiplicity of a half-spectrum slot in the full spectrum (1 or 2).
  double hermitian_weight(int l) const { return (l == 0 || l == n_ / 2) ? 1.0 : 2.0; }

  /// Largest wavevector magnitude per axis after Nyquist zeroing.
  double max_axis_wavenumber() const;

  /// 2/3-rule spherical truncation: modes with |k| > N/3 are removed.
  bool keeps_after_dealias(int i, int j, int l) const;

  /// Per-slot cached quantities: |xi|^2 and the Nyquist/dealias masks.
  const std::vector<double>& xi_squared() const { return xi2_; }
  const std::vector<unsigned char>& nyquist_mask() const { return nyquist_; }
  const std::vector<unsigned char>& dealias_mask() const { return dealias_; }

  /// Unnormalised FFTW transforms. `forward` leaves `in` intact; `backward`
  /// consumes a scratch copy of its input.
  void forward(const double* in, Complex* out) const;
  void backward(const Complex* in, double* out) const;

  bool same_as(const Grid& other) const {
    return this == &other || (n_ == other.n_ && length_ == other.length_);
  }

 private:
  Grid(int n_per_axis, double box_length);

  int n_;
  double length_;
  std::size_t physical_size_;
  std::size_t spectral_size_;
  std::vector<double> xi2_;
  std::vector<unsigned char> nyquist_;
  std::vector<unsigned char> dealias_;
  void* forward_plan_ = nullptr;
  void* backward_plan_ = nullptr;
};

using GridPtr = std::shared_ptr<const Grid>;

}  // namespace cvflow::spectral
