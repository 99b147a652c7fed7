#include "cvflow/spectral/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace cvflow::spectral {

namespace {

constexpr std::array<char, 4> kMagic = {'C', 'V', 'F', '1'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ostream& os, T value) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  os.write(bytes.data(), bytes.size());
}

template <class T>
T get(std::istream& is) {
  std::array<char, sizeof(T)> bytes;
  if (!is.read(bytes.data(), bytes.size())) throw std::runtime_error("snapshot: truncated file");
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

void write_fields(const std::filesystem::path& path, std::uint8_t rank,
                  const ScalarField* comps, std::size_t count) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("snapshot: cannot open " + path.string() + " for writing");
  const Grid& g = comps[0].grid();
  const Representation rep = comps[0].representation();
  os.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(os, kVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.n()));
  put<double>(os, g.length());
  put<std::uint8_t>(os, rank);
  put<std::uint8_t>(os, static_cast<std::uint8_t>(rep));
  const int n = g.n();
  for (std::size_t c = 0; c < count; ++c) {
    if (comps[c].representation() != rep) {
      throw std::invalid_argument("snapshot: mixed representations within one field");
    }
    if (rep == Representation::physical) {
      for (double v : comps[c].values()) put<double>(os, v);
      continue;
    }
    const auto half = comps[c].coefficients();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) {
          Complex z;
          if (l <= n / 2) {
            z = half[g.spectral_index(i, j, l)];
          } else {
            z = std::conj(half[g.spectral_index((n - i) % n, (n - j) % n, n - l)]);
          }
          put<double>(os, z.real());
          put<double>(os, z.imag());
        }
      }
    }
  }
  if (!os) throw std::runtime_error("snapshot: write failed for " + path.string());
}

}  // namespace

ScalarField Snapshot::scalar() const {
  if (rank != 0) throw std::invalid_argument("snapshot: not a scalar field");
  return components.at(0);
}

VectorField Snapshot::vector() const {
  if (rank != 1) throw std::invalid_argument("snapshot: not a vector field");
  VectorField v;
  for (int i = 0; i < 3; ++i) v[i] = components.at(i);
  return v;
}

TensorField Snapshot::tensor() const {
  if (rank != 2) throw std::invalid_argument("snapshot: not a tensor field");
  TensorField t;
  for (std::size_t i = 0; i < 9; ++i) t.comp[i] = components.at(i);
  return t;
}

void write_snapshot(const std::filesystem::path& path, const ScalarField& field) {
  write_fields(path, 0, &field, 1);
}

void write_snapshot(const std::filesystem::path& path, const VectorField& field) {
  write_fields(path, 1, field.comp.data(), 3);
}

void write_snapshot(const std::filesystem::path& path, const TensorField& field) {
  write_fields(path, 2, field.comp.data(), 9);
}

Snapshot read_snapshot(const std::filesystem::path& path, GridPtr grid) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("snapshot: cannot open " + path.string());
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kMagic) {
    throw std::runtime_error("snapshot: bad magic in " + path.string());
  }
  const auto version = get<std::uint32_t>(is);
  if (version != kVersion) {
    throw std::runtime_error("snapshot: unsupported version " + std::to_string(version));
  }
  const auto n = static_cast<int>(get<std::uint32_t>(is));
  const double length = get<double>(is);
  Snapshot snap;
  snap.rank = get<std::uint8_t>(is);
  const auto rep = get<std::uint8_t>(is);
  if (snap.rank > 2) throw std::runtime_error("snapshot: invalid rank");
  if (rep > 1) throw std::runtime_error("snapshot: invalid representation tag");
  snap.representation = static_cast<Representation>(rep);
  snap.grid = (grid && grid->n() == n && grid->length() == length) ? grid : Grid::create(n, length);
  const Grid& g = *snap.grid;
  const std::size_t count = snap.rank == 0 ? 1 : (snap.rank == 1 ? 3 : 9);
  for (std::size_t c = 0; c < count; ++c) {
    if (snap.representation == Representation::physical) {
      std::vector<double> values(g.physical_size());
      for (double& v : values) v = get<double>(is);
      snap.components.push_back(ScalarField::from_values(snap.grid, std::move(values)));
      continue;
    }
    std::vector<Complex> half(g.spectral_size());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) {
          const double re = get<double>(is);
          const double im = get<double>(is);
          if (l <= n / 2) half[g.spectral_index(i, j, l)] = Complex(re, im);
        }
      }
    }
    snap.components.push_back(ScalarField::from_coefficients(snap.grid, std::move(half)));
  }
  return snap;
}

}  // namespace cvflow::spectral
