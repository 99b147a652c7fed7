#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "cvflow/spectral/field.hpp"

namespace cvflow::spectral {

/// CVF1 binary field snapshot, little-endian:
///   "CVF1" | u32 version (=1) | u32 N | f64 L | u8 rank (0/1/2) | u8 representation
///   followed by 1, 3 or 9 components in order. Physical components are N^3 f64
///   values in (i, j, l) row-major order; frequency components are the full
///   N^3 spectrum in the same index order, each entry an interleaved (re, im)
///   f64 pair.
struct Snapshot {
  GridPtr grid;
  std::uint8_t rank = 0;
  Representation representation = Representation::physical;
  std::vector<ScalarField> components;

  ScalarField scalar() const;
  VectorField vector() const;
  TensorField tensor() const;
};

void write_snapshot(const std::filesystem::path& path, const ScalarField& field);
void write_snapshot(const std::filesystem::path& path, const VectorField& field);
void write_snapshot(const std::filesystem::path& path, const TensorField& field);

/// Reads a CVF1 file. Fields are attached to `grid` when it matches the
/// header, otherwise to a freshly created grid.
Snapshot read_snapshot(const std::filesystem::path& path, GridPtr grid = nullptr);

}  // namespace cvflow::spectral
