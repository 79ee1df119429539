// Copyright 2026 The Shadowcarve Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace shadowcarve {

/// Raised when a caller violates an operation's precondition (bad index,
/// mismatched sizes, malformed target set).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The three standard basis directions. Light for the plane orthogonal to
/// an axis travels along that axis.
enum class Axis : std::uint8_t { I = 0, J = 1, K = 2 };

inline constexpr std::array<Axis, 3> kAxes{Axis::I, Axis::J, Axis::K};

std::string_view to_string(Axis axis);
/// Accepts "I"/"J"/"K" in either case.
Axis parse_axis(std::string_view text);

/// Square binary image addressed as (row, column).
class Bitmap {
 public:
  Bitmap() = default;
  explicit Bitmap(std::size_t size, std::uint8_t fill = 0);
  Bitmap(std::size_t size, std::vector<std::uint8_t> bits);

  /// Builds from rows of equal length; any nonzero entry becomes 1.
  static Bitmap from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  std::uint8_t at(std::size_t r, std::size_t c) const {
    return bits_[r * size_ + c];
  }
  void set(std::size_t r, std::size_t c, bool value) {
    bits_[r * size_ + c] = value ? 1 : 0;
  }

  std::span<const std::uint8_t> bits() const { return bits_; }
  std::span<std::uint8_t> mutable_bits() { return bits_; }
  std::size_t count() const;

  Bitmap complement() const;

  friend bool operator==(const Bitmap&, const Bitmap&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Cubic binary tensor addressed as (i, j, k), stored row-major with i
/// outermost so that the storage offset equals flatten_index(i, j, k, n).
class VoxelGrid {
 public:
  VoxelGrid() = default;
  explicit VoxelGrid(std::size_t size, std::uint8_t fill = 0);
  VoxelGrid(std::size_t size, std::vector<std::uint8_t> cells);

  std::size_t size() const { return size_; }

  std::uint8_t at(std::size_t i, std::size_t j, std::size_t k) const {
    return cells_[(i * size_ + j) * size_ + k];
  }
  void set(std::size_t i, std::size_t j, std::size_t k, bool value) {
    cells_[(i * size_ + j) * size_ + k] = value ? 1 : 0;
  }

  std::span<const std::uint8_t> cells() const { return cells_; }
  std::span<std::uint8_t> mutable_cells() { return cells_; }
  std::size_t count() const;

  friend bool operator==(const VoxelGrid&, const VoxelGrid&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint8_t> cells_;
};

/// Binary tensor of rank `dim` with every extent equal to `size`, row-major
/// over index tuples (first coordinate outermost). Rank 1 is permitted so
/// that vectors can serve as images for the two-dimensional carve.
class HyperGrid {
 public:
  HyperGrid() = default;
  HyperGrid(std::size_t dim, std::size_t size, std::uint8_t fill = 0);
  HyperGrid(std::size_t dim, std::size_t size, std::vector<std::uint8_t> cells);

  static HyperGrid from_voxels(const VoxelGrid& grid);
  static HyperGrid from_bitmap(const Bitmap& bitmap);
  VoxelGrid to_voxels() const;
  Bitmap to_bitmap() const;

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return size_; }

  std::size_t offset(std::span<const std::size_t> index) const;
  std::uint8_t at(std::span<const std::size_t> index) const {
    return cells_[offset(index)];
  }
  void set(std::span<const std::size_t> index, bool value) {
    cells_[offset(index)] = value ? 1 : 0;
  }

  std::span<const std::uint8_t> cells() const { return cells_; }
  std::span<std::uint8_t> mutable_cells() { return cells_; }

  friend bool operator==(const HyperGrid&, const HyperGrid&) = default;

 private:
  std::size_t dim_ = 0;
  std::size_t size_ = 0;
  std::vector<std::uint8_t> cells_;
};

/// Target shadows: P is mandatory, Q optional, R only alongside Q. All
/// present bitmaps share one size, which is the working resolution.
struct TargetSet {
  Bitmap p;
  std::optional<Bitmap> q;
  std::optional<Bitmap> r;

  std::size_t n() const { return p.size(); }

  /// Throws ContractError when an invariant is broken.
  void validate() const;

  /// The target orthogonal to `axis`, or nullptr when that plane is absent.
  const Bitmap* plane(Axis axis) const;

  /// Resamples every present plane to `size` with resample_nearest.
  TargetSet resampled(std::size_t size) const;
};

struct Index3 {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;

  friend bool operator==(const Index3&, const Index3&) = default;
};

std::size_t flatten_index(std::size_t i, std::size_t j, std::size_t k,
                          std::size_t n);
Index3 unflatten_index(std::size_t flat, std::size_t n);

/// Logical OR of the grid along `axis`. The result follows the plane
/// convention: I -> [j][k], J -> [i][k], K -> [i][j]. No mirroring.
Bitmap project(const VoxelGrid& grid, Axis axis);

/// OR-reduction of a hypergrid along one coordinate; the result has rank
/// dim - 1 and keeps the remaining coordinates in their original order.
HyperGrid project(const HyperGrid& grid, std::size_t axis);

/// Fraction of positions where the two bitmaps agree.
double similarity(const Bitmap& a, const Bitmap& b);

/// Nearest-neighbour resampling: output (r, c) copies source
/// (floor(r * size / target), floor(c * size / target)).
Bitmap resample_nearest(const Bitmap& bitmap, std::size_t target_size);

}  // namespace shadowcarve
