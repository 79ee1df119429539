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

#include "shadowcarve/core.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace shadowcarve {

namespace {

std::size_t checked_power(std::size_t base, std::size_t exponent) {
  std::size_t result = 1;
  for (std::size_t e = 0; e < exponent; ++e) {
    if (base != 0 && result > SIZE_MAX / base) {
      throw ContractError("grid extent overflows size_t");
    }
    result *= base;
  }
  return result;
}

void require_binary(std::span<const std::uint8_t> values, const char* what) {
  std::uint8_t bits = 0;
  for (std::uint8_t v : values) bits |= v;
  if (bits > 1) throw ContractError(std::string(what) + ": non-binary value");
}

}  // namespace

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::I: return "I";
    case Axis::J: return "J";
    case Axis::K: return "K";
  }
  return "?";
}

Axis parse_axis(std::string_view text) {
  if (text == "I" || text == "i") return Axis::I;
  if (text == "J" || text == "j") return Axis::J;
  if (text == "K" || text == "k") return Axis::K;
  throw ContractError("unknown axis '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Bitmap

Bitmap::Bitmap(std::size_t size, std::uint8_t fill)
    : size_(size), bits_(size * size, fill ? 1 : 0) {
  if (size == 0) throw ContractError("bitmap size must be positive");
}

Bitmap::Bitmap(std::size_t size, std::vector<std::uint8_t> bits)
    : size_(size), bits_(std::move(bits)) {
  if (size == 0) throw ContractError("bitmap size must be positive");
  if (bits_.size() != size * size) {
    throw ContractError("bitmap data length does not match size");
  }
  require_binary(bits_, "bitmap");
}

Bitmap Bitmap::from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t n = rows.size();
  std::vector<std::uint8_t> bits;
  bits.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw ContractError("bitmap rows must be square");
    for (int v : row) bits.push_back(v != 0 ? 1 : 0);
  }
  return Bitmap(n, std::move(bits));
}

std::size_t Bitmap::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

Bitmap Bitmap::complement() const {
  Bitmap out = *this;
  for (auto& b : out.bits_) b ^= 1;
  return out;
}

// ---------------------------------------------------------------------------
// VoxelGrid

VoxelGrid::VoxelGrid(std::size_t size, std::uint8_t fill)
    : size_(size), cells_(checked_power(size, 3), fill ? 1 : 0) {
  if (size == 0) throw ContractError("grid size must be positive");
}

VoxelGrid::VoxelGrid(std::size_t size, std::vector<std::uint8_t> cells)
    : size_(size), cells_(std::move(cells)) {
  if (size == 0) throw ContractError("grid size must be positive");
  if (cells_.size() != checked_power(size, 3)) {
    throw ContractError("grid data length does not match size");
  }
  require_binary(cells_, "voxel grid");
}

std::size_t VoxelGrid::count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), 1));
}

// ---------------------------------------------------------------------------
// HyperGrid

HyperGrid::HyperGrid(std::size_t dim, std::size_t size, std::uint8_t fill)
    : dim_(dim), size_(size) {
  if (dim == 0) throw ContractError("hypergrid rank must be positive");
  if (size == 0) throw ContractError("hypergrid size must be positive");
  cells_.assign(checked_power(size, dim), fill ? 1 : 0);
}

HyperGrid::HyperGrid(std::size_t dim, std::size_t size,
                     std::vector<std::uint8_t> cells)
    : dim_(dim), size_(size), cells_(std::move(cells)) {
  if (dim == 0) throw ContractError("hypergrid rank must be positive");
  if (size == 0) throw ContractError("hypergrid size must be positive");
  if (cells_.size() != checked_power(size, dim)) {
    throw ContractError("hypergrid data length does not match n^d");
  }
  require_binary(cells_, "hypergrid");
}

HyperGrid HyperGrid::from_voxels(const VoxelGrid& grid) {
  auto cells = grid.cells();
  return HyperGrid(3, grid.size(),
                   std::vector<std::uint8_t>(cells.begin(), cells.end()));
}

HyperGrid HyperGrid::from_bitmap(const Bitmap& bitmap) {
  auto bits = bitmap.bits();
  return HyperGrid(2, bitmap.size(),
                   std::vector<std::uint8_t>(bits.begin(), bits.end()));
}

VoxelGrid HyperGrid::to_voxels() const {
  if (dim_ != 3) throw ContractError("hypergrid is not three-dimensional");
  return VoxelGrid(size_, cells_);
}

Bitmap HyperGrid::to_bitmap() const {
  if (dim_ != 2) throw ContractError("hypergrid is not two-dimensional");
  return Bitmap(size_, cells_);
}

std::size_t HyperGrid::offset(std::span<const std::size_t> index) const {
  if (index.size() != dim_) throw ContractError("index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t coord : index) {
    if (coord >= size_) throw ContractError("hypergrid index out of range");
    flat = flat * size_ + coord;
  }
  return flat;
}

// ---------------------------------------------------------------------------
// TargetSet

void TargetSet::validate() const {
  if (p.empty()) throw ContractError("target P is mandatory");
  if (r && !q) throw ContractError("target R requires target Q");
  if (q && q->size() != p.size()) {
    throw ContractError("target Q size differs from P");
  }
  if (r && r->size() != p.size()) {
    throw ContractError("target R size differs from P");
  }
}

const Bitmap* TargetSet::plane(Axis axis) const {
  switch (axis) {
    case Axis::I: return p.empty() ? nullptr : &p;
    case Axis::J: return q ? &*q : nullptr;
    case Axis::K: return r ? &*r : nullptr;
  }
  return nullptr;
}

TargetSet TargetSet::resampled(std::size_t size) const {
  validate();
  TargetSet out;
  out.p = resample_nearest(p, size);
  if (q) out.q = resample_nearest(*q, size);
  if (r) out.r = resample_nearest(*r, size);
  return out;
}

// ---------------------------------------------------------------------------
// Operations

std::size_t flatten_index(std::size_t i, std::size_t j, std::size_t k,
                          std::size_t n) {
  if (i >= n || j >= n || k >= n) {
    throw ContractError("voxel index out of range");
  }
  return (i * n + j) * n + k;
}

Index3 unflatten_index(std::size_t flat, std::size_t n) {
  if (n == 0 || flat >= checked_power(n, 3)) {
    throw ContractError("flat index out of range");
  }
  return Index3{flat / (n * n), (flat / n) % n, flat % n};
}

Bitmap project(const VoxelGrid& grid, Axis axis) {
  const std::size_t n = grid.size();
  if (n == 0) throw ContractError("cannot project an empty grid");
  Bitmap out(n);
  auto dst = out.mutable_bits();
  auto src = grid.cells();
  switch (axis) {
    case Axis::I:
      // out[j][k] |= T[i][j][k]; each i-slab is one contiguous n*n block.
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint8_t* slab = src.data() + i * n * n;
        for (std::size_t jk = 0; jk < n * n; ++jk) dst[jk] |= slab[jk];
      }
      break;
    case Axis::J:
      for (std::size_t i = 0; i < n; ++i) {
        std::uint8_t* row = dst.data() + i * n;
        for (std::size_t j = 0; j < n; ++j) {
          const std::uint8_t* line = src.data() + (i * n + j) * n;
          for (std::size_t k = 0; k < n; ++k) row[k] |= line[k];
        }
      }
      break;
    case Axis::K:
      for (std::size_t ij = 0; ij < n * n; ++ij) {
        const std::uint8_t* line = src.data() + ij * n;
        std::uint8_t any = 0;
        for (std::size_t k = 0; k < n; ++k) any |= line[k];
        dst[ij] = any;
      }
      break;
  }
  return out;
}

HyperGrid project(const HyperGrid& grid, std::size_t axis) {
  const std::size_t d = grid.dim();
  const std::size_t n = grid.size();
  if (d < 2) throw ContractError("cannot project a rank-1 hypergrid");
  if (axis >= d) throw ContractError("projection axis out of range");

  // Split the row-major layout as [outer][axis][inner].
  const std::size_t inner = checked_power(n, d - 1 - axis);
  const std::size_t outer = checked_power(n, axis);
  HyperGrid out(d - 1, n);
  auto dst = out.mutable_cells();
  auto src = grid.cells();
  for (std::size_t o = 0; o < outer; ++o) {
    std::uint8_t* target = dst.data() + o * inner;
    for (std::size_t a = 0; a < n; ++a) {
      const std::uint8_t* line = src.data() + (o * n + a) * inner;
      for (std::size_t in = 0; in < inner; ++in) target[in] |= line[in];
    }
  }
  return out;
}

double similarity(const Bitmap& a, const Bitmap& b) {
  if (a.size() != b.size()) throw ContractError("bitmap size mismatch");
  if (a.empty()) throw ContractError("similarity of empty bitmaps");
  auto x = a.bits();
  auto y = b.bits();
  std::size_t agree = 0;
  for (std::size_t idx = 0; idx < x.size(); ++idx) agree += x[idx] == y[idx];
  return static_cast<double>(agree) / static_cast<double>(x.size());
}

Bitmap resample_nearest(const Bitmap& bitmap, std::size_t target_size) {
  const std::size_t n = bitmap.size();
  if (n == 0) throw ContractError("cannot resample an empty bitmap");
  if (target_size == 0) throw ContractError("resample target must be >= 1");
  if (target_size == n) return bitmap;

  std::vector<std::size_t> source(target_size);
  for (std::size_t t = 0; t < target_size; ++t) source[t] = t * n / target_size;

  Bitmap out(target_size);
  for (std::size_t r = 0; r < target_size; ++r) {
    for (std::size_t c = 0; c < target_size; ++c) {
      out.set(r, c, bitmap.at(source[r], source[c]));
    }
  }
  return out;
}

}  // namespace shadowcarve
