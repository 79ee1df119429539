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

#include "shadowcarve/carve.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace shadowcarve {

namespace {

// Row of all ones used in place of an absent plane.
const std::uint8_t* plane_row(const Bitmap* plane,
                              const std::vector<std::uint8_t>& ones,
                              std::size_t row) {
  if (plane == nullptr) return ones.data();
  return plane->bits().data() + row * plane->size();
}

}  // namespace

CarveReport make_report(VoxelGrid grid, const TargetSet& targets) {
  targets.validate();
  if (grid.size() != targets.n()) {
    throw ContractError("grid size differs from target resolution");
  }
  CarveReport report;
  report.consistent = true;
  for (Axis axis : kAxes) {
    const Bitmap* target = targets.plane(axis);
    if (target == nullptr) continue;
    double s = similarity(project(grid, axis), *target);
    report.per_plane_similarity[axis] = s;
    if (s != 1.0) report.consistent = false;
  }
  report.grid = std::move(grid);
  return report;
}

// The three shadows are accumulated in the carving pass, so the report needs
// no further sweep over the grid. Each cell is written once.
CarveReport carve3(const TargetSet& targets) {
  targets.validate();
  const std::size_t n = targets.n();
  const Bitmap* p = targets.plane(Axis::I);
  const Bitmap* q = targets.plane(Axis::J);
  const Bitmap* r = targets.plane(Axis::K);
  const std::vector<std::uint8_t> ones(n, 1);

  std::vector<std::uint8_t> cells;
  cells.reserve(n * n * n);
  std::vector<std::uint8_t> line(n);
  Bitmap shadow_i(n), shadow_j(n), shadow_k(n);
  std::uint8_t* si = shadow_i.mutable_bits().data();
  std::uint8_t* sj = shadow_j.mutable_bits().data();
  std::uint8_t* sk = shadow_k.mutable_bits().data();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t* q_row = plane_row(q, ones, i);
    const std::uint8_t* r_row = plane_row(r, ones, i);
    std::uint8_t* __restrict sj_row = sj + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      if (!r_row[j]) {
        cells.resize(cells.size() + n);
        continue;
      }
      const std::uint8_t* p_row = plane_row(p, ones, j);
      std::uint8_t* __restrict out = line.data();
      std::uint8_t* __restrict si_row = si + j * n;
      std::uint8_t any = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const std::uint8_t v = p_row[k] & q_row[k];
        out[k] = v;
        si_row[k] |= v;
        sj_row[k] |= v;
        any |= v;
      }
      sk[i * n + j] = any;
      cells.insert(cells.end(), line.begin(), line.end());
    }
  }
  VoxelGrid grid(n, std::move(cells));

  CarveReport report;
  report.consistent = true;
  const Bitmap* shadows[] = {&shadow_i, &shadow_j, &shadow_k};
  for (Axis axis : kAxes) {
    const Bitmap* target = targets.plane(axis);
    if (target == nullptr) continue;
    const double s = similarity(*shadows[static_cast<int>(axis)], *target);
    report.per_plane_similarity[axis] = s;
    if (s != 1.0) report.consistent = false;
  }
  report.grid = std::move(grid);
  return report;
}

VoxelGrid carve_grid(const TargetSet& targets) {
  return carve3(targets).grid;
}

HyperGrid carve_nd(std::size_t dim, std::size_t size,
                   const std::vector<AxisImage>& images) {
  if (dim < 2) throw ContractError("carve_nd requires dim >= 2");
  if (size == 0) throw ContractError("carve_nd requires size >= 1");
  if (images.empty() || images.size() > dim - 1) {
    throw ContractError("carve_nd requires between 1 and dim-1 images");
  }
  std::vector<bool> seen(dim, false);
  for (const auto& img : images) {
    if (img.axis >= dim) throw ContractError("image axis out of range");
    if (seen[img.axis]) throw ContractError("duplicate image axis");
    seen[img.axis] = true;
    if (img.image.dim() != dim - 1 || img.image.size() != size) {
      throw ContractError("image extent does not match the output grid");
    }
  }

  HyperGrid out(dim, size, 1);
  auto cells = out.mutable_cells();
  std::vector<std::size_t> index(dim, 0);
  std::vector<std::size_t> reduced(dim - 1, 0);
  for (std::size_t flat = 0; flat < cells.size(); ++flat) {
    std::uint8_t alive = 1;
    for (const auto& img : images) {
      std::size_t w = 0;
      for (std::size_t c = 0; c < dim; ++c) {
        if (c != img.axis) reduced[w++] = index[c];
      }
      if (!img.image.at(reduced)) {
        alive = 0;
        break;
      }
    }
    cells[flat] = alive;
    // Advance the index tuple in row-major order.
    for (std::size_t c = dim; c-- > 0;) {
      if (++index[c] < size) break;
      index[c] = 0;
    }
  }
  return out;
}

VoxelGrid dilate(const VoxelGrid& grid, std::size_t factor) {
  if (factor == 0) throw ContractError("dilation factor must be >= 1");
  if (factor == 1) return grid;
  const std::size_t n = grid.size();
  const std::size_t m = n * factor;
  VoxelGrid out(m);
  std::uint8_t* dst = out.mutable_cells().data();
  std::vector<std::uint8_t> line(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        std::fill_n(line.begin() + static_cast<std::ptrdiff_t>(k * factor),
                    factor, grid.at(i, j, k));
      }
      for (std::size_t di = 0; di < factor; ++di) {
        for (std::size_t dj = 0; dj < factor; ++dj) {
          std::size_t si = i * factor + di;
          std::size_t sj = j * factor + dj;
          std::copy(line.begin(), line.end(), dst + (si * m + sj) * m);
        }
      }
    }
  }
  return out;
}

VoxelGrid antialias_carve(const VoxelGrid& coarse, const TargetSet& targets_hi,
                          std::size_t factor) {
  if (factor == 0) throw ContractError("supersample factor must be >= 1");
  targets_hi.validate();
  const std::size_t m = coarse.size() * factor;
  if (targets_hi.n() != m) {
    throw ContractError("high-resolution targets must have size " +
                        std::to_string(m));
  }

  VoxelGrid out = dilate(coarse, factor);
  const Bitmap* p = targets_hi.plane(Axis::I);
  const Bitmap* q = targets_hi.plane(Axis::J);
  const Bitmap* r = targets_hi.plane(Axis::K);
  // An absent plane is "dark everywhere" for the deletion test.
  const std::vector<std::uint8_t> zeros(m, 0);
  auto row_or_zeros = [&](const Bitmap* plane, std::size_t row) {
    return plane == nullptr ? zeros.data() : plane->bits().data() + row * m;
  };

  std::uint8_t* cells = out.mutable_cells().data();
  for (std::size_t i = 0; i < m; ++i) {
    const std::uint8_t* q_row = row_or_zeros(q, i);
    const std::uint8_t* r_row = row_or_zeros(r, i);
    for (std::size_t j = 0; j < m; ++j) {
      const std::uint8_t* p_row = row_or_zeros(p, j);
      const std::uint8_t rij = r_row[j];
      std::uint8_t* line = cells + (i * m + j) * m;
      for (std::size_t k = 0; k < m; ++k) {
        // Keep iff some provided target is lit at this subvoxel's footprint.
        line[k] &= p_row[k] | q_row[k] | rij;
      }
    }
  }
  return out;
}

}  // namespace shadowcarve
