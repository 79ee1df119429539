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

#include <cstddef>
#include <map>
#include <vector>

#include "shadowcarve/core.hpp"

namespace shadowcarve {

/// A solved grid together with how well its shadows match the targets.
struct CarveReport {
  VoxelGrid grid;
  /// One entry per provided target plane.
  std::map<Axis, double> per_plane_similarity;
  /// True iff every provided plane matches exactly.
  bool consistent = false;
};

/// Compares the grid's projections with every provided target.
CarveReport make_report(VoxelGrid grid, const TargetSet& targets);

/// Direct carving: cells[i][j][k] = P[j][k] & Q[i][k] & R[i][j], with absent
/// planes imposing nothing. Mutually unsatisfiable targets yield a
/// best-effort grid and consistent == false.
CarveReport carve3(const TargetSet& targets);

/// Only the grid of carve3, without computing the report.
VoxelGrid carve_grid(const TargetSet& targets);

struct AxisImage {
  std::size_t axis = 0;
  HyperGrid image;
};

/// Carving in d dimensions. Each image has rank d - 1 and is indexed by the
/// output coordinates with coordinate `axis` removed. An output cell
/// survives iff every image is 1 at its footprint.
HyperGrid carve_nd(std::size_t dim, std::size_t size,
                   const std::vector<AxisImage>& images);

/// Replaces each voxel by a factor^3 block.
VoxelGrid dilate(const VoxelGrid& grid, std::size_t factor);

/// Supersampled carve. `coarse` is dilated by `factor`, then every surviving
/// subvoxel whose footprint is 0 in all provided high-resolution targets is
/// deleted. Never creates voxels.
VoxelGrid antialias_carve(const VoxelGrid& coarse, const TargetSet& targets_hi,
                          std::size_t factor);

}  // namespace shadowcarve
