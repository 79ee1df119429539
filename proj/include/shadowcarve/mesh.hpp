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
#include <cstdint>
#include <string>
#include <vector>

#include "shadowcarve/core.hpp"

namespace shadowcarve {

/// Voxel (i, j, k) occupies the lattice cube [i, i+1] x [j, j+1] x [k, k+1].
struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

/// Boundary quads of a voxel grid. Each quad winds counter-clockwise when
/// seen from the empty side, so its right-hand normal points outward.
struct Mesh {
  std::vector<LatticePoint> vertices;
  std::vector<std::array<std::uint32_t, 4>> faces;
};

Mesh extract_surface(const VoxelGrid& grid);

/// "v x y z" lines followed by "f a b c d" lines (1-based indices).
std::string write_obj(const Mesh& mesh);

struct ComponentReport {
  std::size_t component_count = 0;
  /// Voxel count per component, in order of each component's first voxel.
  std::vector<std::size_t> component_sizes;
  /// Components without any voxel on the base plane k = 0.
  std::size_t floating_count = 0;
};

/// Face-adjacent (6-connected) components of the occupied voxels.
ComponentReport connected_components(const VoxelGrid& grid);

/// Reorders axes: output axis a takes input axis perm[a]. perm must be a
/// permutation of {0, 1, 2}.
VoxelGrid permute_axes(const VoxelGrid& grid, const std::array<int, 3>& perm);

/// Cyclic relabelling that moves `down` onto K, so that the base plane used
/// by connected_components is the face orthogonal to `down`.
VoxelGrid orient_down(const VoxelGrid& grid, Axis down);

}  // namespace shadowcarve
