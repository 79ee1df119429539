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

#include "shadowcarve/mesh.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace shadowcarve {

namespace {

class VertexPool {
 public:
  VertexPool(Mesh& mesh, std::size_t n) : mesh_(mesh), stride_(n + 1) {}

  std::uint32_t get(std::int64_t x, std::int64_t y, std::int64_t z) {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(x) * stride_ + static_cast<std::uint64_t>(y)) *
            stride_ +
        static_cast<std::uint64_t>(z);
    auto [it, inserted] =
        index_.try_emplace(key, static_cast<std::uint32_t>(mesh_.vertices.size()));
    if (inserted) mesh_.vertices.push_back({x, y, z});
    return it->second;
  }

 private:
  Mesh& mesh_;
  std::uint64_t stride_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

}  // namespace

Mesh extract_surface(const VoxelGrid& grid) {
  const std::size_t n = grid.size();
  const auto sn = static_cast<std::int64_t>(n);
  Mesh mesh;
  VertexPool pool(mesh, n);

  auto occupied = [&](std::int64_t i, std::int64_t j, std::int64_t k) {
    if (i < 0 || j < 0 || k < 0 || i >= sn || j >= sn || k >= sn) return false;
    return grid.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                   static_cast<std::size_t>(k)) != 0;
  };

  for (std::int64_t i = 0; i < sn; ++i) {
    for (std::int64_t j = 0; j < sn; ++j) {
      for (std::int64_t k = 0; k < sn; ++k) {
        if (!occupied(i, j, k)) continue;
        const std::array<std::int64_t, 3> cell{i, j, k};
        for (int axis = 0; axis < 3; ++axis) {
          // u, v complete a right-handed frame with the face normal.
          const int u = (axis + 1) % 3;
          const int v = (axis + 2) % 3;
          for (int side = 0; side < 2; ++side) {
            std::array<std::int64_t, 3> neighbor = cell;
            neighbor[axis] += side == 1 ? 1 : -1;
            if (occupied(neighbor[0], neighbor[1], neighbor[2])) continue;

            std::array<std::int64_t, 3> base = cell;
            base[axis] += side;
            auto corner = [&](int du, int dv) {
              std::array<std::int64_t, 3> p = base;
              p[u] += du;
              p[v] += dv;
              return pool.get(p[0], p[1], p[2]);
            };
            const std::uint32_t a = corner(0, 0);
            const std::uint32_t b = corner(1, 0);
            const std::uint32_t c = corner(1, 1);
            const std::uint32_t d = corner(0, 1);
            if (side == 1) {
              mesh.faces.push_back({a, b, c, d});
            } else {
              mesh.faces.push_back({a, d, c, b});
            }
          }
        }
      }
    }
  }
  return mesh;
}

std::string write_obj(const Mesh& mesh) {
  std::string out;
  out.reserve(mesh.vertices.size() * 16 + mesh.faces.size() * 24);
  for (const auto& p : mesh.vertices) {
    out += "v ";
    out += std::to_string(p.x);
    out += ' ';
    out += std::to_string(p.y);
    out += ' ';
    out += std::to_string(p.z);
    out += '\n';
  }
  for (const auto& f : mesh.faces) {
    out += 'f';
    for (std::uint32_t idx : f) {
      out += ' ';
      out += std::to_string(static_cast<std::uint64_t>(idx) + 1);
    }
    out += '\n';
  }
  return out;
}

ComponentReport connected_components(const VoxelGrid& grid) {
  const std::size_t n = grid.size();
  auto cells = grid.cells();
  std::vector<std::uint8_t> visited(cells.size(), 0);
  std::deque<std::size_t> queue;
  ComponentReport report;

  for (std::size_t start = 0; start < cells.size(); ++start) {
    if (!cells[start] || visited[start]) continue;
    std::size_t size = 0;
    bool grounded = false;
    visited[start] = 1;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::size_t f = queue.front();
      queue.pop_front();
      ++size;
      const Index3 at = unflatten_index(f, n);
      if (at.k == 0) grounded = true;
      auto visit = [&](std::size_t g) {
        if (cells[g] && !visited[g]) {
          visited[g] = 1;
          queue.push_back(g);
        }
      };
      if (at.i > 0) visit(f - n * n);
      if (at.i + 1 < n) visit(f + n * n);
      if (at.j > 0) visit(f - n);
      if (at.j + 1 < n) visit(f + n);
      if (at.k > 0) visit(f - 1);
      if (at.k + 1 < n) visit(f + 1);
    }
    ++report.component_count;
    report.component_sizes.push_back(size);
    if (!grounded) ++report.floating_count;
  }
  return report;
}

VoxelGrid permute_axes(const VoxelGrid& grid, const std::array<int, 3>& perm) {
  std::array<int, 3> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 3>{0, 1, 2}) {
    throw ContractError("axis permutation must be a permutation of 0, 1, 2");
  }
  const std::size_t n = grid.size();
  VoxelGrid out(n);
  std::array<std::size_t, 3> src{};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        const std::array<std::size_t, 3> dst{a, b, c};
        for (int axis = 0; axis < 3; ++axis) src[perm[axis]] = dst[axis];
        out.set(a, b, c, grid.at(src[0], src[1], src[2]));
      }
    }
  }
  return out;
}

VoxelGrid orient_down(const VoxelGrid& grid, Axis down) {
  switch (down) {
    case Axis::K: return grid;
    case Axis::I: return permute_axes(grid, {1, 2, 0});
    case Axis::J: return permute_axes(grid, {2, 0, 1});
  }
  return grid;
}

}  // namespace shadowcarve
