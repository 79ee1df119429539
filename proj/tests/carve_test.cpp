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

#include <gtest/gtest.h>

#include <array>

#include "test_support.hpp"

namespace {

using namespace shadowcarve;
using shadowcarve::testing::brute_carve;
using shadowcarve::testing::brute_project;
using shadowcarve::testing::footprint;
using shadowcarve::testing::projections_of;
using shadowcarve::testing::random_bitmap;
using shadowcarve::testing::random_voxels;

TargetSet random_targets(std::mt19937_64& rng, std::size_t n, int planes,
                         double density) {
  TargetSet t;
  t.p = random_bitmap(rng, n, density);
  if (planes >= 2) t.q = random_bitmap(rng, n, density);
  if (planes >= 3) t.r = random_bitmap(rng, n, density);
  return t;
}

TEST(Carve3, AllOnesSinglePlane) {
  TargetSet t{Bitmap(2, 1), std::nullopt, std::nullopt};
  CarveReport rep = carve3(t);
  EXPECT_EQ(rep.grid, VoxelGrid(2, 1));
  EXPECT_TRUE(rep.consistent);
  ASSERT_EQ(rep.per_plane_similarity.size(), 1u);
  EXPECT_EQ(rep.per_plane_similarity.at(Axis::I), 1.0);
}

TEST(Carve3, SinglePixelKeepsOneLine) {
  TargetSet t{Bitmap::from_rows({{1, 0}, {0, 0}}), std::nullopt, std::nullopt};
  VoxelGrid expected(2);
  expected.set(0, 0, 0, true);
  expected.set(1, 0, 0, true);
  ASSERT_EQ(brute_carve(t), expected);
  EXPECT_EQ(carve3(t).grid, expected);
  EXPECT_TRUE(carve3(t).consistent);
}

TEST(Carve3, IdentityPlanes) {
  Bitmap eye = Bitmap::from_rows({{1, 0}, {0, 1}});
  TargetSet t{eye, eye, std::nullopt};
  VoxelGrid expected(2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        expected.set(i, j, k, eye.at(j, k) && eye.at(i, k));
  ASSERT_EQ(expected.count(), 2u);
  ASSERT_TRUE(expected.at(0, 0, 0) && expected.at(1, 1, 1));
  CarveReport rep = carve3(t);
  EXPECT_EQ(rep.grid, expected);
  EXPECT_EQ(project(rep.grid, Axis::I), eye);
  EXPECT_EQ(project(rep.grid, Axis::J), eye);
  EXPECT_TRUE(rep.consistent);
}

TEST(Carve3, InconsistentPairYieldsEmptyGrid) {
  TargetSet t{Bitmap::from_rows({{1, 0}, {0, 0}}),
              Bitmap::from_rows({{0, 0}, {0, 1}}), std::nullopt};
  CarveReport rep = carve3(t);
  EXPECT_EQ(rep.grid.count(), 0u);
  EXPECT_FALSE(rep.consistent);
  EXPECT_LT(rep.per_plane_similarity.at(Axis::I), 1.0);
  EXPECT_LT(rep.per_plane_similarity.at(Axis::J), 1.0);
}

TEST(Carve3, RejectsMalformedTargets) {
  TargetSet t{Bitmap(2, 1), std::nullopt, Bitmap(2, 1)};
  EXPECT_THROW(carve3(t), ContractError);
  TargetSet u{Bitmap(2, 1), Bitmap(3, 1), std::nullopt};
  EXPECT_THROW(carve3(u), ContractError);
}

TEST(Carve3, MatchesDeletionLoop) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 8;
    TargetSet t = random_targets(rng, n, 1 + trial % 3, 0.6);
    ASSERT_EQ(carve3(t).grid, brute_carve(t));
    ASSERT_EQ(carve_grid(t), brute_carve(t));
  }
}

TEST(Carve3, RoundTripReproducesProjections) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + trial % 15;
    VoxelGrid g = random_voxels(rng, n, 0.05 + 0.3 * (trial % 4) / 3.0);
    TargetSet t = projections_of(g);
    CarveReport rep = carve3(t);
    ASSERT_TRUE(rep.consistent) << "trial " << trial;
    for (Axis a : kAxes) {
      ASSERT_EQ(brute_project(rep.grid, a), *t.plane(a));
    }
    for (std::size_t f = 0; f < g.cells().size(); ++f) {
      ASSERT_GE(rep.grid.cells()[f], g.cells()[f]);
    }
  }
}

TEST(Carve3, ProjectionsStayInsideTargets) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + trial % 10;
    TargetSet t = random_targets(rng, n, 1 + trial % 3, 0.7);
    VoxelGrid g = carve3(t).grid;
    for (Axis a : kAxes) {
      const Bitmap* target = t.plane(a);
      if (target == nullptr) continue;
      Bitmap shadow = brute_project(g, a);
      for (std::size_t f = 0; f < shadow.bits().size(); ++f) {
        ASSERT_LE(shadow.bits()[f], target->bits()[f]);
      }
    }
  }
}

TEST(Carve3, MaximalExhaustiveUpToFour) {
  std::mt19937_64 rng(24);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 60; ++trial) {
      TargetSet t = random_targets(rng, n, 1 + trial % 3, 0.6);
      VoxelGrid g = carve3(t).grid;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k) {
            if (g.at(i, j, k)) continue;
            bool violates = false;
            for (Axis a : kAxes) {
              const Bitmap* target = t.plane(a);
              if (target == nullptr) continue;
              auto [r, c] = footprint(a, i, j, k);
              if (!target->at(r, c)) violates = true;
            }
            ASSERT_TRUE(violates) << "voxel could be added without harm";
          }
    }
  }
}

HyperGrid bitmap_image(const Bitmap& b) { return HyperGrid::from_bitmap(b); }

TEST(CarveNd, ThreeDimensionsAgreeWithCarve3) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const int planes = 1 + trial % 3;
    TargetSet t = random_targets(rng, n, planes, 0.6);
    std::vector<AxisImage> images;
    for (std::size_t a = 0; a < 3; ++a) {
      const Bitmap* b = t.plane(static_cast<Axis>(a));
      if (b != nullptr) images.push_back({a, bitmap_image(*b)});
    }
    if (images.size() == 3) images.pop_back();  // d' must stay below d
    TargetSet trimmed = t;
    if (planes == 3) trimmed.r.reset();
    ASSERT_EQ(carve_nd(3, n, images).to_voxels(), carve3(trimmed).grid);
  }
}

TEST(CarveNd, TwoDimensionalHandCase) {
  HyperGrid v(1, 3);
  const std::array<int, 3> values{1, 0, 1};
  for (std::size_t j = 0; j < 3; ++j) {
    const std::size_t idx[1] = {j};
    v.set(idx, values[j]);
  }
  HyperGrid m = carve_nd(2, 3, {{0, v}});
  ASSERT_EQ(m.dim(), 2u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const std::size_t idx[2] = {i, j};
      EXPECT_EQ(m.at(idx), values[j]) << i << "," << j;
    }
}

TEST(CarveNd, UnconstrainedFourDimensional) {
  HyperGrid ones(3, 2, 1);
  EXPECT_EQ(carve_nd(4, 2, {{1, ones}}), HyperGrid(4, 2, 1));
}

TEST(CarveNd, FourDimensionalProjectionsBounded) {
  std::mt19937_64 rng(26);
  std::bernoulli_distribution coin(0.3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 4;
    HyperGrid g(4, n);
    for (auto& c : g.mutable_cells()) c = coin(rng);
    std::vector<AxisImage> exact;
    std::vector<AxisImage> noisy;
    for (std::size_t a = 0; a < 3; ++a) {
      HyperGrid img = project(g, a);
      exact.push_back({a, img});
      HyperGrid rnd(3, n);
      for (auto& c : rnd.mutable_cells()) c = coin(rng) || coin(rng);
      noisy.push_back({a, rnd});
    }
    HyperGrid fit = carve_nd(4, n, exact);
    for (const auto& img : exact) ASSERT_EQ(project(fit, img.axis), img.image);
    HyperGrid loose = carve_nd(4, n, noisy);
    for (const auto& img : noisy) {
      HyperGrid shadow = project(loose, img.axis);
      for (std::size_t f = 0; f < shadow.cells().size(); ++f) {
        ASSERT_LE(shadow.cells()[f], img.image.cells()[f]);
      }
    }
  }
}

TEST(CarveNd, RejectsBadInput) {
  HyperGrid img(2, 3, 1);
  EXPECT_THROW(carve_nd(3, 3, {}), ContractError);
  EXPECT_THROW(carve_nd(3, 3, {{0, img}, {0, img}}), ContractError);
  EXPECT_THROW(carve_nd(3, 3, {{0, img}, {1, img}, {2, img}}), ContractError);
  EXPECT_THROW(carve_nd(3, 4, {{0, img}}), ContractError);
  EXPECT_THROW(carve_nd(3, 3, {{3, img}}), ContractError);
}

TEST(Dilate, Examples) {
  std::mt19937_64 rng(27);
  VoxelGrid g = random_voxels(rng, 3, 0.5);
  EXPECT_EQ(dilate(g, 1), g);
  EXPECT_EQ(dilate(VoxelGrid(1, 1), 2), VoxelGrid(2, 1));

  VoxelGrid one(2);
  one.set(1, 0, 0, true);
  VoxelGrid d = dilate(one, 2);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k) {
        const bool inside = i >= 2 && j < 2 && k < 2;
        ASSERT_EQ(d.at(i, j, k), inside ? 1 : 0);
      }
  EXPECT_THROW(dilate(one, 0), ContractError);
}

TEST(Dilate, CommutesWithProjection) {
  std::mt19937_64 rng(28);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const std::size_t factor = 1 + trial % 4;
    VoxelGrid g = random_voxels(rng, n, 0.2);
    VoxelGrid d = dilate(g, factor);
    for (Axis a : kAxes) {
      ASSERT_EQ(brute_project(d, a),
                resample_nearest(brute_project(g, a), n * factor));
    }
  }
}

// Every subvoxel removed relative to the dilated grid must be dark in every
// provided high-resolution target. Survivors must have a lit footprint.
void check_antialias(const VoxelGrid& coarse, const TargetSet& hi,
                     std::size_t factor, const VoxelGrid& out) {
  VoxelGrid base = dilate(coarse, factor);
  const std::size_t m = base.size();
  ASSERT_EQ(out.size(), m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        bool any_lit = false;
        for (Axis a : kAxes) {
          const Bitmap* plane = hi.plane(a);
          if (plane == nullptr) continue;
          auto [r, c] = footprint(a, i, j, k);
          if (plane->at(r, c)) any_lit = true;
        }
        ASSERT_LE(out.at(i, j, k), base.at(i, j, k));
        if (base.at(i, j, k) && !out.at(i, j, k)) {
          ASSERT_FALSE(any_lit);
        }
        if (base.at(i, j, k) && any_lit) {
          ASSERT_TRUE(out.at(i, j, k));
        }
      }
}

TEST(AntialiasCarve, FactorOneIsLitFootprintMask) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 6;
    VoxelGrid coarse = random_voxels(rng, n, 0.5);
    TargetSet t = random_targets(rng, n, 1 + trial % 3, 0.4);
    VoxelGrid out = antialias_carve(coarse, t, 1);
    check_antialias(coarse, t, 1, out);
  }
}

TEST(AntialiasCarve, IdentityTargetKeepsDiagonal) {
  TargetSet t{Bitmap::from_rows({{1, 0}, {0, 1}}), std::nullopt, std::nullopt};
  VoxelGrid out = antialias_carve(VoxelGrid(1, 1), t, 2);
  EXPECT_EQ(out.count(), 4u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(out.at(i, j, k), j == k);
}

TEST(AntialiasCarve, EmptyCoarseStaysEmpty) {
  std::mt19937_64 rng(30);
  TargetSet t = random_targets(rng, 6, 3, 0.9);
  EXPECT_EQ(antialias_carve(VoxelGrid(2), t, 3).count(), 0u);
}

TEST(AntialiasCarve, SafetyAndNoLossOfSimilarity) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const std::size_t factor = 1 + trial % 4;
    TargetSet hi = random_targets(rng, n * factor, 1 + trial % 3, 0.5);
    VoxelGrid coarse = carve3(hi.resampled(n)).grid;
    VoxelGrid out = antialias_carve(coarse, hi, factor);
    check_antialias(coarse, hi, factor, out);
    VoxelGrid base = dilate(coarse, factor);
    for (Axis a : kAxes) {
      const Bitmap* plane = hi.plane(a);
      if (plane == nullptr) continue;
      ASSERT_GE(similarity(brute_project(out, a), *plane),
                similarity(brute_project(base, a), *plane));
    }
  }
}

TEST(AntialiasCarve, RejectsResolutionMismatch) {
  TargetSet t{Bitmap(3, 1), std::nullopt, std::nullopt};
  EXPECT_THROW(antialias_carve(VoxelGrid(2, 1), t, 2), ContractError);
  EXPECT_THROW(antialias_carve(VoxelGrid(3, 1), t, 0), ContractError);
}

}  // namespace
