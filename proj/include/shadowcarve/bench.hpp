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
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "shadowcarve/core.hpp"
#include "shadowcarve/lp.hpp"

namespace shadowcarve {

enum class SolverKind { Lp, Carve };

std::string_view to_string(SolverKind solver);
/// Accepts "lp" and "carve".
SolverKind parse_solver(std::string_view name);

struct BenchSample {
  SolverKind solver = SolverKind::Carve;
  std::size_t n = 0;
  /// Fastest of `repetitions` runs.
  double wall_seconds = 0.0;
  std::size_t repetitions = 0;
};

/// log(t) = intercept + slope * log(n), natural logarithms.
struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

using TargetGenerator = std::function<TargetSet(std::size_t n)>;

/// Random grid occupancy that leaves about half of each projection lit:
/// 1 - 0.5^(1/n).
double half_coverage_density(std::size_t n);

/// Three-plane targets taken from projections of a random grid, so every
/// generated set is consistent. A non-positive density selects
/// half_coverage_density(n). Deterministic for a given seed.
TargetGenerator random_consistent_targets(std::uint64_t seed,
                                          double density = 0.0);

/// Random grid with each voxel set independently with probability density.
VoxelGrid random_grid(std::size_t n, double density, std::uint64_t seed);

struct BenchOptions {
  std::size_t repetitions = 3;
  std::size_t lp_size_cap = kDefaultLpSizeCap;
  ThresholdConfig threshold;
};

/// One sample per size; only the solve is timed. Sizes must be strictly
/// ascending and repetitions >= 3. On glibc this raises the process-wide
/// mmap and trim thresholds so large grids reuse heap pages between runs.
std::vector<BenchSample> time_solver(SolverKind solver,
                                     const std::vector<std::size_t>& sizes,
                                     const TargetGenerator& generator,
                                     const BenchOptions& options = {});

/// Least-squares line through (log n, log seconds). Needs at least three
/// distinct sizes and positive times.
ExponentFit fit_exponent(const std::vector<BenchSample>& samples);

/// "solver,n,seconds" header plus one row per sample.
std::string samples_to_csv(const std::vector<BenchSample>& samples);

std::string summarize(const std::vector<BenchSample>& samples,
                      const ExponentFit* fit);

}  // namespace shadowcarve
