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

#include "shadowcarve/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <set>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include "shadowcarve/carve.hpp"

namespace shadowcarve {

namespace {

// glibc serves blocks above 32 MB with a fresh mmap, so every repetition at
// large n pays first-touch page faults that smaller sizes never see. Routing
// all sizes through the reusable heap keeps min-of-reps a warm measurement.
void keep_large_blocks_on_heap() {
#if defined(__GLIBC__)
  constexpr int kLimit = 1 << 30;
  mallopt(M_MMAP_THRESHOLD, kLimit);
  mallopt(M_TRIM_THRESHOLD, kLimit);
#endif
}

}  // namespace

std::string_view to_string(SolverKind solver) {
  return solver == SolverKind::Lp ? "lp" : "carve";
}

SolverKind parse_solver(std::string_view name) {
  if (name == "lp") return SolverKind::Lp;
  if (name == "carve") return SolverKind::Carve;
  throw ContractError("unknown solver '" + std::string(name) + "'");
}

double half_coverage_density(std::size_t n) {
  return 1.0 - std::pow(0.5, 1.0 / static_cast<double>(n));
}

VoxelGrid random_grid(std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(std::clamp(density, 0.0, 1.0));
  VoxelGrid grid(n);
  for (auto& cell : grid.mutable_cells()) cell = coin(rng) ? 1 : 0;
  return grid;
}

TargetGenerator random_consistent_targets(std::uint64_t seed, double density) {
  return [seed, density](std::size_t n) {
    const double rho = density > 0.0 ? density : half_coverage_density(n);
    VoxelGrid grid = random_grid(n, rho, seed ^ (0x9e3779b97f4a7c15ull * n));
    TargetSet targets;
    targets.p = project(grid, Axis::I);
    targets.q = project(grid, Axis::J);
    targets.r = project(grid, Axis::K);
    return targets;
  };
}

std::vector<BenchSample> time_solver(SolverKind solver,
                                     const std::vector<std::size_t>& sizes,
                                     const TargetGenerator& generator,
                                     const BenchOptions& options) {
  if (options.repetitions < 3) {
    throw ContractError("benchmarks need at least 3 repetitions");
  }
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    if (sizes[s] == 0) throw ContractError("benchmark sizes must be positive");
    if (s > 0 && sizes[s] <= sizes[s - 1]) {
      throw ContractError("benchmark sizes must be strictly ascending");
    }
  }
  if (solver == SolverKind::Lp) {
    for (std::size_t n : sizes) {
      if (n > options.lp_size_cap) {
        throw LpSizeCapError("LP benchmark refuses n = " + std::to_string(n) +
                             " (cap " + std::to_string(options.lp_size_cap) +
                             ")");
      }
    }
  }

  keep_large_blocks_on_heap();

  using Clock = std::chrono::steady_clock;
  std::vector<BenchSample> samples;
  for (std::size_t n : sizes) {
    const TargetSet targets = generator(n);
    PipelineOptions pipeline;
    pipeline.size_cap = options.lp_size_cap;
    double best = std::numeric_limits<double>::infinity();
    std::size_t sink = 0;
    for (std::size_t rep = 0; rep < options.repetitions; ++rep) {
      const auto start = Clock::now();
      CarveReport report = solver == SolverKind::Carve
                               ? carve3(targets)
                               : solve_pipeline(targets, options.threshold,
                                                pipeline);
      const auto stop = Clock::now();
      sink += report.consistent ? 1 : 0;
      best = std::min(best, std::chrono::duration<double>(stop - start).count());
    }
    if (sink != options.repetitions) {
      throw ContractError("benchmark generator produced inconsistent targets");
    }
    samples.push_back({solver, n, best, options.repetitions});
  }
  return samples;
}

ExponentFit fit_exponent(const std::vector<BenchSample>& samples) {
  std::set<std::size_t> sizes;
  for (const auto& s : samples) {
    if (s.n == 0 || !(s.wall_seconds > 0.0)) {
      throw ContractError("fit_exponent needs positive sizes and times");
    }
    sizes.insert(s.n);
  }
  if (sizes.size() < 3) {
    throw ContractError("fit_exponent needs at least 3 distinct sizes");
  }

  const double count = static_cast<double>(samples.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& s : samples) {
    mean_x += std::log(static_cast<double>(s.n));
    mean_y += std::log(s.wall_seconds);
  }
  mean_x /= count;
  mean_y /= count;

  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& s : samples) {
    const double dx = std::log(static_cast<double>(s.n)) - mean_x;
    const double dy = std::log(s.wall_seconds) - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

std::string samples_to_csv(const std::vector<BenchSample>& samples) {
  std::string out = "solver,n,seconds\n";
  char buffer[64];
  for (const auto& s : samples) {
    std::snprintf(buffer, sizeof buffer, "%.9g", s.wall_seconds);
    out += std::string(to_string(s.solver)) + "," + std::to_string(s.n) + "," +
           buffer + "\n";
  }
  return out;
}

std::string summarize(const std::vector<BenchSample>& samples,
                      const ExponentFit* fit) {
  std::string out;
  char line[160];
  for (const auto& s : samples) {
    std::snprintf(line, sizeof line, "%-6s n=%-5zu %12.6f s  (min of %zu)\n",
                  std::string(to_string(s.solver)).c_str(), s.n,
                  s.wall_seconds, s.repetitions);
    out += line;
  }
  if (fit != nullptr) {
    std::snprintf(line, sizeof line,
                  "fitted exponent %.3f (intercept %.3f, r^2 %.4f)\n",
                  fit->slope, fit->intercept, fit->r_squared);
    out += line;
  }
  return out;
}

}  // namespace shadowcarve
