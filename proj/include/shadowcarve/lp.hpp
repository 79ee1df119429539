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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shadowcarve/carve.hpp"
#include "shadowcarve/core.hpp"
#include "shadowcarve/simplex.hpp"

namespace shadowcarve {

// Relaxed voxel program: one variable per voxel in [0, 1], maximize the sum.
// For every provided plane and pixel (r, c) the line of voxels orthogonal
// to the plane gets
//   upper:  sum(line) <= n * pixel   (a dark pixel empties its line)
//   lower:  sum(line) >= pixel       (a lit pixel needs some voxel)

enum class RowFamily { UpperP, UpperQ, UpperR, LowerP, LowerQ, LowerR };

std::string_view family_label(RowFamily family);

struct RowLabel {
  RowFamily family = RowFamily::UpperP;
  std::size_t row = 0;  // pixel row in the plane's bitmap
  std::size_t col = 0;  // pixel column
};

struct LpBuildOptions {
  /// Keep rows that can never bind (upper rows of lit pixels, lower rows of
  /// dark pixels). Off by default.
  bool full_matrix = false;
  /// Loosens every row by this amount: rhs + e for <=, rhs - e for >=.
  double rhs_relaxation = 0.0;
};

struct LPProblem {
  std::size_t n = 0;
  std::vector<Axis> provided_planes;
  /// Variable flatten_index(i, j, k, n) is voxel (i, j, k).
  LinearProgram program;
  /// Parallel to program.rows.
  std::vector<RowLabel> labels;

  std::size_t count(RowFamily family) const;
};

enum class LpStatus { Optimal, Infeasible };

struct LPSolution {
  LpStatus status = LpStatus::Infeasible;
  std::size_t n = 0;
  std::vector<double> x;
  double objective_value = 0.0;
  std::size_t iterations = 0;
};

struct ThresholdConfig {
  double lambda = 0.5;
  double epsilon = 1e-6;

  /// Requires 0 < lambda < 1 and epsilon > 0.
  void validate() const;
};

/// Raised when the LP path is asked to solve above its size cap.
class LpSizeCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The targets admit no feasible relaxed solution.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultLpSizeCap = 16;

LPProblem build_lp(const TargetSet& targets, const LpBuildOptions& options = {});

/// Solves with the bundled simplex; `epsilon` is its feasibility tolerance.
/// StalledError propagates if the iteration limit is hit.
LPSolution solve_lp(const LPProblem& problem, double epsilon = 1e-6);

/// grid[i][j][k] = 1 iff x[flatten_index(i, j, k, n)] >= lambda.
VoxelGrid threshold(const LPSolution& solution, const ThresholdConfig& config);

struct PipelineOptions {
  std::size_t size_cap = kDefaultLpSizeCap;
  LpBuildOptions build;
};

/// build_lp -> solve_lp -> threshold -> report. Throws LpSizeCapError above
/// the cap and InfeasibleError when the program has no solution.
CarveReport solve_pipeline(const TargetSet& targets,
                           const ThresholdConfig& config,
                           const PipelineOptions& options = {});

/// CPLEX LP text with rows named <family>_<row>_<col> and variables
/// x_<i>_<j>_<k>.
std::string write_lp_text(const LPProblem& problem);

}  // namespace shadowcarve
