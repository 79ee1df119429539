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
#include <limits>
#include <stdexcept>
#include <vector>

namespace shadowcarve {

enum class RowSense { LessEqual, GreaterEqual };

struct SparseTerm {
  std::size_t var = 0;
  double coef = 0.0;
};

struct LinearRow {
  std::vector<SparseTerm> terms;
  RowSense sense = RowSense::LessEqual;
  double rhs = 0.0;
};

/// maximize objective . x subject to rows and lower <= x <= upper.
/// Every lower bound must be finite; upper bounds may be +infinity.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<LinearRow> rows;

  /// Largest amount by which `x` violates a row or a bound.
  double max_violation(const std::vector<double>& x) const;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded };

struct SimplexOptions {
  /// Primal feasibility tolerance. A phase-one residual above this value
  /// declares the program infeasible.
  double tolerance = 1e-6;
  /// Zero means derive a limit from the problem dimensions.
  std::size_t max_iterations = 0;
};

struct SimplexResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  std::size_t iterations = 0;
};

/// The iteration limit was reached before optimality was proven.
class StalledError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense two-phase primal simplex with native variable bounds. Pricing is
/// Dantzig's largest-coefficient rule; after a run of degenerate pivots it
/// switches to Bland's smallest-index rule until the objective moves again.
/// Deterministic for identical input.
SimplexResult solve_simplex(const LinearProgram& program,
                            const SimplexOptions& options = {});

}  // namespace shadowcarve
