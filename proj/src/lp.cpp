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

#include "shadowcarve/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace shadowcarve {

namespace {

RowFamily upper_family(Axis axis) {
  switch (axis) {
    case Axis::I: return RowFamily::UpperP;
    case Axis::J: return RowFamily::UpperQ;
    case Axis::K: return RowFamily::UpperR;
  }
  return RowFamily::UpperP;
}

RowFamily lower_family(Axis axis) {
  switch (axis) {
    case Axis::I: return RowFamily::LowerP;
    case Axis::J: return RowFamily::LowerQ;
    case Axis::K: return RowFamily::LowerR;
  }
  return RowFamily::LowerP;
}

// Voxels casting onto pixel (r, c) of the plane orthogonal to `axis`.
std::vector<SparseTerm> line_terms(Axis axis, std::size_t r, std::size_t c,
                                   std::size_t n) {
  std::vector<SparseTerm> terms;
  terms.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t var = 0;
    switch (axis) {
      case Axis::I: var = flatten_index(t, r, c, n); break;
      case Axis::J: var = flatten_index(r, t, c, n); break;
      case Axis::K: var = flatten_index(r, c, t, n); break;
    }
    terms.push_back({var, 1.0});
  }
  return terms;
}

std::string var_name(std::size_t flat, std::size_t n) {
  Index3 idx = unflatten_index(flat, n);
  return "x_" + std::to_string(idx.i) + "_" + std::to_string(idx.j) + "_" +
         std::to_string(idx.k);
}

}  // namespace

std::string_view family_label(RowFamily family) {
  switch (family) {
    case RowFamily::UpperP: return "upper_P";
    case RowFamily::UpperQ: return "upper_Q";
    case RowFamily::UpperR: return "upper_R";
    case RowFamily::LowerP: return "lower_P";
    case RowFamily::LowerQ: return "lower_Q";
    case RowFamily::LowerR: return "lower_R";
  }
  return "unknown";
}

std::size_t LPProblem::count(RowFamily family) const {
  return static_cast<std::size_t>(
      std::count_if(labels.begin(), labels.end(),
                    [family](const RowLabel& l) { return l.family == family; }));
}

void ThresholdConfig::validate() const {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw ContractError("threshold lambda must lie in (0, 1)");
  }
  if (!(epsilon > 0.0)) throw ContractError("epsilon must be positive");
}

LPProblem build_lp(const TargetSet& targets, const LpBuildOptions& options) {
  if (targets.p.empty()) throw ContractError("cannot build an LP with n = 0");
  targets.validate();
  if (options.rhs_relaxation < 0.0) {
    throw ContractError("rhs relaxation must be non-negative");
  }
  const std::size_t n = targets.n();
  const double nd = static_cast<double>(n);
  const double relax = options.rhs_relaxation;

  LPProblem problem;
  problem.n = n;
  LinearProgram& lp = problem.program;
  lp.num_vars = n * n * n;
  lp.objective.assign(lp.num_vars, 1.0);
  lp.lower.assign(lp.num_vars, 0.0);
  lp.upper.assign(lp.num_vars, 1.0);

  // Upper families first (P, Q, R), then lower families, each in pixel
  // row-major order.
  for (int pass = 0; pass < 2; ++pass) {
    const bool upper = pass == 0;
    for (Axis axis : kAxes) {
      const Bitmap* plane = targets.plane(axis);
      if (plane == nullptr) continue;
      if (upper) problem.provided_planes.push_back(axis);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          const bool lit = plane->at(r, c) != 0;
          if (!options.full_matrix && upper == lit) continue;
          LinearRow row;
          row.terms = line_terms(axis, r, c, n);
          if (upper) {
            row.sense = RowSense::LessEqual;
            row.rhs = nd * (lit ? 1.0 : 0.0) + relax;
          } else {
            row.sense = RowSense::GreaterEqual;
            row.rhs = (lit ? 1.0 : 0.0) - relax;
          }
          lp.rows.push_back(std::move(row));
          problem.labels.push_back(
              {upper ? upper_family(axis) : lower_family(axis), r, c});
        }
      }
    }
  }
  return problem;
}

LPSolution solve_lp(const LPProblem& problem, double epsilon) {
  SimplexOptions options;
  options.tolerance = epsilon;
  SimplexResult result = solve_simplex(problem.program, options);

  LPSolution solution;
  solution.n = problem.n;
  solution.iterations = result.iterations;
  if (result.status == SolveStatus::Unbounded) {
    // Every variable is boxed, so this signals numerical breakdown.
    throw StalledError("simplex reported an unbounded voxel program");
  }
  if (result.status == SolveStatus::Infeasible) {
    solution.status = LpStatus::Infeasible;
    return solution;
  }
  solution.status = LpStatus::Optimal;
  solution.x = std::move(result.x);
  solution.objective_value = result.objective;
  return solution;
}

VoxelGrid threshold(const LPSolution& solution, const ThresholdConfig& config) {
  config.validate();
  if (solution.status != LpStatus::Optimal) {
    throw ContractError("cannot threshold an infeasible LP solution");
  }
  const std::size_t n = solution.n;
  if (solution.x.size() != n * n * n) {
    throw ContractError("LP solution length does not match n^3");
  }
  VoxelGrid grid(n);
  auto cells = grid.mutable_cells();
  for (std::size_t f = 0; f < solution.x.size(); ++f) {
    cells[f] = solution.x[f] >= config.lambda ? 1 : 0;
  }
  return grid;
}

CarveReport solve_pipeline(const TargetSet& targets,
                           const ThresholdConfig& config,
                           const PipelineOptions& options) {
  targets.validate();
  config.validate();
  if (targets.n() > options.size_cap) {
    throw LpSizeCapError(
        "LP solver refuses n = " + std::to_string(targets.n()) +
        " (cap " + std::to_string(options.size_cap) +
        "); use the carving solver for this resolution");
  }
  LPProblem problem = build_lp(targets, options.build);
  LPSolution solution = solve_lp(problem, config.epsilon);
  if (solution.status == LpStatus::Infeasible) {
    throw InfeasibleError("target shadows are mutually unsatisfiable");
  }
  return make_report(threshold(solution, config), targets);
}

std::string write_lp_text(const LPProblem& problem) {
  const LinearProgram& lp = problem.program;
  const std::size_t n = problem.n;
  std::ostringstream out;
  out.precision(17);
  out << "\\ voxel shadow program, n = " << n << "\n";
  out << "Maximize\n obj:";
  for (std::size_t v = 0; v < lp.num_vars; ++v) {
    out << (v == 0 ? " " : " + ") << var_name(v, n);
  }
  out << "\nSubject To\n";
  for (std::size_t r = 0; r < lp.rows.size(); ++r) {
    const RowLabel& label = problem.labels[r];
    out << " " << family_label(label.family) << "_" << label.row << "_"
        << label.col << ":";
    const auto& terms = lp.rows[r].terms;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      out << (t == 0 ? " " : " + ") << var_name(terms[t].var, n);
    }
    out << (lp.rows[r].sense == RowSense::LessEqual ? " <= " : " >= ")
        << lp.rows[r].rhs << "\n";
  }
  out << "Bounds\n";
  for (std::size_t v = 0; v < lp.num_vars; ++v) {
    out << " " << lp.lower[v] << " <= " << var_name(v, n)
        << " <= " << lp.upper[v] << "\n";
  }
  out << "End\n";
  return out.str();
}

}  // namespace shadowcarve
