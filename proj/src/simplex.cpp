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

#include "shadowcarve/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shadowcarve/core.hpp"

namespace shadowcarve {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr std::size_t kDegenerateRunLimit = 50;

enum class NonbasicAt : unsigned char { Lower, Upper, Basic };

// Column layout: [structural | one slack per row | artificials].
// Each row reads  a.x + s = b  with s in [0, inf) for <= rows and
// s in (-inf, 0] for >= rows.
class Tableau {
 public:
  Tableau(const LinearProgram& lp, const SimplexOptions& options)
      : options_(options), rows_(lp.rows.size()) {
    const std::size_t nx = lp.num_vars;
    lower_ = lp.lower;
    upper_ = lp.upper;
    lower_.resize(nx + rows_);
    upper_.resize(nx + rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (lp.rows[r].sense == RowSense::LessEqual) {
        lower_[nx + r] = 0.0;
        upper_[nx + r] = kInf;
      } else {
        lower_[nx + r] = -kInf;
        upper_[nx + r] = 0.0;
      }
    }

    // Starting point: structurals at their lower bound, slacks absorb the
    // residual when they can; otherwise an artificial takes it.
    std::vector<double> residual(rows_);
    std::vector<int> art_sign(rows_, 0);
    std::size_t num_art = 0;
    for (std::size_t r = 0; r < rows_; ++r) {
      double activity = 0.0;
      for (const auto& t : lp.rows[r].terms) activity += t.coef * lp.lower[t.var];
      residual[r] = lp.rows[r].rhs - activity;
      bool fits = residual[r] >= lower_[nx + r] && residual[r] <= upper_[nx + r];
      if (!fits) {
        art_sign[r] = residual[r] > 0 ? 1 : -1;
        ++num_art;
      }
    }

    structural_ = nx;
    art_begin_ = nx + rows_;
    cols_ = art_begin_ + num_art;
    lower_.resize(cols_, 0.0);
    upper_.resize(cols_, kInf);

    table_.assign(rows_ * cols_, 0.0);
    value_.assign(cols_, 0.0);
    state_.assign(cols_, NonbasicAt::Lower);
    basis_.assign(rows_, 0);
    beta_.assign(rows_, 0.0);

    for (std::size_t j = 0; j < nx; ++j) value_[j] = lower_[j];

    std::size_t next_art = art_begin_;
    for (std::size_t r = 0; r < rows_; ++r) {
      double* row = table_.data() + r * cols_;
      const std::size_t slack = nx + r;
      if (art_sign[r] == 0) {
        for (const auto& t : lp.rows[r].terms) row[t.var] += t.coef;
        row[slack] = 1.0;
        basis_[r] = slack;
        state_[slack] = NonbasicAt::Basic;
        beta_[r] = residual[r];
      } else {
        // Slack parks at its finite bound (zero); divide the row by the
        // artificial's sign so the basis column is +1.
        const double sign = art_sign[r];
        for (const auto& t : lp.rows[r].terms) row[t.var] += t.coef / sign;
        row[slack] = 1.0 / sign;
        state_[slack] = lower_[slack] == 0.0 ? NonbasicAt::Lower
                                             : NonbasicAt::Upper;
        value_[slack] = 0.0;
        const std::size_t art = next_art++;
        row[art] = 1.0;
        basis_[r] = art;
        state_[art] = NonbasicAt::Basic;
        beta_[r] = residual[r] / sign;
      }
    }

    iteration_limit_ = options.max_iterations != 0
                           ? options.max_iterations
                           : 50 * (rows_ + cols_) + 1000;
  }

  SimplexResult solve(const LinearProgram& lp) {
    SimplexResult result;
    if (cols_ > art_begin_) {
      std::vector<double> phase_one(cols_, 0.0);
      for (std::size_t j = art_begin_; j < cols_; ++j) phase_one[j] = -1.0;
      set_objective(phase_one);
      if (run() == SolveStatus::Unbounded) {
        throw StalledError("phase one reported an unbounded direction");
      }
      double infeasibility = 0.0;
      for (std::size_t j = art_begin_; j < cols_; ++j) {
        infeasibility += current_value(j);
      }
      if (infeasibility > options_.tolerance) {
        result.status = SolveStatus::Infeasible;
        result.iterations = iterations_;
        return result;
      }
      // Artificials are pinned at zero from here on.
      for (std::size_t j = art_begin_; j < cols_; ++j) upper_[j] = 0.0;
    }

    std::vector<double> phase_two(cols_, 0.0);
    std::copy(lp.objective.begin(), lp.objective.end(), phase_two.begin());
    set_objective(phase_two);
    result.status = run();
    result.iterations = iterations_;
    result.x.resize(structural_);
    for (std::size_t j = 0; j < structural_; ++j) {
      result.x[j] = current_value(j);
      result.objective += lp.objective[j] * result.x[j];
    }
    return result;
  }

 private:
  double current_value(std::size_t col) const {
    if (state_[col] != NonbasicAt::Basic) return value_[col];
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] == col) return beta_[r];
    }
    return 0.0;
  }

  void set_objective(const std::vector<double>& cost) {
    degenerate_run_ = 0;
    bland_ = false;
    cost_ = cost;
    reduced_ = cost;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double cb = cost_[basis_[r]];
      if (cb == 0.0) continue;
      const double* row = table_.data() + r * cols_;
      for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= cb * row[j];
    }
    for (std::size_t r = 0; r < rows_; ++r) reduced_[basis_[r]] = 0.0;
  }

  // Entering column: largest reduced-cost violation (Dantzig), or the
  // smallest eligible index while Bland's rule is active. Returns cols_ when
  // the current basis is optimal.
  std::size_t choose_entering(int& direction) const {
    std::size_t best = cols_;
    double best_score = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (state_[j] == NonbasicAt::Basic) continue;
      if (lower_[j] == upper_[j]) continue;
      double score = 0.0;
      int dir = 0;
      if (state_[j] == NonbasicAt::Lower && reduced_[j] > kDualTol) {
        score = reduced_[j];
        dir = 1;
      } else if (state_[j] == NonbasicAt::Upper && reduced_[j] < -kDualTol) {
        score = -reduced_[j];
        dir = -1;
      } else {
        continue;
      }
      if (bland_) {
        direction = dir;
        return j;
      }
      if (score > best_score) {
        best_score = score;
        best = j;
        direction = dir;
      }
    }
    return best;
  }

  SolveStatus run() {
    while (true) {
      int direction = 0;
      const std::size_t q = choose_entering(direction);
      if (q == cols_) return SolveStatus::Optimal;
      if (++iterations_ > iteration_limit_) {
        throw StalledError("simplex iteration limit of " +
                           std::to_string(iteration_limit_) + " reached");
      }

      // Ratio test. Moving x_q by direction*t changes basic r by
      // -direction * t * table[r][q].
      double step = upper_[q] - lower_[q];
      std::size_t leave_row = rows_;
      bool leave_to_upper = false;
      for (std::size_t r = 0; r < rows_; ++r) {
        const double alpha = direction * table_[r * cols_ + q];
        const std::size_t b = basis_[r];
        double limit;
        bool to_upper;
        if (alpha > kPivotTol) {
          if (lower_[b] == -kInf) continue;
          limit = (beta_[r] - lower_[b]) / alpha;
          to_upper = false;
        } else if (alpha < -kPivotTol) {
          if (upper_[b] == kInf) continue;
          limit = (upper_[b] - beta_[r]) / -alpha;
          to_upper = true;
        } else {
          continue;
        }
        limit = std::max(limit, 0.0);
        // A tie with the bound flip keeps the flip; ties between rows go to
        // the smallest basic variable index.
        const bool take =
            leave_row == rows_
                ? limit < step
                : limit < step || (limit == step && b < basis_[leave_row]);
        if (take) {
          step = limit;
          leave_row = r;
          leave_to_upper = to_upper;
        }
      }
      if (step == kInf) return SolveStatus::Unbounded;

      // Bland's rule takes over after a run of degenerate steps and stays
      // until the objective moves again, which rules out cycling.
      if (step > 0.0) {
        degenerate_run_ = 0;
        bland_ = false;
      } else if (++degenerate_run_ >= kDegenerateRunLimit) {
        bland_ = true;
      }

      const double delta = direction * step;
      if (delta != 0.0) {
        for (std::size_t r = 0; r < rows_; ++r) {
          beta_[r] -= delta * table_[r * cols_ + q];
        }
      }

      if (leave_row == rows_) {
        // Bound flip: the entering variable crosses its whole range.
        if (state_[q] == NonbasicAt::Lower) {
          state_[q] = NonbasicAt::Upper;
          value_[q] = upper_[q];
        } else {
          state_[q] = NonbasicAt::Lower;
          value_[q] = lower_[q];
        }
        continue;
      }

      const std::size_t leaving = basis_[leave_row];
      const double entering_value = value_[q] + delta;
      state_[leaving] = leave_to_upper ? NonbasicAt::Upper : NonbasicAt::Lower;
      value_[leaving] = leave_to_upper ? upper_[leaving] : lower_[leaving];
      pivot(leave_row, q);
      basis_[leave_row] = q;
      state_[q] = NonbasicAt::Basic;
      beta_[leave_row] = entering_value;
    }
  }

  void pivot(std::size_t p, std::size_t q) {
    double* prow = table_.data() + p * cols_;
    const double inv = 1.0 / prow[q];
    for (std::size_t j = 0; j < cols_; ++j) prow[j] *= inv;
    prow[q] = 1.0;

    // Restrict the elimination to nonzero entries of the pivot row.
    nonzero_.clear();
    for (std::size_t j = 0; j < cols_; ++j) {
      if (prow[j] != 0.0) nonzero_.push_back(j);
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == p) continue;
      double* row = table_.data() + r * cols_;
      const double factor = row[q];
      if (factor == 0.0) continue;
      for (std::size_t j : nonzero_) row[j] -= factor * prow[j];
      row[q] = 0.0;
    }
    const double dq = reduced_[q];
    if (dq != 0.0) {
      for (std::size_t j : nonzero_) reduced_[j] -= dq * prow[j];
      reduced_[q] = 0.0;
    }
  }

  SimplexOptions options_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t structural_ = 0;
  std::size_t art_begin_ = 0;
  std::size_t iterations_ = 0;
  std::size_t iteration_limit_ = 0;
  std::size_t degenerate_run_ = 0;
  bool bland_ = false;

  std::vector<double> table_;  // rows_ x cols_, row-major, B^-1 A
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> value_;  // nonbasic values
  std::vector<NonbasicAt> state_;
  std::vector<std::size_t> basis_;
  std::vector<double> beta_;  // basic values per row
  std::vector<double> cost_;
  std::vector<double> reduced_;
  std::vector<std::size_t> nonzero_;
};

void check_program(const LinearProgram& lp) {
  if (lp.objective.size() != lp.num_vars || lp.lower.size() != lp.num_vars ||
      lp.upper.size() != lp.num_vars) {
    throw ContractError("linear program vectors disagree with num_vars");
  }
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    if (!std::isfinite(lp.lower[j])) {
      throw ContractError("variable lower bounds must be finite");
    }
    if (lp.upper[j] < lp.lower[j]) {
      throw ContractError("variable upper bound below lower bound");
    }
  }
  for (const auto& row : lp.rows) {
    if (!std::isfinite(row.rhs)) throw ContractError("row rhs must be finite");
    for (const auto& t : row.terms) {
      if (t.var >= lp.num_vars) {
        throw ContractError("row references an unknown variable");
      }
    }
  }
}

}  // namespace

double LinearProgram::max_violation(const std::vector<double>& x) const {
  if (x.size() != num_vars) throw ContractError("solution length mismatch");
  double worst = 0.0;
  for (std::size_t j = 0; j < num_vars; ++j) {
    worst = std::max(worst, lower[j] - x[j]);
    worst = std::max(worst, x[j] - upper[j]);
  }
  for (const auto& row : rows) {
    double activity = 0.0;
    for (const auto& t : row.terms) activity += t.coef * x[t.var];
    double v = row.sense == RowSense::LessEqual ? activity - row.rhs
                                                : row.rhs - activity;
    worst = std::max(worst, v);
  }
  return worst;
}

SimplexResult solve_simplex(const LinearProgram& program,
                            const SimplexOptions& options) {
  check_program(program);
  if (!(options.tolerance > 0.0)) {
    throw ContractError("simplex tolerance must be positive");
  }
  Tableau tableau(program, options);
  return tableau.solve(program);
}

}  // namespace shadowcarve
