// Copyright 2026 The maxleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "maxleak/core.hpp"
#include "maxleak/design.hpp"

namespace maxleak {

/// A linear program in the form
///   maximize objective . x
///   subject to a_ub x <= b_ub, a_eq x = b_eq, x >= 0.
/// lower_bounds, when present, must be all zero; the field records the
/// variable bounds explicitly.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> a_ub;
  std::vector<double> b_ub;
  std::vector<std::vector<double>> a_eq;
  std::vector<double> b_eq;
  std::vector<double> lower_bounds;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
  }
  return "?";
}

struct LpSolution {
  double value = 0.0;
  std::vector<double> x;
  LpStatus status = LpStatus::Optimal;
  /// Pivot sequence (row, column) across both phases. Identical inputs
  /// produce identical sequences.
  std::vector<std::pair<int, int>> pivots;
};

namespace detail {

inline void validate_lp(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  if (n == 0) fail(Errc::SchemaError, "objective must be nonempty");
  if (lp.a_ub.size() != lp.b_ub.size()) {
    fail(Errc::SchemaError, "inequality rows and bounds differ in count");
  }
  if (lp.a_eq.size() != lp.b_eq.size()) {
    fail(Errc::SchemaError, "equality rows and bounds differ in count");
  }
  for (const auto& row : lp.a_ub) {
    if (row.size() != n) fail(Errc::SchemaError, "inequality row width mismatch");
  }
  for (const auto& row : lp.a_eq) {
    if (row.size() != n) fail(Errc::SchemaError, "equality row width mismatch");
  }
  if (!lp.lower_bounds.empty()) {
    if (lp.lower_bounds.size() != n) {
      fail(Errc::SchemaError, "lower bound width mismatch");
    }
    for (double lb : lp.lower_bounds) {
      if (lb != 0.0) fail(Errc::SchemaError, "only zero lower bounds supported");
    }
  }
}

/// Dense simplex tableau shared by both phases. Reduced costs are recomputed
/// from scratch every iteration; the entering column is the lowest-index
/// improving one and ratio-test ties go to the lowest basis index (Bland), so
/// runs are deterministic and finite.
struct SimplexTableau {
  static constexpr double kPivotTol = 1e-11;
  static constexpr double kReducedCostTol = 1e-9;

  std::vector<std::vector<double>> a;  // rows x ncols
  std::vector<double> rhs;             // nonnegative throughout
  std::vector<int> basis;              // basic column per row
  std::vector<char> is_basic;          // per column
  std::size_t ncols = 0;
  std::vector<std::pair<int, int>>* pivot_log = nullptr;

  std::size_t rows() const { return a.size(); }

  void pivot(std::size_t row, std::size_t col) {
    const double p = a[row][col];
    if (std::abs(p) < kPivotTol) {
      fail(Errc::NumericalBreakdown, "pivot below 1e-11");
    }
    if (pivot_log) {
      pivot_log->emplace_back(static_cast<int>(row), static_cast<int>(col));
    }
    const double inv = 1.0 / p;
    for (std::size_t j = 0; j < ncols; ++j) a[row][j] *= inv;
    rhs[row] *= inv;
    a[row][col] = 1.0;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == row) continue;
      const double f = a[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < ncols; ++j) a[i][j] -= f * a[row][j];
      a[i][col] = 0.0;
      rhs[i] -= f * rhs[row];
      if (rhs[i] < 0.0 && rhs[i] > -1e-12) rhs[i] = 0.0;
    }
    is_basic[static_cast<std::size_t>(basis[row])] = 0;
    basis[row] = static_cast<int>(col);
    is_basic[col] = 1;
  }

  /// Maximizes c over the current tableau. Returns false when unbounded.
  bool maximize(const std::vector<double>& c) {
    const std::size_t max_iter = 200 * (rows() + ncols) + 1000;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
      int enter = -1;
      for (std::size_t j = 0; j < ncols; ++j) {
        if (is_basic[j]) continue;
        double reduced = c[j];
        for (std::size_t i = 0; i < rows(); ++i) {
          const double cb = c[static_cast<std::size_t>(basis[i])];
          if (cb != 0.0) reduced -= cb * a[i][j];
        }
        if (reduced > kReducedCostTol) {
          enter = static_cast<int>(j);
          break;
        }
      }
      if (enter < 0) return true;

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      bool only_tiny_pivots = false;
      for (std::size_t i = 0; i < rows(); ++i) {
        const double aij = a[i][static_cast<std::size_t>(enter)];
        if (aij > kPivotTol) {
          const double ratio = rhs[i] / aij;
          const double tie = 1e-12 * (1.0 + std::abs(best_ratio));
          if (leave < 0 || ratio < best_ratio - tie) {
            leave = static_cast<int>(i);
            best_ratio = ratio;
          } else if (ratio <= best_ratio + tie &&
                     basis[i] < basis[static_cast<std::size_t>(leave)]) {
            leave = static_cast<int>(i);
            best_ratio = std::min(best_ratio, ratio);
          }
        } else if (aij > 0.0) {
          only_tiny_pivots = true;
        }
      }
      if (leave < 0) {
        if (only_tiny_pivots) {
          fail(Errc::NumericalBreakdown, "pivot below 1e-11");
        }
        return false;
      }
      pivot(static_cast<std::size_t>(leave), static_cast<std::size_t>(enter));
    }
    fail(Errc::NumericalBreakdown, "iteration limit exceeded");
  }
};

}  // namespace detail

/// Two-phase dense simplex with Bland's rule. Pivots smaller than 1e-11 are
/// refused. Intended for the small dense programs this library produces, not
/// as a general-purpose solver.
inline LpSolution simplex_solve(const LinearProgram& lp) {
  detail::validate_lp(lp);
  constexpr double kFeasTol = 1e-8;

  const std::size_t n = lp.objective.size();
  const std::size_t m_ub = lp.a_ub.size();
  const std::size_t m_eq = lp.a_eq.size();
  const std::size_t m = m_ub + m_eq;

  LpSolution sol;
  if (m == 0) {
    // No constraints: the optimum is at the origin unless some objective
    // coefficient is positive, in which case the program is unbounded.
    for (double c : lp.objective) {
      if (c > detail::SimplexTableau::kReducedCostTol) {
        sol.status = LpStatus::Unbounded;
        return sol;
      }
    }
    sol.x.assign(n, 0.0);
    return sol;
  }

  // Column layout: structural [0, n), slack [n, n + m_ub), artificial after.
  // Rows with a negative right-hand side are negated first; their slack then
  // carries a -1 and the row needs an artificial, as do all equality rows.
  std::vector<std::size_t> art_rows;
  for (std::size_t i = 0; i < m_ub; ++i) {
    if (lp.b_ub[i] < 0) art_rows.push_back(i);
  }
  for (std::size_t r = 0; r < m_eq; ++r) art_rows.push_back(m_ub + r);
  const std::size_t art_start = n + m_ub;

  detail::SimplexTableau t;
  t.ncols = art_start + art_rows.size();
  t.a.assign(m, std::vector<double>(t.ncols, 0.0));
  t.rhs.assign(m, 0.0);
  t.basis.assign(m, -1);
  t.is_basic.assign(t.ncols, 0);
  t.pivot_log = &sol.pivots;

  for (std::size_t i = 0; i < m_ub; ++i) {
    const double sign = lp.b_ub[i] < 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) t.a[i][j] = sign * lp.a_ub[i][j];
    t.a[i][n + i] = sign;
    t.rhs[i] = sign * lp.b_ub[i];
  }
  for (std::size_t r = 0; r < m_eq; ++r) {
    const std::size_t i = m_ub + r;
    const double sign = lp.b_eq[r] < 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) t.a[i][j] = sign * lp.a_eq[r][j];
    t.rhs[i] = sign * lp.b_eq[r];
  }
  for (std::size_t k = 0; k < art_rows.size(); ++k) {
    t.a[art_rows[k]][art_start + k] = 1.0;
    t.basis[art_rows[k]] = static_cast<int>(art_start + k);
  }
  for (std::size_t i = 0; i < m_ub; ++i) {
    if (t.basis[i] < 0) t.basis[i] = static_cast<int>(n + i);
  }
  for (int c : t.basis) t.is_basic[static_cast<std::size_t>(c)] = 1;

  if (!art_rows.empty()) {
    std::vector<double> phase1(t.ncols, 0.0);
    for (std::size_t j = art_start; j < t.ncols; ++j) phase1[j] = -1.0;
    if (!t.maximize(phase1)) {
      fail(Errc::NumericalBreakdown, "phase 1 unbounded");
    }
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (t.basis[i] >= static_cast<int>(art_start)) infeasibility += t.rhs[i];
    }
    if (infeasibility > kFeasTol) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    // Swap any artificial still basic (at level zero) for a real column, and
    // drop rows that turn out to be redundant.
    std::vector<std::size_t> redundant;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (t.basis[i] < static_cast<int>(art_start)) continue;
      int enter = -1;
      for (std::size_t j = 0; j < art_start; ++j) {
        if (t.is_basic[j]) continue;
        if (std::abs(t.a[i][j]) > detail::SimplexTableau::kPivotTol) {
          enter = static_cast<int>(j);
          break;
        }
      }
      if (enter >= 0) {
        t.pivot(i, static_cast<std::size_t>(enter));
      } else {
        redundant.push_back(i);
      }
    }
    for (auto it = redundant.rbegin(); it != redundant.rend(); ++it) {
      t.a.erase(t.a.begin() + static_cast<std::ptrdiff_t>(*it));
      t.rhs.erase(t.rhs.begin() + static_cast<std::ptrdiff_t>(*it));
      t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(*it));
    }
    // Artificial columns are no longer needed.
    for (auto& row : t.a) row.resize(art_start);
    t.ncols = art_start;
    t.is_basic.assign(t.ncols, 0);
    for (int c : t.basis) t.is_basic[static_cast<std::size_t>(c)] = 1;
  }

  std::vector<double> phase2(t.ncols, 0.0);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = lp.objective[j];
  if (!t.maximize(phase2)) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  sol.x.assign(n, 0.0);
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (t.basis[i] >= 0 && t.basis[i] < static_cast<int>(n)) {
      sol.x[static_cast<std::size_t>(t.basis[i])] = t.rhs[i];
    }
  }
  double value = 0.0;
  for (std::size_t j = 0; j < n; ++j) value += lp.objective[j] * sol.x[j];
  sol.value = value;
  sol.status = LpStatus::Optimal;

  // The basic solution must satisfy the original program tightly.
  double residual = 0.0;
  for (std::size_t i = 0; i < m_ub; ++i) {
    double ax = 0.0;
    for (std::size_t j = 0; j < n; ++j) ax += lp.a_ub[i][j] * sol.x[j];
    residual = std::max(residual, ax - lp.b_ub[i]);
  }
  for (std::size_t r = 0; r < m_eq; ++r) {
    double ax = 0.0;
    for (std::size_t j = 0; j < n; ++j) ax += lp.a_eq[r][j] * sol.x[j];
    residual = std::max(residual, std::abs(ax - lp.b_eq[r]));
  }
  for (double xj : sol.x) residual = std::max(residual, -xj);
  if (residual > kFeasTol) {
    fail(Errc::NumericalBreakdown,
         "feasibility residual " + std::to_string(residual));
  }
  return sol;
}

/// Exact linearization of the fixed-prior design problem. Variables are the
/// n^2 mechanism entries followed by n per-column bound variables m_j:
///   maximize  sum_j pi_j p_jj
///   s.t.      p_ij <= m_j for all i, j
///             sum_j m_j <= e^gamma
///             sum_j p_ij = 1 for each row i
///             p, m >= 0.
/// At the optimum the bound variables tighten to the column maxima, so the
/// optimum equals the largest disclosed mass within the budget.
inline LinearProgram build_dmin_lp(const LeakageBudget& budget, const Prior& pi) {
  if (budget.n != pi.size()) {
    fail(Errc::DimensionMismatch,
         "budget over " + std::to_string(budget.n) + " symbols vs prior of length " +
             std::to_string(pi.size()));
  }
  const std::size_t n = pi.size();
  const std::size_t num_vars = n * n + n;
  LinearProgram lp;
  lp.objective.assign(num_vars, 0.0);
  for (std::size_t j = 0; j < n; ++j) lp.objective[j * n + j] = pi[j];

  lp.a_ub.reserve(n * n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> row(num_vars, 0.0);
      row[i * n + j] = 1.0;
      row[n * n + j] = -1.0;
      lp.a_ub.push_back(std::move(row));
      lp.b_ub.push_back(0.0);
    }
  }
  std::vector<double> budget_row(num_vars, 0.0);
  for (std::size_t j = 0; j < n; ++j) budget_row[n * n + j] = 1.0;
  lp.a_ub.push_back(std::move(budget_row));
  lp.b_ub.push_back(budget.exp_gamma);

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(num_vars, 0.0);
    for (std::size_t j = 0; j < n; ++j) row[i * n + j] = 1.0;
    lp.a_eq.push_back(std::move(row));
    lp.b_eq.push_back(1.0);
  }
  lp.lower_bounds.assign(num_vars, 0.0);
  return lp;
}

/// Optimal distortion according to the LP, 1 - (LP optimum). Shares no code
/// with the closed form.
inline double lp_oracle_d_min(const LeakageBudget& budget, const Prior& pi) {
  const LpSolution sol = simplex_solve(build_dmin_lp(budget, pi));
  if (sol.status != LpStatus::Optimal) {
    fail(Errc::NumericalBreakdown,
         std::string("design LP ended ") + to_string(sol.status));
  }
  return 1.0 - sol.value;
}

/// Recovers the mechanism block from a design LP solution. Entries within
/// 1e-9 of zero are clamped and rows are renormalized before validation.
inline Mechanism mechanism_from_lp_solution(const LpSolution& sol, std::size_t n) {
  if (sol.status != LpStatus::Optimal || sol.x.size() < n * n) {
    fail(Errc::NumericalBreakdown, "no optimal LP point to recover from");
  }
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double v = sol.x[i * n + j];
      if (v < 0.0) {
        if (v < -1e-9) fail(Errc::NumericalBreakdown, "negative LP entry");
        v = 0.0;
      }
      rows[i][j] = v;
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      fail(Errc::NumericalBreakdown, "LP row sum " + std::to_string(sum));
    }
    for (double& v : rows[i]) v /= sum;
  }
  return make_mechanism(rows);
}

/// Grid oracle for worst-case design over a segment: evaluates the disclosed
/// mass on an even delta grid (endpoints included) and returns one minus the
/// smallest value. Accurate to O(1/steps).
inline double grid_dmin_robust(const LeakageBudget& budget,
                               const PriorSet::Segment& s, std::size_t steps) {
  steps = std::max<std::size_t>(steps, 2);
  double min_mass = std::numeric_limits<double>::infinity();
  const double span = s.delta_max - s.delta_min;
  for (std::size_t i = 0; i < steps; ++i) {
    const double delta =
        s.delta_min + span * static_cast<double>(i) / static_cast<double>(steps - 1);
    const Prior p = segment_prior_at(s, delta);
    min_mass = std::min(min_mass, 1.0 - d_min_fixed_prior(budget, p));
  }
  return 1.0 - min_mass;
}

}  // namespace maxleak
