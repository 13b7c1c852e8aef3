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
#include <string>
#include <vector>

#include "maxleak/channel.hpp"
#include "maxleak/core.hpp"
#include "maxleak/majorization.hpp"

namespace maxleak {

namespace detail {

inline void check_budget_prior(const LeakageBudget& budget, const Prior& pi) {
  if (budget.n != pi.size()) {
    fail(Errc::DimensionMismatch,
         "budget over " + std::to_string(budget.n) + " symbols vs prior of length " +
             std::to_string(pi.size()));
  }
}

}  // namespace detail

/// Smallest expected Hamming distortion achievable under the budget for a
/// known prior: 1 - (sum of the k largest prior entries
/// + (e^gamma - k) times the (k+1)-th largest).
inline double d_min_fixed_prior(const LeakageBudget& budget, const Prior& pi) {
  detail::check_budget_prior(budget, pi);
  const SortedView view = sort_desc(pi.probs());
  const int k = budget.k;
  double kept = 0.0;
  for (int j = 0; j < k; ++j) kept += view.sorted_desc[static_cast<std::size_t>(j)];
  kept += (budget.exp_gamma - k) * view.sorted_desc[static_cast<std::size_t>(k)];
  return std::clamp(1.0 - kept, 0.0, 1.0);
}

/// A canonical optimal mechanism for a known prior. The k most likely symbols
/// are disclosed verbatim, the (k+1)-th keeps e^gamma - k of its mass, and
/// everything else is suppressed:
///   - rows of disclosed symbols are unit rows on their own column,
///   - the partially disclosed row spreads its residual uniformly over the
///     disclosed columns,
///   - each suppressed row spreads all of its mass uniformly over the
///     disclosed columns.
/// This keeps every column maximum on the diagonal, spends the budget
/// exactly, and leaves n - (k+1) all-zero columns.
inline Mechanism optimal_mechanism(const LeakageBudget& budget, const Prior& pi) {
  detail::check_budget_prior(budget, pi);
  const std::size_t n = pi.size();
  const SortedView view = sort_desc(pi.probs());
  const std::size_t k = static_cast<std::size_t>(budget.k);
  const double partial = std::clamp(budget.exp_gamma - budget.k, 0.0, 1.0);

  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t idx = view.index_order[j];
    rows[idx][idx] = 1.0;
  }
  const std::size_t part_idx = view.index_order[k];
  rows[part_idx][part_idx] = partial;
  const double residual_share = (1.0 - partial) / static_cast<double>(k);
  for (std::size_t j = 0; j < k; ++j) {
    rows[part_idx][view.index_order[j]] = residual_share;
  }
  const double suppressed_share = 1.0 / static_cast<double>(k);
  for (std::size_t j = k + 1; j < n; ++j) {
    const std::size_t idx = view.index_order[j];
    for (std::size_t t = 0; t < k; ++t) {
      rows[idx][view.index_order[t]] = suppressed_share;
    }
  }
  return make_mechanism(rows);
}

/// Checks whether a candidate mechanism has the structure of an optimum for
/// the given budget and prior:
///   1. its diagonal matches the disclose/partial/suppress pattern under some
///      ordering of the prior that is consistent with ties,
///   2. every column maximum sits on the diagonal,
///   3. its maximal leakage fits the budget.
/// Tied prior entries are exchangeable, so the diagonal pattern is accepted
/// whenever the fully disclosed positions hold a valid top-k of the prior and
/// the partially disclosed position holds a valid (k+1)-th value.
inline bool verify_optimality_certificate(const Mechanism& P,
                                          const LeakageBudget& budget,
                                          const Prior& pi) {
  if (!P.square()) fail(Errc::DimensionMismatch, "certificate needs a square mechanism");
  if (P.n_rows() != pi.size() || budget.n != pi.size()) {
    fail(Errc::DimensionMismatch,
         "mechanism " + std::to_string(P.n_rows()) + "x" + std::to_string(P.n_cols()) +
             " vs prior of length " + std::to_string(pi.size()) + " vs budget over " +
             std::to_string(budget.n));
  }
  constexpr double value_tol = 1e-9;  // tolerance on diagonal entries
  constexpr double tie_tol = 1e-12;   // tolerance on prior comparisons
  const std::size_t n = pi.size();
  const std::size_t k = static_cast<std::size_t>(budget.k);
  const double partial = std::clamp(budget.exp_gamma - budget.k, 0.0, 1.0);
  const std::vector<double> diag = P.diagonal();

  std::vector<std::size_t> ones;
  std::vector<std::size_t> zeros;
  std::vector<std::size_t> mids;
  for (std::size_t j = 0; j < n; ++j) {
    if (diag[j] >= 1.0 - value_tol) {
      ones.push_back(j);
    } else if (diag[j] <= value_tol) {
      zeros.push_back(j);
    } else if (std::abs(diag[j] - partial) <= value_tol) {
      mids.push_back(j);
    } else {
      return false;
    }
  }

  // A set of positions is a valid top block of the prior when every entry
  // inside is at least every entry outside (up to ties).
  const auto valid_top_block = [&](const std::vector<std::size_t>& block) {
    double min_inside = 2.0;
    for (std::size_t j : block) min_inside = std::min(min_inside, pi[j]);
    for (std::size_t j = 0; j < n; ++j) {
      if (std::find(block.begin(), block.end(), j) != block.end()) continue;
      if (pi[j] > min_inside + tie_tol) return false;
    }
    return true;
  };

  if (partial >= 1.0 - value_tol) {
    // Full spend on the (k+1)-th symbol: k+1 fully disclosed positions.
    if (ones.size() != k + 1 || zeros.size() != n - k - 1 || !mids.empty()) {
      return false;
    }
    if (!valid_top_block(ones)) return false;
  } else if (partial <= value_tol) {
    // The (k+1)-th symbol gets nothing and merges with the suppressed ones.
    if (ones.size() != k || zeros.size() != n - k || !mids.empty()) return false;
    if (!valid_top_block(ones)) return false;
  } else {
    if (ones.size() != k || mids.size() != 1 || zeros.size() != n - k - 1) {
      return false;
    }
    if (!valid_top_block(ones)) return false;
    // The partially disclosed position must hold a valid (k+1)-th value.
    const std::size_t mid = mids.front();
    for (std::size_t j : zeros) {
      if (pi[j] > pi[mid] + tie_tol) return false;
    }
  }

  for (std::size_t j = 0; j < n; ++j) {
    double colmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) colmax = std::max(colmax, P.at(i, j));
    if (colmax > diag[j] + value_tol) return false;
  }
  return in_budget(P, budget);
}

/// Bundles the closed form and the constructed mechanism for a known prior.
inline DesignResult design(const LeakageBudget& budget, const Prior& pi) {
  Mechanism mech = optimal_mechanism(budget, pi);
  const double leakage = maximal_leakage(mech);
  return DesignResult{d_min_fixed_prior(budget, pi), std::move(mech),
                      std::nullopt, leakage};
}

}  // namespace maxleak
