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
#include <string>
#include <vector>

#include "maxleak/channel.hpp"
#include "maxleak/core.hpp"
#include "maxleak/majorization.hpp"

namespace maxleak {

/// Worst-case expected distortion of a mechanism over all full-support
/// priors: 1 - min_j p_jj. This is a supremum; no full-support prior attains
/// it, since the extremal prior puts all mass on one symbol.
inline double d_max(const Mechanism& P) {
  if (!P.square()) {
    fail(Errc::NotSquare, std::to_string(P.n_rows()) + "x" +
                              std::to_string(P.n_cols()) + " mechanism");
  }
  const std::vector<double> diag = P.diagonal();
  return 1.0 - *std::min_element(diag.begin(), diag.end());
}

/// Comparison of two mechanisms by worst-case distortion. value_order is the
/// direct comparison of the two suprema; diagonal_certificate reports the
/// weak super-majorization relation between the diagonals, read as "second
/// relative to first": Precedes certifies d_max(second) <= d_max(first).
/// Whenever the certificate is decisive the direct comparison agrees with it.
struct DmaxComparison {
  double d_max_first;
  double d_max_second;
  OrderVerdict value_order;
  OrderVerdict diagonal_certificate;
};

inline DmaxComparison compare_dmax(const Mechanism& first,
                                   const Mechanism& second) {
  if (!first.square() || !second.square()) {
    fail(Errc::NotSquare, "comparison needs square mechanisms");
  }
  if (first.n_rows() != second.n_rows()) {
    fail(Errc::DimensionMismatch, std::to_string(first.n_rows()) + " vs " +
                                      std::to_string(second.n_rows()));
  }
  const double a = d_max(first);
  const double b = d_max(second);
  OrderVerdict value_order = OrderVerdict::Equal;
  if (std::abs(a - b) > kMajorizationTol) {
    value_order = b < a ? OrderVerdict::Precedes : OrderVerdict::Succeeds;
  }
  const OrderVerdict certificate =
      weak_super_majorizes(first.diagonal(), second.diagonal());
  return DmaxComparison{a, b, value_order, certificate};
}

/// The mechanism that spreads the privacy budget uniformly: every diagonal
/// entry is e^gamma / n and each row splits its residual evenly over the
/// other columns. Its expected distortion is 1 - e^gamma / n under every
/// prior, and no mechanism within the budget has a smaller worst case.
inline Mechanism uniform_budget_mechanism(std::size_t n,
                                          const LeakageBudget& budget) {
  if (n < 2) fail(Errc::TooShort, "alphabet needs at least 2 symbols");
  if (budget.exp_gamma > static_cast<double>(n) + kLeakageSlack) {
    fail(Errc::BudgetExceedsAlphabet,
         "e^gamma=" + std::to_string(budget.exp_gamma) + " over " +
             std::to_string(n) + " symbols");
  }
  const double diag =
      std::min(budget.exp_gamma, static_cast<double>(n)) / static_cast<double>(n);
  // Off-diagonal entries never exceed the diagonal: (1 - g) / (n - 1) <= g
  // is equivalent to e^gamma >= 1, which holds for every budget.
  const double off = (1.0 - diag) / static_cast<double>(n - 1);
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, off));
  for (std::size_t i = 0; i < n; ++i) rows[i][i] = diag;
  return make_mechanism(rows);
}

}  // namespace maxleak
