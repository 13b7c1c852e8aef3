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

#include "maxleak/core.hpp"

namespace maxleak {

/// Maximal leakage of a mechanism in nats: the natural log of the sum of
/// column maxima. e^leakage is the overall privacy budget the mechanism
/// spends, and each column maximum is the cost of disclosing that output.
inline double maximal_leakage(const Mechanism& P) {
  double total = 0.0;
  for (std::size_t j = 0; j < P.n_cols(); ++j) {
    double colmax = 0.0;
    for (std::size_t i = 0; i < P.n_rows(); ++i) {
      colmax = std::max(colmax, P.at(i, j));
    }
    total += colmax;
  }
  return std::log(total);
}

/// Upper bound on the maximal leakage of any mechanism of this shape,
/// min(log n, log m). The lower bound is always zero.
inline double leakage_upper_bound(const Mechanism& P) {
  return std::min(std::log(static_cast<double>(P.n_rows())),
                  std::log(static_cast<double>(P.n_cols())));
}

/// Expected Hamming distortion of a square mechanism under a prior,
/// 1 - sum_j p_jj pi_j. Depends on the mechanism only through its diagonal.
inline double expected_distortion(const Mechanism& P, const Prior& pi) {
  if (!P.square() || P.n_rows() != pi.size()) {
    fail(Errc::DimensionMismatch,
         "mechanism " + std::to_string(P.n_rows()) + "x" +
             std::to_string(P.n_cols()) + " vs prior of length " +
             std::to_string(pi.size()));
  }
  double kept = 0.0;
  for (std::size_t j = 0; j < pi.size(); ++j) kept += P.at(j, j) * pi[j];
  return 1.0 - kept;
}

/// Whether the mechanism's maximal leakage fits the budget, with kLeakageSlack
/// of slack for float noise.
inline bool in_budget(const Mechanism& P, const LeakageBudget& budget) {
  if (!P.square() || P.n_rows() != budget.n) {
    fail(Errc::DimensionMismatch,
         "mechanism " + std::to_string(P.n_rows()) + "x" +
             std::to_string(P.n_cols()) + " vs budget over " +
             std::to_string(budget.n) + " symbols");
  }
  return maximal_leakage(P) <= budget.effective_gamma + kLeakageSlack;
}

}  // namespace maxleak
