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

// Worst-case design when the prior is only known to lie on a segment.

#include <cmath>
#include <cstdio>

#include "maxleak/maxleak.hpp"

int main() {
  using namespace maxleak;

  // Priors of the form base + delta * direction for delta in [0, 0.12].
  const PriorSet set =
      make_segment({0.5, 0.25, 0.15, 0.1}, {-1.5, 0.5, 0.5, 0.5}, 0.0, 0.12);
  const LeakageBudget budget = make_budget(std::log(2.0), set.dimension());

  const RobustReport report = d_min_robust(budget, set);
  std::printf("worst-case optimal distortion: %.6f (path %s)\n", report.d_min,
              to_string(report.path_used));
  std::printf("worst prior:");
  for (double v : report.worst_prior.probs()) std::printf(" %.6f", v);
  std::printf("\n");
  std::printf("upper bound for any set: %.6f\n",
              uniform_budget_upper_bound(budget));

  std::printf("mechanism for the worst prior:\n");
  for (std::size_t i = 0; i < report.mechanism.n_rows(); ++i) {
    for (std::size_t j = 0; j < report.mechanism.n_cols(); ++j) {
      std::printf("  %.4f", report.mechanism.at(i, j));
    }
    std::printf("\n");
  }
  return 0;
}
