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

// Designs the distortion-optimal mechanism for a known prior and prints it.

#include <cmath>
#include <cstdio>

#include "maxleak/maxleak.hpp"

int main() {
  using namespace maxleak;

  const Prior pi = make_prior({0.45, 0.25, 0.2, 0.06, 0.04});
  const LeakageBudget budget = make_budget(std::log(3.2), pi.size());

  std::printf("budget: gamma=%.6f e^gamma=%.3f k=%d\n", budget.effective_gamma,
              budget.exp_gamma, budget.k);
  std::printf("optimal distortion: %.6f\n", d_min_fixed_prior(budget, pi));

  const Mechanism mech = optimal_mechanism(budget, pi);
  std::printf("mechanism (leakage %.6f):\n", maximal_leakage(mech));
  for (std::size_t i = 0; i < mech.n_rows(); ++i) {
    for (std::size_t j = 0; j < mech.n_cols(); ++j) {
      std::printf("  %.4f", mech.at(i, j));
    }
    std::printf("\n");
  }
  std::printf("distortion under the prior: %.6f\n",
              expected_distortion(mech, pi));
  return 0;
}
