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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "maxleak/ordering.hpp"
#include "support.hpp"

using namespace maxleak;

namespace {

const Mechanism& example1_mechanism() {
  static const Mechanism m = make_mechanism({{0, 1.0 / 3, 1.0 / 3, 1.0 / 3},
                                             {0, 1, 0, 0},
                                             {0, 0, 1, 0},
                                             {0, 0.3, 0.2, 0.5}});
  return m;
}

}  // namespace

TEST_CASE("worst-case distortion of the reference mechanisms", "[ordering]") {
  const Mechanism identity = make_mechanism(
      {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK(d_max(identity) == Catch::Approx(0.0).margin(0.0));

  // A zero diagonal entry means some prior drives the distortion to one.
  CHECK(d_max(example1_mechanism()) == Catch::Approx(1.0).margin(0.0));

  const LeakageBudget budget = make_budget(std::log(2.5), 4);
  CHECK(d_max(uniform_budget_mechanism(4, budget)) ==
        Catch::Approx(0.375).margin(1e-12));

  CHECK_THROWS_AS(d_max(make_mechanism({{0.5, 0.25, 0.25}, {0.1, 0.5, 0.4}})),
                  Error);
}

TEST_CASE("comparison records certify the diagonal order", "[ordering]") {
  const LeakageBudget budget = make_budget(std::log(2.5), 4);
  const Mechanism qstar = uniform_budget_mechanism(4, budget);

  const DmaxComparison cmp = compare_dmax(example1_mechanism(), qstar);
  CHECK(cmp.diagonal_certificate == OrderVerdict::Precedes);
  CHECK(cmp.value_order == OrderVerdict::Precedes);
  CHECK(cmp.d_max_first == Catch::Approx(1.0).margin(0.0));
  CHECK(cmp.d_max_second == Catch::Approx(0.375).margin(1e-12));

  const DmaxComparison self = compare_dmax(qstar, qstar);
  CHECK(self.diagonal_certificate == OrderVerdict::Equal);
  CHECK(self.value_order == OrderVerdict::Equal);

  // Diagonals (0.9, 0.1) and (0.5, 0.4): increasing partial sums
  // (0.1, 1.0) vs (0.4, 0.9) cross, so no certificate, yet the direct
  // values still order the mechanisms.
  const Mechanism sharp = make_mechanism({{0.9, 0.1}, {0.9, 0.1}});
  const Mechanism flat = make_mechanism({{0.5, 0.5}, {0.6, 0.4}});
  const DmaxComparison mixed = compare_dmax(sharp, flat);
  CHECK(mixed.diagonal_certificate == OrderVerdict::Incomparable);
  CHECK(mixed.value_order == OrderVerdict::Precedes);
  CHECK(mixed.d_max_first == Catch::Approx(0.9).margin(1e-12));
  CHECK(mixed.d_max_second == Catch::Approx(0.6).margin(1e-12));
}

TEST_CASE("uniform-budget mechanism construction", "[ordering]") {
  // Full budget collapses to the identity.
  const Mechanism full = uniform_budget_mechanism(4, make_budget(std::log(4.0), 4));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(full.at(i, j) == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-12));
    }
  }

  const LeakageBudget budget = make_budget(std::log(2.5), 4);
  const Mechanism qstar = uniform_budget_mechanism(4, budget);
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(qstar.at(j, j) == Catch::Approx(0.625).margin(1e-12));
  }
  CHECK(maximal_leakage(qstar) == Catch::Approx(std::log(2.5)).margin(1e-9));

  Rng rng(73);
  for (int t = 0; t < 100; ++t) {
    const Prior pi = random_prior(rng, 4);
    CHECK(expected_distortion(qstar, pi) == Catch::Approx(0.375).margin(1e-12));
  }

  const Mechanism coin = uniform_budget_mechanism(2, make_budget(0.0, 2));
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(coin.at(i, j) == Catch::Approx(0.5).margin(0.0));
    }
  }
  CHECK(maximal_leakage(coin) == Catch::Approx(0.0).margin(1e-12));

  // A budget wider than the alphabet cannot be spread.
  CHECK_THROWS_AS(uniform_budget_mechanism(4, make_budget(std::log(8.0), 8)),
                  Error);
}

TEST_CASE("diagonal certificates predict the worst-case order", "[ordering]") {
  Rng rng(79);
  int certified = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng.index(5);
    const LeakageBudget budget = make_budget(
        rng.uniform(0.0, std::log(static_cast<double>(n))), n);
    const Mechanism p = random_mechanism_in_budget(rng, budget);
    const Mechanism q = (t % 2 == 0) ? uniform_budget_mechanism(n, budget)
                                     : random_mechanism_in_budget(rng, budget);
    const DmaxComparison cmp = compare_dmax(p, q);
    if (cmp.diagonal_certificate == OrderVerdict::Precedes ||
        cmp.diagonal_certificate == OrderVerdict::Equal) {
      ++certified;
      CHECK(cmp.d_max_second <= cmp.d_max_first + 1e-12);
    }
    if (cmp.diagonal_certificate == OrderVerdict::Succeeds) {
      CHECK(cmp.d_max_first <= cmp.d_max_second + 1e-12);
    }
  }
  CHECK(certified >= 250);
}

TEST_CASE("no mechanism within the budget beats the uniform spread", "[ordering]") {
  Rng rng(83);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng.index(5);
    const LeakageBudget budget = make_budget(
        rng.uniform(0.0, std::log(static_cast<double>(n))), n);
    const Mechanism qstar = uniform_budget_mechanism(n, budget);
    const Mechanism p = random_mechanism_in_budget(rng, budget);
    REQUIRE(in_budget(p, budget));
    CHECK(d_max(qstar) <= d_max(p) + 1e-12);
    // The spent budget caps the smallest diagonal entry of any member.
    CHECK(d_max(p) >= 1.0 - budget.exp_gamma / static_cast<double>(n) - 1e-12);
  }
}

TEST_CASE("uniform-budget construction is valid across sizes and budgets",
          "[ordering]") {
  for (std::size_t n = 2; n <= 8; ++n) {
    const double log_n = std::log(static_cast<double>(n));
    for (int step = 0; step <= 20; ++step) {
      const LeakageBudget budget = make_budget(log_n * step / 20.0, n);
      const Mechanism qstar = uniform_budget_mechanism(n, budget);
      CHECK(maximal_leakage(qstar) ==
            Catch::Approx(budget.effective_gamma).margin(1e-9));
      for (std::size_t j = 0; j < n; ++j) {
        double colmax = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          colmax = std::max(colmax, qstar.at(i, j));
        }
        CHECK(colmax <= qstar.at(j, j) + 1e-12);
      }
    }
  }
}

TEST_CASE("uniform-budget distortion does not move with the prior", "[ordering]") {
  Rng rng(89);
  for (std::size_t n = 2; n <= 6; ++n) {
    const LeakageBudget budget = make_budget(
        rng.uniform(0.0, std::log(static_cast<double>(n))), n);
    const Mechanism qstar = uniform_budget_mechanism(n, budget);
    double lo = 1.0;
    double hi = 0.0;
    for (int t = 0; t < 100; ++t) {
      const double d = expected_distortion(qstar, random_prior(rng, n));
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    CHECK(hi - lo < 1e-12);
  }
}
