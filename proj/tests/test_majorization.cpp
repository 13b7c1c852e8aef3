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

#include "maxleak/majorization.hpp"
#include "support.hpp"

using namespace maxleak;
using testsupport::random_permutation;

namespace {

// Test-side comparators, kept independent of the library path: selection
// sort plus running prefix comparisons.
std::vector<double> naive_sorted_desc(std::vector<double> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::size_t best = i;
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (v[j] > v[best]) best = j;
    }
    std::swap(v[i], v[best]);
  }
  return v;
}

bool naive_weak_sub(const std::vector<double>& p, const std::vector<double>& q) {
  const auto ps = naive_sorted_desc(p);
  const auto qs = naive_sorted_desc(q);
  double sp = 0.0;
  double sq = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sp += ps[i];
    sq += qs[i];
    if (sq > sp + 1e-12) return false;
  }
  return true;
}

bool naive_weak_super(const std::vector<double>& p, const std::vector<double>& q) {
  const auto ps = naive_sorted_desc(p);
  const auto qs = naive_sorted_desc(q);
  double sp = 0.0;
  double sq = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sp += ps[p.size() - 1 - i];
    sq += qs[q.size() - 1 - i];
    if (sq < sp - 1e-12) return false;
  }
  return true;
}

std::vector<double> transfer(Rng& rng, std::vector<double> v) {
  const std::size_t i = rng.index(v.size());
  std::size_t j = rng.index(v.size());
  if (j == i) j = (j + 1) % v.size();
  const double lambda = rng.uniform01();
  const double a = v[i];
  const double b = v[j];
  v[i] = lambda * a + (1.0 - lambda) * b;
  v[j] = lambda * b + (1.0 - lambda) * a;
  return v;
}

std::vector<double> random_vector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(0.0, 1.0);
  return v;
}

bool precedes_or_equal(OrderVerdict v) {
  return v == OrderVerdict::Precedes || v == OrderVerdict::Equal;
}

}  // namespace

TEST_CASE("sort_desc and stable tie-breaking", "[majorization]") {
  const std::vector<double> x{0.2, 0.4, 0.2, 0.2};
  const SortedView v = sort_desc(x);
  CHECK(v.sorted_desc == std::vector<double>{0.4, 0.2, 0.2, 0.2});
  CHECK(v.index_order == std::vector<std::size_t>{1, 0, 2, 3});

  const SortedView w = sort_desc(std::vector<double>{5, 2, 2});
  CHECK(w.sorted_desc == std::vector<double>{5, 2, 2});
  CHECK(w.index_order == std::vector<std::size_t>{0, 1, 2});

  const SortedView t = sort_desc(std::vector<double>{1, 1, 1});
  CHECK(t.index_order == std::vector<std::size_t>{0, 1, 2});

  CHECK_THROWS_AS(sort_desc(std::vector<double>{}), Error);
}

TEST_CASE("prefix sums of the sorted vector", "[majorization]") {
  CHECK(prefix_sum_sorted(std::vector<double>{0.4, 0.3, 0.2, 0.1}, 2) ==
        Catch::Approx(0.7).margin(1e-12));
  CHECK(prefix_sum_sorted(std::vector<double>{0.29, 0.28, 0.29, 0.14}, 2) ==
        Catch::Approx(0.58).margin(1e-12));
  CHECK(prefix_sum_sorted(std::vector<double>{0.1, 0.7, 0.2}, 1) ==
        Catch::Approx(0.7).margin(0.0));
  CHECK_THROWS_AS(prefix_sum_sorted(std::vector<double>{0.5, 0.5}, 3), Error);
  CHECK_THROWS_AS(prefix_sum_sorted(std::vector<double>{0.5, 0.5}, 0), Error);
}

TEST_CASE("majorization verdicts on the reference vectors", "[majorization]") {
  CHECK(majorizes(std::vector<double>{5, 2, 2}, std::vector<double>{3, 3, 3}) ==
        OrderVerdict::Precedes);
  CHECK(majorizes(std::vector<double>{5, 2, 2}, std::vector<double>{4, 4, 1}) ==
        OrderVerdict::Incomparable);
  CHECK(majorizes(std::vector<double>{0.4, 0.6}, std::vector<double>{0.4, 0.6}) ==
        OrderVerdict::Equal);
  // Totals that differ are incomparable under the strong order.
  CHECK(majorizes(std::vector<double>{1, 0}, std::vector<double>{0.4, 0.4}) ==
        OrderVerdict::Incomparable);
  CHECK_THROWS_AS(majorizes(std::vector<double>{1, 0}, std::vector<double>{1}),
                  Error);
}

TEST_CASE("weak sub-majorization verdicts", "[majorization]") {
  CHECK(weak_sub_majorizes(std::vector<double>{0.9, 0.3},
                           std::vector<double>{0.8, 0.3}) ==
        OrderVerdict::Precedes);
  // First prefix dominated but the total is not.
  CHECK(weak_sub_majorizes(std::vector<double>{0.6, 0.2},
                           std::vector<double>{0.58, 0.28}) ==
        OrderVerdict::Incomparable);
  CHECK(weak_sub_majorizes(std::vector<double>{0.5, 0.1},
                           std::vector<double>{0.5, 0.1}) == OrderVerdict::Equal);
}

TEST_CASE("weak super-majorization verdicts", "[majorization]") {
  CHECK(weak_super_majorizes(std::vector<double>{1, 0, 0.5},
                             std::vector<double>{1, 0.5, 0.5}) ==
        OrderVerdict::Precedes);
  CHECK(weak_super_majorizes(std::vector<double>{0.3, 0.7},
                             std::vector<double>{0.3, 0.7}) ==
        OrderVerdict::Equal);
  // Permuting entries never changes a verdict.
  CHECK(weak_super_majorizes(std::vector<double>{0.9, 0.1},
                             std::vector<double>{0.1, 0.9}) ==
        OrderVerdict::Equal);
}

TEST_CASE("order axioms hold on random triples", "[majorization]") {
  Rng rng(101);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng.index(5);
    const std::vector<double> p = random_vector(rng, n);
    const std::vector<double> q = transfer(rng, p);
    const std::vector<double> r = transfer(rng, q);

    // Reflexivity.
    CHECK(majorizes(p, p) == OrderVerdict::Equal);
    CHECK(weak_sub_majorizes(p, p) == OrderVerdict::Equal);
    CHECK(weak_super_majorizes(p, p) == OrderVerdict::Equal);

    // Averaging transfers only move down the order; chains stay comparable.
    CHECK(precedes_or_equal(majorizes(p, q)));
    CHECK(precedes_or_equal(majorizes(q, r)));
    CHECK(precedes_or_equal(majorizes(p, r)));

    // The strong order implies both weak ones.
    CHECK(precedes_or_equal(weak_sub_majorizes(p, q)));
    CHECK(precedes_or_equal(weak_super_majorizes(p, q)));

    // Antisymmetry up to rearrangement.
    if (majorizes(p, q) == OrderVerdict::Equal) {
      const auto sp = naive_sorted_desc(p);
      const auto sq = naive_sorted_desc(q);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(sp[i] == Catch::Approx(sq[i]).margin(1e-10));
      }
    }

    // Permutation invariance of all three comparators.
    const auto perm = random_permutation(rng, n);
    std::vector<double> p_shuffled(n);
    for (std::size_t i = 0; i < n; ++i) p_shuffled[i] = p[perm[i]];
    CHECK(majorizes(p_shuffled, q) == majorizes(p, q));
    CHECK(weak_sub_majorizes(p_shuffled, q) == weak_sub_majorizes(p, q));
    CHECK(weak_super_majorizes(p_shuffled, q) == weak_super_majorizes(p, q));
  }
}

TEST_CASE("verdicts agree with the naive comparator", "[majorization]") {
  Rng rng(202);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng.index(5);
    // Mix related and unrelated pairs so both outcomes occur.
    const std::vector<double> p = random_vector(rng, n);
    const std::vector<double> q =
        (t % 2 == 0) ? transfer(rng, p) : random_vector(rng, n);

    const OrderVerdict sub = weak_sub_majorizes(p, q);
    CHECK((sub == OrderVerdict::Precedes || sub == OrderVerdict::Equal) ==
          naive_weak_sub(p, q));
    CHECK((sub == OrderVerdict::Succeeds || sub == OrderVerdict::Equal) ==
          naive_weak_sub(q, p));

    const OrderVerdict super = weak_super_majorizes(p, q);
    CHECK((super == OrderVerdict::Precedes || super == OrderVerdict::Equal) ==
          naive_weak_super(p, q));
    CHECK((super == OrderVerdict::Succeeds || super == OrderVerdict::Equal) ==
          naive_weak_super(q, p));
  }
}

TEST_CASE("increasing Schur-convex functions preserve weak sub-majorization",
          "[majorization]") {
  Rng rng(303);
  const auto phi = [](const std::vector<double>& x, double threshold) {
    double acc = 0.0;
    for (double v : x) acc += std::max(v - threshold, 0.0);
    return acc;
  };
  int comparable = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng.index(5);
    const std::vector<double> p = random_vector(rng, n);
    // A transfer followed by losses keeps q weakly below p.
    std::vector<double> q = transfer(rng, p);
    for (double& v : q) v = std::max(v - rng.uniform(0.0, 0.1), 0.0);
    const double threshold = rng.uniform(0.0, 1.0);
    if (precedes_or_equal(weak_sub_majorizes(p, q))) {
      ++comparable;
      CHECK(phi(q, threshold) <= phi(p, threshold) + 1e-12);
    }
  }
  CHECK(comparable > 400);
}

TEST_CASE("decreasing Schur-convex functions preserve weak super-majorization",
          "[majorization]") {
  Rng rng(404);
  const auto phi = [](const std::vector<double>& x) {
    return -*std::min_element(x.begin(), x.end());
  };
  int comparable = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng.index(5);
    const std::vector<double> p = random_vector(rng, n);
    // A transfer followed by gains keeps q weakly above p.
    std::vector<double> q = transfer(rng, p);
    for (double& v : q) v += rng.uniform(0.0, 0.1);
    if (precedes_or_equal(weak_super_majorizes(p, q))) {
      ++comparable;
      CHECK(phi(q) <= phi(p) + 1e-12);
    }
  }
  CHECK(comparable > 400);
}
