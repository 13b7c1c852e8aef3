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
#include <cstdint>
#include <random>
#include <vector>

#include "maxleak/core.hpp"
#include "maxleak/selftest.hpp"

namespace testsupport {

using maxleak::Rng;

inline std::vector<double> random_positive_simplex(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  double sum = 0.0;
  for (double& x : v) {
    x = 1e-6 - std::log(1.0 - rng.uniform01());
    sum += x;
  }
  for (double& x : v) x /= sum;
  return v;
}

/// A prior without ties, for properties that rely on a unique sort order.
inline maxleak::Prior random_tie_free_prior(Rng& rng, std::size_t n) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<double> v = random_positive_simplex(rng, n);
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    bool distinct = true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (sorted[i + 1] - sorted[i] < 1e-9) distinct = false;
    }
    if (distinct) return maxleak::make_prior(std::move(v));
  }
  return maxleak::make_prior(random_positive_simplex(rng, n));
}

inline std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.index(i)]);
  return perm;
}

/// A segment of valid priors around a random base, with a random zero-sum
/// direction scaled to keep every coordinate positive over the whole range.
inline maxleak::PriorSet random_segment(Rng& rng, std::size_t n) {
  const std::vector<double> base = random_positive_simplex(rng, n);
  std::vector<double> dir(n);
  double mean = 0.0;
  for (double& d : dir) {
    d = rng.uniform(-1.0, 1.0);
    mean += d;
  }
  mean /= static_cast<double>(n);
  for (double& d : dir) d -= mean;
  double limit = 1e9;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(dir[i]) > 1e-12) {
      limit = std::min(limit, base[i] / std::abs(dir[i]));
    }
  }
  const double reach = 0.4 * limit;
  return maxleak::make_segment(base, dir, -reach, reach);
}

}  // namespace testsupport
