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
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "maxleak/errors.hpp"

namespace maxleak {

/// Comparison tolerance on partial sums. Inputs are unit-scale probability
/// vectors, so this avoids spurious Incomparable verdicts from float noise.
inline constexpr double kMajorizationTol = 1e-12;

/// A vector together with its decreasing rearrangement. index_order[j] is the
/// 0-based original index of the j-th largest entry; ties are broken by
/// ascending original index, so the permutation is deterministic.
struct SortedView {
  std::vector<double> sorted_desc;
  std::vector<std::size_t> index_order;
};

inline SortedView sort_desc(std::span<const double> x) {
  if (x.empty()) fail(Errc::EmptyVector, "cannot sort an empty vector");
  SortedView view;
  view.index_order.resize(x.size());
  std::iota(view.index_order.begin(), view.index_order.end(), std::size_t{0});
  std::stable_sort(view.index_order.begin(), view.index_order.end(),
                   [&x](std::size_t a, std::size_t b) { return x[a] > x[b]; });
  view.sorted_desc.resize(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    view.sorted_desc[j] = x[view.index_order[j]];
  }
  return view;
}

/// Sum of the l largest entries of x, 1 <= l <= n.
inline double prefix_sum_sorted(std::span<const double> x, std::size_t l) {
  if (x.empty()) fail(Errc::EmptyVector, "cannot take prefix of empty vector");
  if (l < 1 || l > x.size()) {
    fail(Errc::IndexOutOfRange,
         "l=" + std::to_string(l) + " outside 1.." + std::to_string(x.size()));
  }
  const SortedView view = sort_desc(x);
  double sum = 0.0;
  for (std::size_t j = 0; j < l; ++j) sum += view.sorted_desc[j];
  return sum;
}

/// Verdict of a partial-order comparison between two vectors p and q,
/// read as "how q relates to p".
enum class OrderVerdict { Precedes, Succeeds, Equal, Incomparable };

inline const char* to_string(OrderVerdict v) {
  switch (v) {
    case OrderVerdict::Precedes: return "Precedes";
    case OrderVerdict::Succeeds: return "Succeeds";
    case OrderVerdict::Equal: return "Equal";
    case OrderVerdict::Incomparable: return "Incomparable";
  }
  return "?";
}

namespace detail {

inline std::vector<double> desc_partial_sums(std::span<const double> x) {
  const SortedView view = sort_desc(x);
  std::vector<double> sums(x.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    acc += view.sorted_desc[j];
    sums[j] = acc;
  }
  return sums;
}

inline std::vector<double> asc_partial_sums(std::span<const double> x) {
  const SortedView view = sort_desc(x);
  std::vector<double> sums(x.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    acc += view.sorted_desc[x.size() - 1 - j];
    sums[j] = acc;
  }
  return sums;
}

// a[m] <= b[m] + tol for all m in [0, count).
inline bool dominated(const std::vector<double>& a, const std::vector<double>& b,
                      std::size_t count) {
  for (std::size_t m = 0; m < count; ++m) {
    if (a[m] > b[m] + kMajorizationTol) return false;
  }
  return true;
}

inline OrderVerdict combine(bool forward, bool backward) {
  if (forward && backward) return OrderVerdict::Equal;
  if (forward) return OrderVerdict::Precedes;
  if (backward) return OrderVerdict::Succeeds;
  return OrderVerdict::Incomparable;
}

inline void check_lengths(std::span<const double> p, std::span<const double> q) {
  if (p.empty() || q.empty()) fail(Errc::EmptyVector, "empty comparison input");
  if (p.size() != q.size()) {
    fail(Errc::LengthMismatch, std::to_string(p.size()) +
                                   " vs " + std::to_string(q.size()));
  }
}

}  // namespace detail

/// Majorization q < p: every decreasing partial sum of q is dominated by the
/// one of p and the totals agree. Totals that differ by more than the
/// tolerance make the vectors incomparable under this order.
inline OrderVerdict majorizes(std::span<const double> p,
                              std::span<const double> q) {
  detail::check_lengths(p, q);
  const std::size_t n = p.size();
  const auto ps = detail::desc_partial_sums(p);
  const auto qs = detail::desc_partial_sums(q);
  if (std::abs(ps[n - 1] - qs[n - 1]) > kMajorizationTol) {
    return OrderVerdict::Incomparable;
  }
  const bool forward = detail::dominated(qs, ps, n);   // q < p
  const bool backward = detail::dominated(ps, qs, n);  // p < q
  return detail::combine(forward, backward);
}

/// Weak sub-majorization q <_w p: decreasing partial sums of q dominated by
/// those of p at every length, totals unconstrained.
inline OrderVerdict weak_sub_majorizes(std::span<const double> p,
                                       std::span<const double> q) {
  detail::check_lengths(p, q);
  const auto ps = detail::desc_partial_sums(p);
  const auto qs = detail::desc_partial_sums(q);
  const bool forward = detail::dominated(qs, ps, p.size());
  const bool backward = detail::dominated(ps, qs, p.size());
  return detail::combine(forward, backward);
}

/// Weak super-majorization q <^w p: increasing partial sums of q dominate
/// those of p at every length.
inline OrderVerdict weak_super_majorizes(std::span<const double> p,
                                         std::span<const double> q) {
  detail::check_lengths(p, q);
  const auto ps = detail::asc_partial_sums(p);
  const auto qs = detail::asc_partial_sums(q);
  const bool forward = detail::dominated(ps, qs, p.size());   // q <^w p
  const bool backward = detail::dominated(qs, ps, p.size());  // p <^w q
  return detail::combine(forward, backward);
}

}  // namespace maxleak
