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

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "maxleak/core.hpp"
#include "maxleak/design.hpp"
#include "maxleak/majorization.hpp"

namespace maxleak {

/// The pair (sum of the k largest prior entries, (k+1)-th largest entry).
/// The achievable disclosed mass depends on the prior only through this pair.
struct FGammaPoint {
  double top_k_mass;
  double next_entry;

  std::array<double, 2> as_vector() const { return {top_k_mass, next_entry}; }
};

inline FGammaPoint f_gamma(const Prior& pi, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > pi.size() - 1) {
    fail(Errc::IndexOutOfRange,
         "k=" + std::to_string(k) + " outside 1.." + std::to_string(pi.size() - 1));
  }
  const SortedView view = sort_desc(pi.probs());
  double top = 0.0;
  for (int j = 0; j < k; ++j) top += view.sorted_desc[static_cast<std::size_t>(j)];
  return FGammaPoint{top, view.sorted_desc[static_cast<std::size_t>(k)]};
}

/// Largest disclosed mass sum_j p_jj pi_j achievable within the budget.
/// Defined as 1 - d_min_fixed_prior so the two are complements by
/// construction. Increasing and Schur-convex in the f_gamma pair.
inline double h_gamma(const Prior& pi, const LeakageBudget& budget) {
  return 1.0 - d_min_fixed_prior(budget, pi);
}

/// The member whose f_gamma pair is weakly sub-majorized by every other
/// member's pair, when such a member exists. That member achieves the
/// smallest disclosed mass, hence the largest optimal distortion, in the set.
inline std::optional<Prior> find_least_informative(
    const std::vector<Prior>& priors, const LeakageBudget& budget) {
  if (priors.empty()) fail(Errc::EmptySet, "no priors to search");
  std::vector<std::array<double, 2>> points;
  points.reserve(priors.size());
  for (const Prior& p : priors) {
    if (p.size() != budget.n) {
      fail(Errc::DimensionMismatch, "prior of length " + std::to_string(p.size()) +
                                        " vs budget over " + std::to_string(budget.n));
    }
    points.push_back(f_gamma(p, budget.k).as_vector());
  }
  for (std::size_t i = 0; i < priors.size(); ++i) {
    bool dominated_by_all = true;
    for (std::size_t j = 0; j < priors.size(); ++j) {
      if (j == i) continue;
      const OrderVerdict v = weak_sub_majorizes(points[j], points[i]);
      if (v != OrderVerdict::Precedes && v != OrderVerdict::Equal) {
        dominated_by_all = false;
        break;
      }
    }
    if (dominated_by_all) return priors[i];
  }
  return std::nullopt;
}

/// Sorted deltas at which the decreasing rearrangement of
/// base + delta * direction can change: both endpoints plus every coordinate
/// crossing inside the range. Order statistics are affine in delta between
/// consecutive entries, so evaluating there is exact for piecewise-affine
/// objectives.
inline std::vector<double> segment_breakpoints(const PriorSet::Segment& s) {
  return detail::segment_grid(s.base, s.direction, s.delta_min, s.delta_max);
}

/// Upper bound on the worst-case optimal distortion of any nonempty prior
/// set: 1 - e^gamma / n, the distortion of the uniform-budget mechanism.
inline double uniform_budget_upper_bound(const LeakageBudget& budget) {
  return 1.0 - budget.exp_gamma / static_cast<double>(budget.n);
}

/// Which reduction produced a robust design.
enum class RobustPath { UniformMember, LeastInformative, GeneralReduction };

inline const char* to_string(RobustPath p) {
  switch (p) {
    case RobustPath::UniformMember: return "UniformMember";
    case RobustPath::LeastInformative: return "LeastInformative";
    case RobustPath::GeneralReduction: return "GeneralReduction";
  }
  return "?";
}

/// Result of a worst-case design over a set of priors.
struct RobustReport {
  double d_min;
  Prior worst_prior;
  Mechanism mechanism;
  RobustPath path_used;
};

namespace detail {

/// Candidate priors that determine the optimum of any objective that is
/// piecewise affine along segments: finite members verbatim, segments at
/// their breakpoints, unions recursively. Order is deterministic (member
/// order, ascending delta).
inline void collect_candidates(const PriorSet& set, std::vector<Prior>& out) {
  if (const auto* f = std::get_if<PriorSet::Finite>(&set.node())) {
    out.insert(out.end(), f->priors.begin(), f->priors.end());
  } else if (const auto* s = std::get_if<PriorSet::Segment>(&set.node())) {
    for (double d : segment_breakpoints(*s)) out.push_back(segment_prior_at(*s, d));
  } else {
    for (const PriorSet& m : std::get<PriorSet::Union>(set.node()).members) {
      collect_candidates(m, out);
    }
  }
}

inline constexpr double kUniformEntryTol = 1e-13;

inline bool is_uniform(const Prior& p) {
  const double u = 1.0 / static_cast<double>(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (std::abs(p[i] - u) > kUniformEntryTol) return false;
  }
  return true;
}

/// The uniform distribution if the set contains it; for segments this solves
/// for the delta at which every coordinate reaches 1/n.
inline std::optional<Prior> find_uniform_member(const PriorSet& set) {
  if (const auto* f = std::get_if<PriorSet::Finite>(&set.node())) {
    for (const Prior& p : f->priors) {
      if (is_uniform(p)) return p;
    }
    return std::nullopt;
  }
  if (const auto* s = std::get_if<PriorSet::Segment>(&set.node())) {
    const double u = 1.0 / static_cast<double>(s->base.size());
    std::size_t pivot = s->base.size();
    for (std::size_t i = 0; i < s->base.size(); ++i) {
      if (std::abs(s->direction[i]) > 1e-12) {
        pivot = i;
        break;
      }
    }
    if (pivot == s->base.size()) {
      // Constant segment.
      Prior p = segment_prior_at(*s, s->delta_min);
      if (is_uniform(p)) return p;
      return std::nullopt;
    }
    const double delta = (u - s->base[pivot]) / s->direction[pivot];
    if (delta < s->delta_min - 1e-12 || delta > s->delta_max + 1e-12) {
      return std::nullopt;
    }
    Prior p = segment_prior_at(*s, std::clamp(delta, s->delta_min, s->delta_max));
    if (is_uniform(p)) return p;
    return std::nullopt;
  }
  for (const PriorSet& m : std::get<PriorSet::Union>(set.node()).members) {
    if (auto u = find_uniform_member(m)) return u;
  }
  return std::nullopt;
}

inline RobustReport report_for_prior(const LeakageBudget& budget, Prior worst,
                                     RobustPath path) {
  Mechanism mech = optimal_mechanism(budget, worst);
  const double d = d_min_fixed_prior(budget, worst);
  return RobustReport{d, std::move(worst), std::move(mech), path};
}

inline RobustReport robust_over_candidates(const LeakageBudget& budget,
                                           const std::vector<Prior>& candidates) {
  if (auto li = find_least_informative(candidates, budget)) {
    return report_for_prior(budget, std::move(*li), RobustPath::LeastInformative);
  }
  std::size_t best = 0;
  double best_d = d_min_fixed_prior(budget, candidates[0]);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double d = d_min_fixed_prior(budget, candidates[i]);
    if (d > best_d) {
      best_d = d;
      best = i;
    }
  }
  return report_for_prior(budget, candidates[best], RobustPath::GeneralReduction);
}

}  // namespace detail

/// Worst-case design over a prior set.
///
/// A set containing the uniform distribution resolves immediately to
/// 1 - e^gamma / n with the uniform member as the worst prior. A union is
/// resolved member by member and the report with the smallest distortion is
/// returned (ties keep the earliest member). Otherwise the candidates of the
/// set are scanned: if one is least informative the optimum is taken there,
/// and in general the prior with the largest fixed-prior optimum wins
/// (smallest disclosed mass; for segments the scan over breakpoints is exact
/// because the objective is affine between them, ties keep the smallest
/// delta). The returned mechanism is built for the worst prior in its own
/// symbol labeling.
inline RobustReport d_min_robust(const LeakageBudget& budget, const PriorSet& set) {
  if (set.dimension() != budget.n) {
    fail(Errc::DimensionMismatch,
         "prior set over " + std::to_string(set.dimension()) +
             " symbols vs budget over " + std::to_string(budget.n));
  }
  if (auto uniform = detail::find_uniform_member(set)) {
    Mechanism mech = optimal_mechanism(budget, *uniform);
    return RobustReport{uniform_budget_upper_bound(budget), std::move(*uniform),
                        std::move(mech), RobustPath::UniformMember};
  }
  if (const auto* u = std::get_if<PriorSet::Union>(&set.node())) {
    std::optional<RobustReport> best;
    for (const PriorSet& member : u->members) {
      RobustReport r = d_min_robust(budget, member);
      if (!best || r.d_min < best->d_min) best = std::move(r);
    }
    return std::move(*best);
  }
  std::vector<Prior> candidates;
  detail::collect_candidates(set, candidates);
  if (candidates.empty()) fail(Errc::EmptySet, "prior set has no candidates");
  return detail::robust_over_candidates(budget, candidates);
}

/// The single reduction over every candidate of the set, without the uniform
/// shortcut and without resolving unions member by member: the optimum is the
/// largest fixed-prior optimum over all candidates. Used to cross-check the
/// routed solver on sets where the routes must agree.
inline RobustReport d_min_robust_general(const LeakageBudget& budget,
                                         const PriorSet& set) {
  if (set.dimension() != budget.n) {
    fail(Errc::DimensionMismatch,
         "prior set over " + std::to_string(set.dimension()) +
             " symbols vs budget over " + std::to_string(budget.n));
  }
  std::vector<Prior> candidates;
  detail::collect_candidates(set, candidates);
  if (candidates.empty()) fail(Errc::EmptySet, "prior set has no candidates");
  std::size_t best = 0;
  double best_d = d_min_fixed_prior(budget, candidates[0]);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double d = d_min_fixed_prior(budget, candidates[i]);
    if (d > best_d) {
      best_d = d;
      best = i;
    }
  }
  return detail::report_for_prior(budget, candidates[best],
                                  RobustPath::GeneralReduction);
}

}  // namespace maxleak
