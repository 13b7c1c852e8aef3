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
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "maxleak/errors.hpp"

namespace maxleak {

/// Tolerance on the mass of a user-supplied prior.
inline constexpr double kPriorSumTol = 1e-9;
/// Tolerance on row sums of a mechanism. Mechanisms normally come out of our
/// own constructions, so this is much tighter than the prior tolerance.
inline constexpr double kRowSumTol = 1e-12;
/// A prior whose mass is already this close to one is stored verbatim, which
/// keeps construction idempotent and serialization round trips bit-exact.
inline constexpr double kRenormSkipTol = 1e-13;
/// Tolerance on the zero sum of a segment direction.
inline constexpr double kDirectionSumTol = 1e-12;
/// Slack allowed when testing a mechanism against a leakage budget.
inline constexpr double kLeakageSlack = 1e-9;

// ---------------------------------------------------------------------------
// Prior
// ---------------------------------------------------------------------------

/// A full-support probability distribution over n >= 2 symbols.
///
/// Entries must be strictly positive and sum to one within kPriorSumTol.
/// The stored vector is renormalized once at construction unless the input
/// mass is already within kRenormSkipTol of one.
class Prior {
 public:
  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& probs() const noexcept { return p_; }

  friend Prior make_prior(std::vector<double> values);

 private:
  explicit Prior(std::vector<double> p) : p_(std::move(p)) {}
  std::vector<double> p_;
};

inline Prior make_prior(std::vector<double> values) {
  if (values.size() < 2) {
    fail(Errc::TooShort,
         "need at least 2 symbols, got " + std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) {
      std::ostringstream os;
      os << "entry " << (i + 1) << "=" << values[i]
         << " (full support requires every entry > 0)";
      fail(Errc::NonPositiveEntry, os.str());
    }
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  if (!(std::abs(sum - 1.0) <= kPriorSumTol)) {
    std::ostringstream os;
    os << "entries sum to " << sum;
    fail(Errc::NotNormalized, os.str());
  }
  if (std::abs(sum - 1.0) > kRenormSkipTol) {
    for (double& v : values) v /= sum;
  }
  return Prior(std::move(values));
}

/// The uniform distribution over n symbols.
inline Prior uniform_prior(std::size_t n) {
  if (n < 2) fail(Errc::TooShort, "need at least 2 symbols");
  return make_prior(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

// ---------------------------------------------------------------------------
// Mechanism
// ---------------------------------------------------------------------------

/// A privacy mechanism: an n x m row-stochastic matrix of conditional
/// probabilities p_ij = P(output j | input i). Stored flat, row major.
class Mechanism {
 public:
  std::size_t n_rows() const noexcept { return rows_; }
  std::size_t n_cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(a_.data() + i * cols_, cols_);
  }

  /// Diagonal entries p_jj. Only meaningful for square mechanisms.
  std::vector<double> diagonal() const {
    if (!square()) fail(Errc::NotSquare, "diagonal of a non-square mechanism");
    std::vector<double> d(rows_);
    for (std::size_t i = 0; i < rows_; ++i) d[i] = at(i, i);
    return d;
  }

  std::vector<std::vector<double>> to_rows() const {
    std::vector<std::vector<double>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      out[i].assign(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                    a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    return out;
  }

  friend Mechanism make_mechanism(const std::vector<std::vector<double>>& rows);

 private:
  Mechanism(std::size_t r, std::size_t c, std::vector<double> a)
      : rows_(r), cols_(c), a_(std::move(a)) {}
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> a_;
};

inline Mechanism make_mechanism(const std::vector<std::vector<double>>& rows) {
  if (rows.size() < 2) {
    fail(Errc::SchemaError,
         "mechanism needs at least 2 rows, got " + std::to_string(rows.size()));
  }
  const std::size_t m = rows.front().size();
  if (m == 0) fail(Errc::SchemaError, "mechanism rows must be nonempty");
  std::vector<double> flat;
  flat.reserve(rows.size() * m);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m) {
      std::ostringstream os;
      os << "row " << (i + 1) << " has " << rows[i].size()
         << " entries, expected " << m;
      fail(Errc::SchemaError, os.str());
    }
    double sum = 0.0;
    for (double v : rows[i]) {
      if (!(v >= 0.0)) {
        std::ostringstream os;
        os << "row=" << (i + 1) << " entry=" << v;
        fail(Errc::RowNotStochastic, os.str());
      }
      sum += v;
    }
    if (!(std::abs(sum - 1.0) <= kRowSumTol)) {
      std::ostringstream os;
      os << "row=" << (i + 1) << " sum=" << sum;
      fail(Errc::RowNotStochastic, os.str());
    }
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return Mechanism(rows.size(), m, std::move(flat));
}

// ---------------------------------------------------------------------------
// LeakageBudget
// ---------------------------------------------------------------------------

/// A leakage budget over an alphabet of n symbols.
///
/// gamma is given in nats. Values above log n allow full disclosure, so the
/// effective budget is clamped to [0, log n]. exp_gamma = e^gamma is the
/// multiplicative privacy budget, and k is the integer with
/// k <= exp_gamma <= k + 1 used throughout the closed forms. When exp_gamma
/// is an exact integer we take k = exp_gamma unless that would exceed n - 1.
struct LeakageBudget {
  double gamma;            // requested value, nats
  std::size_t n;           // alphabet size
  double effective_gamma;  // min(gamma, log n)
  double exp_gamma;        // e^effective_gamma, clamped into [1, n]
  int k;                   // floor(exp_gamma), clamped into [1, n-1]
};

inline LeakageBudget make_budget(double gamma, std::size_t n) {
  if (n < 2) fail(Errc::TooShort, "alphabet needs at least 2 symbols");
  if (!(gamma >= 0.0)) {
    std::ostringstream os;
    os << "gamma=" << gamma;
    fail(Errc::NegativeGamma, os.str());
  }
  const double log_n = std::log(static_cast<double>(n));
  const double effective = std::min(gamma, log_n);
  double exp_gamma = std::exp(effective);
  exp_gamma = std::clamp(exp_gamma, 1.0, static_cast<double>(n));
  int k = static_cast<int>(std::floor(exp_gamma));
  k = std::clamp(k, 1, static_cast<int>(n) - 1);
  return LeakageBudget{gamma, n, effective, exp_gamma, k};
}

// ---------------------------------------------------------------------------
// PriorSet
// ---------------------------------------------------------------------------

/// A set of candidate priors: a finite list, an affine segment
/// base + delta * direction over delta in [delta_min, delta_max], or a union
/// of such sets. All members share one alphabet size.
class PriorSet {
 public:
  struct Finite {
    std::vector<Prior> priors;
  };

  struct Segment {
    std::vector<double> base;
    std::vector<double> direction;
    double delta_min;
    double delta_max;
  };

  struct Union {
    std::vector<PriorSet> members;
  };

  using Node = std::variant<Finite, Segment, Union>;

  const Node& node() const noexcept { return node_; }

  /// Alphabet size shared by every prior the set can produce.
  std::size_t dimension() const noexcept { return n_; }

  friend PriorSet make_finite_set(std::vector<Prior> priors);
  friend PriorSet make_segment(std::vector<double> base,
                               std::vector<double> direction, double delta_min,
                               double delta_max);
  friend PriorSet make_union(std::vector<PriorSet> members);

 private:
  PriorSet(Node node, std::size_t n) : node_(std::move(node)), n_(n) {}
  Node node_;
  std::size_t n_;
};

namespace detail {

/// Deltas in [delta_min, delta_max] where two coordinates of
/// base + delta * direction cross, plus both endpoints. Sorted, deduplicated.
/// Between consecutive grid points the descending order of the coordinates is
/// constant, so order statistics are affine in delta on each piece.
inline std::vector<double> segment_grid(const std::vector<double>& base,
                                        const std::vector<double>& direction,
                                        double delta_min, double delta_max) {
  std::vector<double> grid{delta_min, delta_max};
  const std::size_t n = base.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dd = direction[i] - direction[j];
      if (std::abs(dd) < 1e-15) continue;
      const double crossing = (base[j] - base[i]) / dd;
      if (crossing >= delta_min - 1e-12 && crossing <= delta_max + 1e-12) {
        grid.push_back(std::clamp(crossing, delta_min, delta_max));
      }
    }
  }
  std::sort(grid.begin(), grid.end());
  std::vector<double> unique;
  for (double d : grid) {
    if (unique.empty() || d - unique.back() > 1e-12) unique.push_back(d);
  }
  return unique;
}

}  // namespace detail

/// The prior at a given point of a segment.
inline Prior segment_prior_at(const PriorSet::Segment& s, double delta) {
  std::vector<double> values(s.base.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = s.base[i] + delta * s.direction[i];
  }
  return make_prior(std::move(values));
}

inline PriorSet make_finite_set(std::vector<Prior> priors) {
  if (priors.empty()) fail(Errc::EmptySet, "finite prior set must be nonempty");
  const std::size_t n = priors.front().size();
  for (const Prior& p : priors) {
    if (p.size() != n) {
      fail(Errc::SchemaError, "finite prior set mixes alphabet sizes");
    }
  }
  return PriorSet(PriorSet::Finite{std::move(priors)}, n);
}

inline PriorSet make_segment(std::vector<double> base,
                             std::vector<double> direction, double delta_min,
                             double delta_max) {
  if (base.size() < 2) fail(Errc::TooShort, "segment base needs length >= 2");
  if (base.size() != direction.size()) {
    fail(Errc::SchemaError, "segment base and direction differ in length");
  }
  if (!(delta_min <= delta_max)) {
    fail(Errc::SchemaError, "segment requires delta_min <= delta_max");
  }
  double dir_sum = 0.0;
  for (double d : direction) dir_sum += d;
  if (!(std::abs(dir_sum) <= kDirectionSumTol)) {
    std::ostringstream os;
    os << "segment direction sums to " << dir_sum;
    fail(Errc::SchemaError, os.str());
  }
  PriorSet::Segment seg{std::move(base), std::move(direction), delta_min,
                        delta_max};
  // Coordinates are affine in delta, so checking every grid point (which
  // includes both endpoints) certifies the whole range.
  for (double d :
       detail::segment_grid(seg.base, seg.direction, delta_min, delta_max)) {
    (void)segment_prior_at(seg, d);
  }
  const std::size_t n = seg.base.size();
  return PriorSet(std::move(seg), n);
}

inline PriorSet make_union(std::vector<PriorSet> members) {
  if (members.empty()) fail(Errc::EmptySet, "union must be nonempty");
  const std::size_t n = members.front().dimension();
  for (const PriorSet& m : members) {
    if (m.dimension() != n) {
      fail(Errc::SchemaError, "union mixes alphabet sizes");
    }
  }
  return PriorSet(PriorSet::Union{std::move(members)}, n);
}

// ---------------------------------------------------------------------------
// DesignResult
// ---------------------------------------------------------------------------

/// Outcome of a design run: the optimal distortion, a mechanism attaining it,
/// the worst-case prior when one was searched for, and the leakage actually
/// spent by the returned mechanism.
struct DesignResult {
  double d_min;
  Mechanism mechanism;
  std::optional<Prior> worst_prior;
  double achieved_leakage;
};

}  // namespace maxleak
