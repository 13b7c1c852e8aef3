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
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxleak/channel.hpp"
#include "maxleak/core.hpp"
#include "maxleak/design.hpp"
#include "maxleak/majorization.hpp"
#include "maxleak/oracle.hpp"
#include "maxleak/ordering.hpp"
#include "maxleak/robust.hpp"

namespace maxleak {

/// Deterministic random source for the verification suite. Doubles are drawn
/// from the top 53 bits of the engine, so a seed fixes every byte of the run.
struct Rng {
  std::mt19937_64 engine;

  explicit Rng(std::uint64_t seed) : engine(seed) {}

  double uniform01() {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(engine() % n);
  }
};

inline Prior random_prior(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  double sum = 0.0;
  for (double& x : v) {
    x = 1e-9 - std::log(1.0 - rng.uniform01());
    sum += x;
  }
  for (double& x : v) x /= sum;
  return make_prior(std::move(v));
}

inline std::vector<double> random_stochastic_row(Rng& rng, std::size_t m) {
  std::vector<double> row(m);
  double sum = 0.0;
  for (double& x : row) {
    x = -std::log(1.0 - rng.uniform01()) + 1e-12;
    sum += x;
  }
  for (double& x : row) x /= sum;
  return row;
}

inline Mechanism random_mechanism(Rng& rng, std::size_t n, std::size_t m) {
  std::vector<std::vector<double>> rows(n);
  for (auto& row : rows) row = random_stochastic_row(rng, m);
  return make_mechanism(rows);
}

/// A random mechanism inside the budget: a random stochastic matrix is mixed
/// toward a rank-one (zero leakage) mechanism just enough to fit.
inline Mechanism random_mechanism_in_budget(Rng& rng, const LeakageBudget& budget) {
  const std::size_t n = budget.n;
  const Mechanism raw = random_mechanism(rng, n, n);
  const double leakage = maximal_leakage(raw);
  if (leakage <= budget.effective_gamma) return raw;
  const double lambda = (budget.exp_gamma - 1.0) /
                        (std::exp(leakage) - 1.0) * (1.0 - 1e-9);
  const std::vector<double> shared = random_stochastic_row(rng, n);
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rows[i][j] = lambda * raw.at(i, j) + (1.0 - lambda) * shared[j];
    }
  }
  return make_mechanism(rows);
}

struct VerifyConfig {
  std::uint64_t seed = 7;
  int trials = 200;
  int n_max = 6;
};

struct VerifyCheck {
  std::string name;
  int trials = 0;
  int violations = 0;
  double max_discrepancy = 0.0;
  double tolerance = 0.0;

  bool ok() const { return violations == 0; }
};

struct VerifyReport {
  VerifyConfig config;
  std::vector<VerifyCheck> checks;

  bool all_ok() const {
    for (const auto& c : checks) {
      if (!c.ok()) return false;
    }
    return true;
  }
  double max_abs_discrepancy() const {
    double d = 0.0;
    for (const auto& c : checks) d = std::max(d, c.max_discrepancy);
    return d;
  }
};

namespace detail {

inline void record(VerifyCheck& check, double discrepancy) {
  check.trials += 1;
  check.max_discrepancy = std::max(check.max_discrepancy, discrepancy);
  if (discrepancy > check.tolerance) check.violations += 1;
}

inline void record_bool(VerifyCheck& check, bool ok) {
  check.trials += 1;
  if (!ok) check.violations += 1;
}

inline std::vector<double> apply_transfer(Rng& rng, std::vector<double> v) {
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

inline std::vector<double> shuffled(Rng& rng, std::vector<double> v) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.index(i)]);
  }
  return v;
}

}  // namespace detail

/// Runs the LP-versus-closed-form equivalence suite and the structural
/// property suites on seeded random instances. Reruns with the same
/// configuration produce identical reports.
inline VerifyReport run_verification(const VerifyConfig& config) {
  VerifyReport report;
  report.config = config;
  Rng rng(config.seed);
  const std::size_t n_min = 2;
  const std::size_t n_max = static_cast<std::size_t>(std::max(config.n_max, 2));

  VerifyCheck oracle{"oracle_equivalence", 0, 0, 0.0, 1e-7};
  VerifyCheck recovery{"lp_recovery", 0, 0, 0.0, 0.0};
  for (int t = 0; t < config.trials; ++t) {
    const std::size_t n = n_min + rng.index(n_max - n_min + 1);
    const double gamma = rng.uniform(0.0, std::log(static_cast<double>(n)));
    const LeakageBudget budget = make_budget(gamma, n);
    const Prior pi = random_prior(rng, n);
    const double closed = d_min_fixed_prior(budget, pi);
    const LpSolution sol = simplex_solve(build_dmin_lp(budget, pi));
    const double via_lp = 1.0 - sol.value;
    detail::record(oracle, std::abs(closed - via_lp));
    bool recovered_ok = sol.status == LpStatus::Optimal;
    if (recovered_ok) {
      try {
        const Mechanism m = mechanism_from_lp_solution(sol, n);
        recovered_ok = in_budget(m, budget);
      } catch (const Error&) {
        recovered_ok = false;
      }
    }
    detail::record_bool(recovery, recovered_ok);
  }
  report.checks.push_back(oracle);
  report.checks.push_back(recovery);

  VerifyCheck schur_mono{"disclosed_mass_monotonicity", 0, 0, 0.0, 1e-12};
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = n_min + rng.index(n_max - n_min + 1);
    const double gamma = rng.uniform(0.0, std::log(static_cast<double>(n)));
    const LeakageBudget budget = make_budget(gamma, n);
    const Prior rho = random_prior(rng, n);
    Prior pi = rho;
    if (t % 2 == 0) {
      // Mixing toward uniform shrinks every top-block sum, so the pair is
      // guaranteed to be comparable.
      const double mix = rng.uniform01();
      std::vector<double> v(n);
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = (1.0 - mix) * rho[i] + mix / static_cast<double>(n);
      }
      pi = make_prior(std::move(v));
    } else {
      pi = random_prior(rng, n);
    }
    const auto fp = f_gamma(pi, budget.k).as_vector();
    const auto fr = f_gamma(rho, budget.k).as_vector();
    const OrderVerdict v = weak_sub_majorizes(
        std::vector<double>(fr.begin(), fr.end()),
        std::vector<double>(fp.begin(), fp.end()));
    if (v == OrderVerdict::Precedes || v == OrderVerdict::Equal) {
      detail::record(schur_mono,
                     std::max(0.0, h_gamma(pi, budget) - h_gamma(rho, budget)));
    }
  }
  report.checks.push_back(schur_mono);

  VerifyCheck dmax_order{"worst_case_ordering", 0, 0, 0.0, 1e-12};
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = n_min + rng.index(n_max - n_min + 1);
    const double gamma = rng.uniform(0.0, std::log(static_cast<double>(n)));
    const LeakageBudget budget = make_budget(gamma, n);
    const Mechanism p = random_mechanism_in_budget(rng, budget);
    const Mechanism q = (t % 2 == 0) ? uniform_budget_mechanism(n, budget)
                                     : random_mechanism_in_budget(rng, budget);
    const OrderVerdict v = weak_super_majorizes(p.diagonal(), q.diagonal());
    if (v == OrderVerdict::Precedes || v == OrderVerdict::Equal) {
      detail::record(dmax_order, std::max(0.0, d_max(q) - d_max(p)));
    }
  }
  report.checks.push_back(dmax_order);

  VerifyCheck axioms{"majorization_axioms", 0, 0, 0.0, 0.0};
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = n_min + rng.index(n_max - n_min + 1);
    std::vector<double> p(n);
    for (double& x : p) x = rng.uniform(0.0, 1.0);
    const std::vector<double> q = detail::apply_transfer(rng, p);
    const std::vector<double> r = detail::apply_transfer(rng, q);
    bool ok = majorizes(p, p) == OrderVerdict::Equal;
    const auto precedes_or_equal = [](OrderVerdict v) {
      return v == OrderVerdict::Precedes || v == OrderVerdict::Equal;
    };
    ok = ok && precedes_or_equal(majorizes(p, q));
    ok = ok && precedes_or_equal(majorizes(p, r));
    ok = ok && precedes_or_equal(weak_sub_majorizes(p, q));
    ok = ok && precedes_or_equal(weak_super_majorizes(p, q));
    ok = ok && majorizes(p, detail::shuffled(rng, p)) == OrderVerdict::Equal;
    detail::record_bool(axioms, ok);
  }
  report.checks.push_back(axioms);

  VerifyCheck construction{"construction_postconditions", 0, 0, 0.0, 1e-9};
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = n_min + rng.index(n_max - n_min + 1);
    const double gamma = rng.uniform(0.0, std::log(static_cast<double>(n)));
    const LeakageBudget budget = make_budget(gamma, n);
    const Prior pi = random_prior(rng, n);
    const Mechanism mech = optimal_mechanism(budget, pi);
    double disc = std::abs(maximal_leakage(mech) - budget.effective_gamma);
    disc = std::max(disc, std::abs(expected_distortion(mech, pi) -
                                   d_min_fixed_prior(budget, pi)));
    if (!verify_optimality_certificate(mech, budget, pi)) disc = 1.0;
    detail::record(construction, disc);
  }
  report.checks.push_back(construction);

  VerifyCheck reliability{"qstar_reliability", 0, 0, 0.0, 1e-12};
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = n_min + rng.index(n_max - n_min + 1);
    const double gamma = rng.uniform(0.0, std::log(static_cast<double>(n)));
    const LeakageBudget budget = make_budget(gamma, n);
    const Mechanism qstar = uniform_budget_mechanism(n, budget);
    const double expected = 1.0 - budget.exp_gamma / static_cast<double>(n);
    double disc = 0.0;
    for (int s = 0; s < 5; ++s) {
      const Prior pi = random_prior(rng, n);
      disc = std::max(disc, std::abs(expected_distortion(qstar, pi) - expected));
    }
    const Mechanism p = random_mechanism_in_budget(rng, budget);
    disc = std::max(disc, std::max(0.0, d_max(qstar) - d_max(p)));
    detail::record(reliability, disc);
  }
  report.checks.push_back(reliability);

  return report;
}

namespace detail {

inline std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

inline nlohmann::json report_to_json(const VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"trials", c.trials},
                      {"violations", c.violations},
                      {"max_discrepancy", c.max_discrepancy},
                      {"tolerance", c.tolerance},
                      {"ok", c.ok()}});
  }
  return nlohmann::json{{"seed", report.config.seed},
                        {"trials", report.config.trials},
                        {"nmax", report.config.n_max},
                        {"checks", checks},
                        {"ok", report.all_ok()},
                        {"max_abs_discrepancy", report.max_abs_discrepancy()}};
}

inline std::string render_report(const VerifyReport& report, bool as_json) {
  if (as_json) return report_to_json(report).dump(2) + "\n";
  std::string out = "verify seed=" + std::to_string(report.config.seed) +
                    " trials=" + std::to_string(report.config.trials) +
                    " nmax=" + std::to_string(report.config.n_max) + "\n";
  for (const auto& c : report.checks) {
    char line[256];
    std::snprintf(line, sizeof(line),
                  "%-22s trials=%-4d violations=%-3d max_discrepancy=%s tolerance=%s %s\n",
                  c.name.c_str(), c.trials, c.violations,
                  detail::fmt17(c.max_discrepancy).c_str(),
                  detail::fmt17(c.tolerance).c_str(), c.ok() ? "ok" : "FAIL");
    out += line;
  }
  out += std::string("overall ") + (report.all_ok() ? "ok" : "FAIL") +
         " max_abs_discrepancy=" + detail::fmt17(report.max_abs_discrepancy()) +
         "\n";
  return out;
}

}  // namespace maxleak
