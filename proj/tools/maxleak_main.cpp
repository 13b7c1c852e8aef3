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

// Command line front end. Exit codes: 0 success, 1 verification failure,
// 2 input or usage error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxleak/maxleak.hpp"
#include "maxleak/selftest.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!content.empty() && content.back() != '\n') out << '\n';
}

// Budgets are accepted either as a plain value in nats or as "log:<x>",
// meaning log(x).
double parse_gamma(const std::string& text) {
  std::string raw = text;
  bool take_log = false;
  if (raw.rfind("log:", 0) == 0) {
    raw = raw.substr(4);
    take_log = true;
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(raw, &used);
  } catch (const std::exception&) {
    throw std::runtime_error("cannot parse gamma \"" + text + "\"");
  }
  if (used != raw.size()) {
    throw std::runtime_error("cannot parse gamma \"" + text + "\"");
  }
  return take_log ? std::log(value) : value;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void print_kv(const std::string& key, const std::string& value) {
  std::printf("%-18s %s\n", key.c_str(), value.c_str());
}

std::string vector_display(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += fmt6(v[i]);
  }
  return out + "]";
}

struct CommonOptions {
  std::string format = "table";

  bool json() const { return format == "json"; }
};

int run_leakage(const std::string& mechanism_file, const CommonOptions& common) {
  const maxleak::Mechanism mech =
      maxleak::parse_mechanism(read_file(mechanism_file));
  const double gamma = maxleak::maximal_leakage(mech);
  const double bound = maxleak::leakage_upper_bound(mech);
  if (common.json()) {
    nlohmann::json j{{"gamma", gamma},
                     {"exp_gamma", std::exp(gamma)},
                     {"bound", bound},
                     {"rows", mech.n_rows()},
                     {"cols", mech.n_cols()}};
    std::cout << j.dump(2) << "\n";
  } else {
    print_kv("gamma", fmt6(gamma));
    print_kv("exp_gamma", fmt6(std::exp(gamma)));
    print_kv("bound", fmt6(bound));
  }
  return kExitOk;
}

int run_design(const std::string& gamma_text, const std::string& prior_file,
               const std::string& out_file, const CommonOptions& common) {
  const maxleak::Prior pi = maxleak::parse_prior(read_file(prior_file));
  const maxleak::LeakageBudget budget =
      maxleak::make_budget(parse_gamma(gamma_text), pi.size());
  const maxleak::DesignResult result = maxleak::design(budget, pi);
  if (!out_file.empty()) {
    write_file(out_file, maxleak::serialize(result.mechanism));
  }
  if (common.json()) {
    nlohmann::json j{{"d_min", result.d_min},
                     {"k", budget.k},
                     {"gamma", budget.effective_gamma},
                     {"exp_gamma", budget.exp_gamma},
                     {"achieved_leakage", result.achieved_leakage},
                     {"mechanism", maxleak::to_json(result.mechanism)}};
    std::cout << j.dump(2) << "\n";
  } else {
    print_kv("d_min", fmt6(result.d_min));
    print_kv("k", std::to_string(budget.k));
    print_kv("exp_gamma", fmt6(budget.exp_gamma));
    print_kv("achieved_leakage", fmt6(result.achieved_leakage));
    if (!out_file.empty()) print_kv("mechanism", "written to " + out_file);
  }
  return kExitOk;
}

int run_robust(const std::string& gamma_text, const std::string& set_file,
               const std::string& out_file, const CommonOptions& common) {
  const maxleak::PriorSet set = maxleak::parse_prior_set(read_file(set_file));
  const maxleak::LeakageBudget budget =
      maxleak::make_budget(parse_gamma(gamma_text), set.dimension());
  const maxleak::RobustReport report = maxleak::d_min_robust(budget, set);
  if (!out_file.empty()) {
    write_file(out_file, maxleak::serialize(report.mechanism));
  }
  if (common.json()) {
    nlohmann::json j{{"d_min", report.d_min},
                     {"worst_prior", maxleak::to_json(report.worst_prior)},
                     {"path", maxleak::to_string(report.path_used)},
                     {"k", budget.k},
                     {"gamma", budget.effective_gamma},
                     {"exp_gamma", budget.exp_gamma},
                     {"mechanism", maxleak::to_json(report.mechanism)}};
    std::cout << j.dump(2) << "\n";
  } else {
    print_kv("d_min", fmt6(report.d_min));
    print_kv("worst_prior", vector_display(report.worst_prior.probs()));
    print_kv("path", maxleak::to_string(report.path_used));
    print_kv("k", std::to_string(budget.k));
    print_kv("exp_gamma", fmt6(budget.exp_gamma));
    if (!out_file.empty()) print_kv("mechanism", "written to " + out_file);
  }
  return kExitOk;
}

int run_dmax(const std::string& first_file, const std::string& second_file,
             const CommonOptions& common) {
  const maxleak::Mechanism first =
      maxleak::parse_mechanism(read_file(first_file));
  if (second_file.empty()) {
    const double d = maxleak::d_max(first);
    if (common.json()) {
      nlohmann::json j{{"d_max", d}, {"attained", false}, {"min_diagonal", 1.0 - d}};
      std::cout << j.dump(2) << "\n";
    } else {
      print_kv("d_max", fmt6(d));
      print_kv("attained", "false");
    }
    return kExitOk;
  }
  const maxleak::Mechanism second =
      maxleak::parse_mechanism(read_file(second_file));
  const maxleak::DmaxComparison cmp = maxleak::compare_dmax(first, second);
  if (common.json()) {
    nlohmann::json j{{"first", {{"d_max", cmp.d_max_first}, {"attained", false}}},
                     {"second", {{"d_max", cmp.d_max_second}, {"attained", false}}},
                     {"certificate", maxleak::to_string(cmp.diagonal_certificate)},
                     {"value_order", maxleak::to_string(cmp.value_order)}};
    std::cout << j.dump(2) << "\n";
  } else {
    print_kv("d_max_first", fmt6(cmp.d_max_first));
    print_kv("d_max_second", fmt6(cmp.d_max_second));
    print_kv("certificate", maxleak::to_string(cmp.diagonal_certificate));
    print_kv("value_order", maxleak::to_string(cmp.value_order));
  }
  return kExitOk;
}

int run_verify(std::uint64_t seed, int trials, int nmax,
               const CommonOptions& common) {
  const maxleak::VerifyReport report =
      maxleak::run_verification({seed, trials, nmax});
  std::cout << maxleak::render_report(report, common.json());
  return report.all_ok() ? kExitOk : kExitVerificationFailure;
}

struct ReproduceFailure {
  std::string message;
};

void check_close(const std::string& what, double actual, double expected,
                 double tol) {
  if (!(std::abs(actual - expected) <= tol)) {
    std::ostringstream os;
    os << what << ": expected " << expected << " got " << actual;
    throw ReproduceFailure{os.str()};
  }
}

int run_reproduce(const std::string& data_dir) {
  const std::string pi1_path = data_dir + "/pi1_segment.json";
  const std::string union_path = data_dir + "/union_pi1_pi2.json";
  const std::string mech1_path = data_dir + "/example1_mechanism.json";
  const std::string mech2_path = data_dir + "/example2_mechanism.json";

  const maxleak::PriorSet pi1 = maxleak::parse_prior_set(read_file(pi1_path));
  const maxleak::PriorSet both = maxleak::parse_prior_set(read_file(union_path));
  const maxleak::Mechanism mech1 =
      maxleak::parse_mechanism(read_file(mech1_path));
  const maxleak::Mechanism mech2 =
      maxleak::parse_mechanism(read_file(mech2_path));

  const maxleak::LeakageBudget budget = maxleak::make_budget(std::log(2.5), 4);
  try {
    const maxleak::RobustReport r1 = maxleak::d_min_robust(budget, pi1);
    check_close("Example1 d_min", r1.d_min, 0.3, 1e-9);
    const std::vector<double> worst1{0.2, 0.4, 0.2, 0.2};
    for (std::size_t i = 0; i < worst1.size(); ++i) {
      check_close("Example1 worst prior entry " + std::to_string(i + 1),
                  r1.worst_prior[i], worst1[i], 1e-9);
    }
    std::cout << "Example1: d_min=0.3 OK\n";

    const maxleak::RobustReport r2 = maxleak::d_min_robust(budget, both);
    check_close("Example2 d_min", r2.d_min, 0.28, 1e-9);
    const std::vector<double> worst2{0.29, 0.28, 0.29, 0.14};
    for (std::size_t i = 0; i < worst2.size(); ++i) {
      check_close("Example2 worst prior entry " + std::to_string(i + 1),
                  r2.worst_prior[i], worst2[i], 1e-9);
    }
    std::cout << "Example2: d_min=0.28 OK\n";

    check_close("Example1 mechanism leakage", maxleak::maximal_leakage(mech1),
                std::log(2.5), 1e-9);
    check_close("Example2 mechanism leakage", maxleak::maximal_leakage(mech2),
                std::log(2.5), 1e-9);
    if (!maxleak::verify_optimality_certificate(mech1, budget, r1.worst_prior)) {
      throw ReproduceFailure{"Example1 mechanism fails the optimality certificate"};
    }
    if (!maxleak::verify_optimality_certificate(mech2, budget, r2.worst_prior)) {
      throw ReproduceFailure{"Example2 mechanism fails the optimality certificate"};
    }
    std::cout << "certificates: OK\n";
  } catch (const ReproduceFailure& f) {
    std::cout << "FAIL " << f.message << "\n";
    return kExitVerificationFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"design and audit of discrete privacy mechanisms under a maximal-leakage budget"};
  app.require_subcommand(1);

  CommonOptions common;
  int exit_code = kExitOk;

  auto* leakage = app.add_subcommand("leakage", "audit the maximal leakage of a mechanism");
  std::string leakage_file;
  leakage->add_option("mechanism", leakage_file, "mechanism JSON file")->required();
  leakage->add_option("--format", common.format, "output format")
      ->check(CLI::IsMember({"json", "table"}));
  leakage->callback([&]() { exit_code = run_leakage(leakage_file, common); });

  auto* design = app.add_subcommand("design", "optimal mechanism for a known prior");
  std::string design_gamma;
  std::string design_prior;
  std::string design_out;
  design->add_option("--gamma", design_gamma, "leakage budget in nats, or log:<x>")
      ->required();
  design->add_option("prior", design_prior, "prior JSON file")->required();
  design->add_option("--out", design_out, "write the mechanism to this file");
  design->add_option("--format", common.format, "output format")
      ->check(CLI::IsMember({"json", "table"}));
  design->callback(
      [&]() { exit_code = run_design(design_gamma, design_prior, design_out, common); });

  auto* robust = app.add_subcommand("robust", "worst-case design over a prior set");
  std::string robust_gamma;
  std::string robust_set;
  std::string robust_out;
  robust->add_option("--gamma", robust_gamma, "leakage budget in nats, or log:<x>")
      ->required();
  robust->add_option("set", robust_set, "prior set JSON file")->required();
  robust->add_option("--out", robust_out, "write the mechanism to this file");
  robust->add_option("--format", common.format, "output format")
      ->check(CLI::IsMember({"json", "table"}));
  robust->callback(
      [&]() { exit_code = run_robust(robust_gamma, robust_set, robust_out, common); });

  auto* dmax = app.add_subcommand("dmax", "worst-case distortion of mechanisms");
  std::string dmax_first;
  std::string dmax_second;
  dmax->add_option("mechanism", dmax_first, "mechanism JSON file")->required();
  dmax->add_option("mechanism2", dmax_second, "second mechanism to compare");
  dmax->add_option("--format", common.format, "output format")
      ->check(CLI::IsMember({"json", "table"}));
  dmax->callback([&]() { exit_code = run_dmax(dmax_first, dmax_second, common); });

  auto* verify = app.add_subcommand("verify", "run the oracle and property suites");
  std::uint64_t verify_seed = 7;
  int verify_trials = 200;
  int verify_nmax = 6;
  verify->add_option("--seed", verify_seed, "random seed");
  verify->add_option("--trials", verify_trials, "oracle instances")
      ->check(CLI::PositiveNumber);
  verify->add_option("--nmax", verify_nmax, "largest alphabet size")
      ->check(CLI::Range(2, 12));
  verify->add_option("--format", common.format, "output format")
      ->check(CLI::IsMember({"json", "table"}));
  verify->callback(
      [&]() { exit_code = run_verify(verify_seed, verify_trials, verify_nmax, common); });

  auto* reproduce = app.add_subcommand("reproduce", "recompute the bundled reference results");
  std::string reproduce_data = "data";
  reproduce->add_option("--data", reproduce_data, "directory with the bundled fixtures");
  reproduce->callback([&]() { exit_code = run_reproduce(reproduce_data); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  } catch (const maxleak::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return exit_code;
}
