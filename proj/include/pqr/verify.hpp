// Copyright 2026 The pqreduce Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pqr/cnf.hpp"
#include "pqr/rational.hpp"

namespace pqr {

struct SuiteFailure {
  std::string message;
  nlohmann::json inputs;  // enough to reproduce the failing case
};

struct SuiteResult {
  std::string suite;
  std::int64_t cases = 0;
  std::int64_t failure_count = 0;
  std::vector<SuiteFailure> failures;  // first kMaxRecordedFailures, sorted on output
  std::uint64_t seed = 0;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json metrics = nlohmann::json::object();
  std::vector<std::string> operations;  // library operations the suite exercises
  double wall_seconds = 0.0;

  bool passed() const noexcept { return failure_count == 0; }

  void fail(std::string message, nlohmann::json inputs);

  /// Wall time is omitted unless asked for, so exact suites serialize
  /// byte-identically across runs.
  nlohmann::json to_json(bool include_timing = false) const;
};

inline constexpr std::size_t kMaxRecordedFailures = 200;

struct GreedySuiteConfig {
  int n_min = 1;
  int n_max = 6;
  int formulas_per_n = 20;
  int max_occurrence = 3;
  std::uint64_t seed = 1;
  std::vector<Formula> extra_formulas;
};

/// q^pi(s,a) == <phi(s,a), theta_h> exactly for every sign pattern and every
/// non-terminal cell, plus the decomposition identity and both base cases.
SuiteResult check_realizability_greedy(const GreedySuiteConfig& config);

/// <Y_{h-1},M_{h-1}> - <Y_h,M_h> == b_h - b_{h-1} on every consecutive pair of
/// every greedy trajectory (from every starting cell).
SuiteResult check_telescoping(const GreedySuiteConfig& config);

struct SoftmaxSuiteConfig {
  int n_min = 1;
  int n_max = 5;
  int formulas_per_n = 10;
  int thetas_per_formula = 50;
  double theta_range = 3.0;
  double tol = 1e-9;
  double closed_form_tol = 1e-12;
  int max_occurrence = 3;
  std::uint64_t seed = 1;
  std::vector<Formula> extra_formulas;
};

/// |q^pi - <phi, theta_h>| <= tol on every cell, the closed-form weights
/// against the trajectory-sum definition, and the per-clause q against the
/// exhaustive trajectory sum.
SuiteResult check_realizability_softmax(const SoftmaxSuiteConfig& config);

struct LimitSuiteConfig {
  int n_min = 1;
  int n_max = 5;
  int formulas_per_n = 5;
  double magnitude = 20.0;
  double tol = 1e-6;
  int max_occurrence = 3;
  std::uint64_t seed = 1;
};

/// With theta' = +-magnitude, softmax probabilities, weights and q-values
/// agree with the greedy ones within tol.
SuiteResult check_limit_coupling(const LimitSuiteConfig& config);

struct ScalingSuiteConfig {
  std::vector<int> n_list{5, 10, 20, 40};
  double max_slope_greedy = 3.5;
  double max_slope_softmax = 4.5;
  int closed_form_n_max = 40;
  double min_sample_seconds = 0.02;
  std::uint64_t seed = 1;
};

/// Times universe enumeration, one stage of greedy vectors (phi and theta_h)
/// averaged over the stages, and the softmax weights for every stage; fits
/// log-log slopes. Universe sizes are checked against the closed forms for
/// every n up to closed_form_n_max.
SuiteResult check_construction_scaling(const ScalingSuiteConfig& config);

struct RoundtripSuiteConfig {
  int count = 100;
  int n = 10;
  Rational delta{1, 10};
  Rational epsilon{1, 20};
  int clauses_per_variable = 4;
  std::uint64_t seed = 1;
};

/// Planted (1 - delta + 2 epsilon)-satisfiable instances through the decider
/// with the exact and the epsilon-adversarial solvers; every answer must be
/// Yes with a re-verified certificate. A contradictory-unit instance must
/// give No.
SuiteResult check_reduction_roundtrip(const RoundtripSuiteConfig& config);

struct McDiarmidSuiteConfig {
  int n = 12;
  int b = 3;
  std::int64_t trials = 100000;
  double p0 = 0.125;
  int policies = 1;
  double theta_range = 3.0;
  std::uint64_t seed = 1;
};

/// Calibration t gives tail exactly p0; the Monte-Carlo tail at that t stays
/// within the bound plus 3 standard errors.
SuiteResult check_mcdiarmid(const McDiarmidSuiteConfig& config);

/// Names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// Runs a named suite, overriding defaults from a JSON object
/// (keys: n_min, n_max, formulas_per_n, thetas_per_formula, tol, seed, count,
/// n, delta, epsilon, trials, p0, b, n_list, max_slope_greedy, max_slope_softmax,
/// magnitude).
SuiteResult run_suite(const std::string& name, const nlohmann::json& params);

}  // namespace pqr
