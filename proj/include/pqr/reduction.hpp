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
#include <functional>
#include <optional>
#include <string>

#include "pqr/cnf.hpp"
#include "pqr/features.hpp"
#include "pqr/mdp.hpp"
#include "pqr/rational.hpp"

namespace pqr {

enum class ExtractMode { Round, Sample };

const char* to_string(ExtractMode mode) noexcept;
ExtractMode extract_mode_from_string(std::string_view text);

/// x_h = greedy action at stage h.
Assignment extract_assignment_greedy(const PolicyParams& params, int n);

/// Round: x_h = 1 iff the True-probability exceeds 1/2 (a tie gives 0, as in
/// the greedy rule). Sample: x_h ~ Bernoulli(softmax_prob(h)), seeded.
Assignment extract_assignment_softmax(const PolicyParams& params, int n, ExtractMode mode,
                                      std::uint64_t seed = 0);

/// An RL solver sees the instance (features included), a generative model,
/// the target accuracy and the policy class, and returns theta'.
using RlSolver = std::function<PolicyParams(const MdpInstance&, GenerativeModel&,
                                            const Rational& epsilon, PolicyClass)>;

/// Exhaustive solver: sweeps sign patterns through generative queries. For
/// the softmax class it scales the best pattern until v(s_1) is within
/// epsilon of the greedy optimum (the softmax supremum is not attained).
RlSolver exact_solver(int cap = kDefaultBruteForceCap);

/// Returns the worst greedy pattern that is still epsilon-optimal. Exercises
/// the soundness side of the decider.
RlSolver epsilon_adversary_solver(int cap = kDefaultBruteForceCap);

struct DecideOptions {
  PolicyClass policy_class = PolicyClass::Greedy;
  ExtractMode mode = ExtractMode::Sample;
  std::uint64_t seed = 0;
  double p0 = 0.125;
  /// Occurrence bound; defaults to the formula's own bound when unset.
  std::optional<int> b;
  /// Known optimum; computed by brute force when unset and n <= cap.
  std::optional<Rational> v_star;
  int brute_force_cap = kDefaultBruteForceCap;
  /// Failure probability allowed to the RL solver (reported only).
  double solver_error = 0.1;
};

struct BoundDetails {
  int b = 0;
  std::int64_t clause_count = 0;
  int horizon = 0;
  double p0 = 0.125;
  double t = 0.0;     // calibration deviation for p0
  double tail = 1.0;  // mcdiarmid_tail at t
  bool softmax_checked = false;
  std::optional<double> epsilon_bound;
  std::optional<double> horizon_floor;
  std::string note;
};

struct ReductionReport {
  bool yes = false;
  Assignment extracted;
  Rational achieved_fraction;
  Rational epsilon;
  Rational delta;
  PolicyClass policy_class = PolicyClass::Greedy;
  ExtractMode mode = ExtractMode::Round;
  std::uint64_t seed = 0;
  PolicyParams params;
  std::optional<Rational> v_star;
  std::optional<Rational> policy_value_exact;  // greedy
  double policy_value = 0.0;
  double success_probability = 1.0;
  std::uint64_t solver_queries = 0;
  BoundDetails bounds;
};

ReductionReport decide_max3sat(const Formula& formula, const Rational& delta,
                               const RlSolver& solver, const Rational& epsilon,
                               const DecideOptions& options = {});

/// delta / 2.
Rational epsilon_bound_greedy(const Rational& delta);

/// exp(-2 t^2 C^2 / (H b^2)).
double mcdiarmid_tail(double t, int horizon, int b, std::int64_t clause_count);

/// The t at which mcdiarmid_tail equals p0: (b/C) sqrt(H ln(1/p0) / 2).
double mcdiarmid_calibration_t(int horizon, int b, std::int64_t clause_count, double p0);

/// v* + delta - (b/C) sqrt(H ln(1/p0) / 2) - 1. May be negative.
double epsilon_bound_softmax(const Rational& v_star, int horizon, int b,
                             std::int64_t clause_count, const Rational& delta, double p0);

/// Horizon floor 1 / (v* - (1 - delta))^2; infinite when v* <= 1 - delta.
double softmax_horizon_floor(const Rational& v_star, const Rational& delta);

/// Gap-3-SAT instance to delta-Max-3SAT(b): an identity copy once the
/// occurrence bound and delta > epsilon are checked.
Formula gap3sat_to_delta_b(const Formula& formula, int b, const Rational& epsilon,
                           const Rational& delta);

struct McDiarmidCheck {
  double expected = 0.0;
  double empirical_tail = 0.0;
  double bound = 1.0;
  double slack = 0.0;
  bool pass = false;
  std::int64_t trials = 0;
  double t = 0.0;
  int b = 0;
};

/// Monte-Carlo estimate of Pr[R - E[R] <= -t] under the softmax policy,
/// against the bounded-difference tail with b = the formula's occurrence
/// bound. Passes when the estimate is within 3 standard errors of the bound.
McDiarmidCheck empirical_mcdiarmid(const MdpInstance& instance, const PolicyParams& params,
                                   std::int64_t trials, double t, std::uint64_t seed);

}  // namespace pqr
