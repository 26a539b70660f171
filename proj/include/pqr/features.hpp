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
#include <vector>

#include "pqr/cnf.hpp"
#include "pqr/mdp.hpp"
#include "pqr/rational.hpp"

namespace pqr {

/// Policy parameters theta' in R^n. One entry per stage.
struct PolicyParams {
  std::vector<double> theta_prime;

  /// Throws Error(InvalidArgument) on non-finite entries.
  static PolicyParams from(std::vector<double> theta);

  /// Canonical greedy representative of an assignment: +1 for 1, -1 for 0.
  static PolicyParams sign_pattern(const Assignment& assignment, double magnitude = 1.0);

  std::size_t size() const noexcept { return theta_prime.size(); }
  double at_stage(int h) const;  // theta'_h, 1-based
};

enum class PolicyClass { Greedy, Softmax };

const char* to_string(PolicyClass cls) noexcept;
PolicyClass policy_class_from_string(std::string_view text);

// --- policy-set parameterization -------------------------------------------

/// One-hot stage feature: entry h is +1 for True, -1 for False.
struct PspFeature {
  int stage = 1;
  Action action = Action::False;
  std::vector<int> vector;
};

PspFeature psp_feature(int h, Action action, int d_prime);

/// argmax_a <phi'(s_h,a), theta'>, ties to action 0.
Action greedy_action(int h, const PolicyParams& params);

/// 0 if theta'_h <= 0, else 1.
int f_threshold(const PolicyParams& params, int h);

/// Probability of action True at stage h: e^t / (e^t + e^-t), t = theta'_h.
double softmax_prob(int h, const PolicyParams& params);

// --- realizability vectors --------------------------------------------------

/// Multiset of simplified undecided clauses after x_1..x_h are fixed to
/// prefix[0..h). Order follows the formula's clause order.
std::vector<Clause> undecided_multiset(const Formula& formula,
                                       std::span<const std::int8_t> prefix);

/// phi(s_h, a) = [b_h, Y_h] / |C|. The scale is kept separate so the
/// entries stay integral.
struct RealizabilityFeature {
  int stage = 1;
  std::int64_t satisfied = 0;  // b_h
  std::vector<std::int32_t> undecided;  // Y_h over universe coordinates
  std::int64_t clause_count = 1;  // 1/scale

  std::int64_t undecided_total() const;
};

RealizabilityFeature realizability_feature(const MdpInstance& instance, const State& state,
                                           Action action);

/// theta_h = [1, M_h] for a greedy policy; M_h entries are 0/1.
struct GreedyWeight {
  int stage = 1;
  std::int64_t head = 1;
  std::vector<std::uint8_t> lookahead;
};

/// theta_h = [1, M_h] for a softmax policy; M_h entries are probabilities.
struct SoftmaxWeight {
  int stage = 1;
  double head = 1.0;
  std::vector<double> lookahead;
};

GreedyWeight greedy_weight(const MdpInstance& instance, const PolicyParams& params, int h);

SoftmaxWeight softmax_weight(const MdpInstance& instance, const PolicyParams& params, int h);

/// Prefix of (state, action), then x_j = f_j(theta') for the remaining
/// variables. A terminal state is returned unchanged.
State lookahead_state(const State& state, Action action, const PolicyParams& params);

/// <Y_h, M_h> in integer arithmetic.
std::int64_t lookahead_inner(const RealizabilityFeature& phi, const GreedyWeight& theta);
double lookahead_inner(const RealizabilityFeature& phi, const SoftmaxWeight& theta);

Rational dot(const RealizabilityFeature& phi, const GreedyWeight& theta);
double dot(const RealizabilityFeature& phi, const SoftmaxWeight& theta);

}  // namespace pqr
