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
#include <utility>
#include <vector>

#include "pqr/features.hpp"
#include "pqr/mdp.hpp"

namespace pqr {

/// (s_h, a_h), (s_{h+1}, a_{h+1}), ..., ending in a terminal state. The
/// probability covers the actions after the first one, which is given.
struct Trajectory {
  std::vector<std::pair<State, Action>> steps;
  State terminal = State::initial(1);
  double probability = 1.0;
};

inline constexpr int kTrajectoryCap = 20;

/// Deterministic rollout: take `action`, then follow the greedy policy.
Rational eval_q_greedy(const MdpInstance& instance, const PolicyParams& params,
                       const State& state, Action action);

/// v(s) = q(s, pi(s)); the terminal reward for a terminal state.
Rational eval_v_greedy(const MdpInstance& instance, const PolicyParams& params,
                       const State& state);

/// Expected terminal reward under the softmax continuation, computed clause by
/// clause: each undecided clause is satisfied with probability
/// 1 - prod Pr[literal false], variables being drawn independently.
double eval_q_softmax(const MdpInstance& instance, const PolicyParams& params,
                      const State& state, Action action);

/// The same expectation as an explicit sum over all 2^{H-h-1} trajectories.
double eval_q_softmax_exhaustive(const MdpInstance& instance, const PolicyParams& params,
                                 const State& state, Action action, int cap = kTrajectoryCap);

double eval_v_softmax(const MdpInstance& instance, const PolicyParams& params,
                      const State& state);

std::vector<Trajectory> enumerate_trajectories(const MdpInstance& instance,
                                               const PolicyParams& params, const State& state,
                                               Action action,
                                               PolicyClass cls = PolicyClass::Softmax,
                                               int cap = kTrajectoryCap);

/// theta_h built from its definition: sum over continuation trajectories of
/// P(tau) * [1, M_h(tau)]. Exponential; kept as the reference for
/// softmax_weight.
SoftmaxWeight softmax_weight_from_trajectories(const MdpInstance& instance,
                                               const PolicyParams& params, int h,
                                               int cap = kTrajectoryCap);

struct BestGreedy {
  PolicyParams params;
  Assignment assignment;
  Rational value;
};

/// Sweeps the 2^n sign patterns, which realize every behaviour of the greedy
/// class. Ties resolve to the lexicographically greatest assignment.
BestGreedy best_greedy(const MdpInstance& instance, int cap = kDefaultBruteForceCap);

/// One episode from s_1 drawn with the softmax policy. Reproducible by seed;
/// here the probability includes the first draw as well.
Trajectory sample_trajectory(const MdpInstance& instance, const PolicyParams& params,
                             std::uint64_t seed);

}  // namespace pqr
