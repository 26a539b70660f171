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

#include "pqr/policies.hpp"

#include "pqr/error.hpp"
#include "pqr/rng.hpp"

namespace pqr {

namespace {

void check_inputs(const MdpInstance& instance, const PolicyParams& params, const State& state) {
  if (params.size() != static_cast<std::size_t>(instance.n())) {
    throw Error(ErrorCode::InvalidArgument, "theta' has " + std::to_string(params.size()) +
                                                " entries, expected " +
                                                std::to_string(instance.n()));
  }
  if (state.size() != instance.n()) {
    throw Error(ErrorCode::InvalidArgument, "state length does not match n");
  }
}

void check_nonterminal(const State& state) {
  if (state.is_terminal()) {
    throw Error(ErrorCode::TerminalState, "q is undefined at terminal state " + state.to_string());
  }
}

void enumerate_from(const MdpInstance& instance, const PolicyParams& params, PolicyClass cls,
                    Trajectory& current, std::vector<Trajectory>& out) {
  const State next = transition(current.steps.back().first, current.steps.back().second);
  if (next.is_terminal()) {
    Trajectory done = current;
    done.terminal = next;
    out.push_back(std::move(done));
    return;
  }
  const int h = next.stage();
  if (cls == PolicyClass::Greedy) {
    current.steps.emplace_back(next, greedy_action(h, params));
    enumerate_from(instance, params, cls, current, out);
    current.steps.pop_back();
    return;
  }
  const double p = softmax_prob(h, params);
  const double saved = current.probability;
  for (Action a : {Action::False, Action::True}) {
    current.probability = saved * (a == Action::True ? p : 1.0 - p);
    current.steps.emplace_back(next, a);
    enumerate_from(instance, params, cls, current, out);
    current.steps.pop_back();
  }
  current.probability = saved;
}

}  // namespace

Rational eval_q_greedy(const MdpInstance& instance, const PolicyParams& params,
                       const State& state, Action action) {
  check_inputs(instance, params, state);
  check_nonterminal(state);
  auto step = generative_query(instance, state, action);
  while (!step.next.is_terminal()) {
    const Action a = greedy_action(step.next.stage(), params);
    step = generative_query(instance, step.next, a);
  }
  return step.reward;
}

Rational eval_v_greedy(const MdpInstance& instance, const PolicyParams& params,
                       const State& state) {
  check_inputs(instance, params, state);
  if (state.is_terminal()) return reward(instance, state);
  return eval_q_greedy(instance, params, state, greedy_action(state.stage(), params));
}

double eval_q_softmax(const MdpInstance& instance, const PolicyParams& params,
                      const State& state, Action action) {
  check_inputs(instance, params, state);
  check_nonterminal(state);
  const int n = instance.n();
  const int h = state.stage();
  std::vector<std::int8_t> prefix(state.values().begin(), state.values().end());
  prefix[static_cast<std::size_t>(h - 1)] = static_cast<std::int8_t>(to_int(action));
  prefix.resize(static_cast<std::size_t>(h));

  std::vector<double> p_true(static_cast<std::size_t>(n) + 1, 0.0);
  for (int j = h + 1; j <= n; ++j) p_true[j] = softmax_prob(j, params);

  double expected_satisfied = 0.0;
  for (const auto& clause : instance.formula().clauses()) {
    const auto status = eval_clause(clause, prefix);
    if (status.state == ClauseState::Satisfied) {
      expected_satisfied += 1.0;
    } else if (status.state == ClauseState::Undecided) {
      double all_false = 1.0;
      for (const auto& lit : status.simplified->literals()) {
        all_false *= lit.negated ? p_true[lit.variable] : 1.0 - p_true[lit.variable];
      }
      expected_satisfied += 1.0 - all_false;
    }
  }
  return expected_satisfied / static_cast<double>(instance.clause_count());
}

double eval_q_softmax_exhaustive(const MdpInstance& instance, const PolicyParams& params,
                                 const State& state, Action action, int cap) {
  double total = 0.0;
  for (const auto& tau :
       enumerate_trajectories(instance, params, state, action, PolicyClass::Softmax, cap)) {
    total += tau.probability * to_double(reward(instance, tau.terminal));
  }
  return total;
}

double eval_v_softmax(const MdpInstance& instance, const PolicyParams& params,
                      const State& state) {
  check_inputs(instance, params, state);
  if (state.is_terminal()) return to_double(reward(instance, state));
  const double p = softmax_prob(state.stage(), params);
  return p * eval_q_softmax(instance, params, state, Action::True) +
         (1.0 - p) * eval_q_softmax(instance, params, state, Action::False);
}

std::vector<Trajectory> enumerate_trajectories(const MdpInstance& instance,
                                               const PolicyParams& params, const State& state,
                                               Action action, PolicyClass cls, int cap) {
  check_inputs(instance, params, state);
  check_nonterminal(state);
  const int branching = instance.horizon() - state.stage() - 1;
  if (cls == PolicyClass::Softmax && branching > cap) {
    throw Error(ErrorCode::CapExceeded, "2^" + std::to_string(branching) +
                                            " trajectories exceed cap 2^" +
                                            std::to_string(cap));
  }
  std::vector<Trajectory> out;
  out.reserve(cls == PolicyClass::Softmax ? std::size_t{1} << branching : 1);
  Trajectory current;
  current.terminal = state;
  current.steps.emplace_back(state, action);
  enumerate_from(instance, params, cls, current, out);
  return out;
}

SoftmaxWeight softmax_weight_from_trajectories(const MdpInstance& instance,
                                               const PolicyParams& params, int h, int cap) {
  const int n = instance.n();
  if (h < 1 || h > n) {
    throw Error(ErrorCode::InvalidArgument, "weight stage " + std::to_string(h) +
                                                " outside 1.." + std::to_string(n));
  }
  // The continuation law does not depend on (s_h, a_h); any stage-h pair
  // yields the same trajectory probabilities over x_{h+1..n}.
  std::vector<std::int8_t> values(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < h - 1; ++i) values[static_cast<std::size_t>(i)] = 0;
  const State anchor = State::from_values(std::move(values));

  const auto& entries = instance.universe().entries();
  SoftmaxWeight theta;
  theta.stage = h;
  theta.head = 0.0;
  theta.lookahead.assign(entries.size(), 0.0);
  for (const auto& tau :
       enumerate_trajectories(instance, params, anchor, Action::False, PolicyClass::Softmax, cap)) {
    theta.head += tau.probability;
    const auto leaf = tau.terminal.values();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].min_variable() <= h) continue;
      for (const auto& lit : entries[i].literals()) {
        if (lit.holds(leaf[static_cast<std::size_t>(lit.variable - 1)])) {
          theta.lookahead[i] += tau.probability;
          break;
        }
      }
    }
  }
  return theta;
}

BestGreedy best_greedy(const MdpInstance& instance, int cap) {
  const int n = instance.n();
  if (n > cap || n > 62) {
    throw Error(ErrorCode::CapExceeded, "sign-pattern sweep over 2^" + std::to_string(n) +
                                            " policies exceeds cap n <= " +
                                            std::to_string(cap));
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  BestGreedy best;
  bool have = false;
  std::vector<std::int8_t> values(static_cast<std::size_t>(n));
  Assignment leaf(static_cast<std::size_t>(n));
  PolicyParams params{std::vector<double>(static_cast<std::size_t>(n))};
  // Descending codes so that the first maximum met is the greatest one.
  for (std::uint64_t k = total; k-- > 0;) {
    for (int j = 1; j <= n; ++j) {
      params.theta_prime[static_cast<std::size_t>(j - 1)] = ((k >> (n - j)) & 1U) ? 1.0 : -1.0;
    }
    // Roll the policy forward from s_1; every stage applies its own action.
    for (int h = 1; h <= n; ++h) {
      leaf[static_cast<std::size_t>(h - 1)] =
          static_cast<std::uint8_t>(to_int(greedy_action(h, params)));
    }
    const Rational value = satisfied_fraction(instance.formula(), leaf);
    if (!have || value > best.value) {
      best.value = value;
      best.assignment = leaf;
      best.params = params;
      have = true;
    }
  }
  return best;
}

Trajectory sample_trajectory(const MdpInstance& instance, const PolicyParams& params,
                             std::uint64_t seed) {
  State s = State::initial(instance.n());
  check_inputs(instance, params, s);
  CounterRng rng(seed);
  Trajectory tau;
  while (!s.is_terminal()) {
    const int h = s.stage();
    const double p = softmax_prob(h, params);
    const Action a = rng.next_unit() < p ? Action::True : Action::False;
    tau.probability *= a == Action::True ? p : 1.0 - p;
    State next = transition(s, a);
    tau.steps.emplace_back(std::move(s), a);
    s = std::move(next);
  }
  tau.terminal = std::move(s);
  return tau;
}

}  // namespace pqr
