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

#include <doctest.h>

#include <cmath>

#include "pqr/cnf.hpp"
#include "pqr/error.hpp"
#include "pqr/features.hpp"
#include "pqr/generators.hpp"
#include "pqr/policies.hpp"
#include "pqr/rng.hpp"

using namespace pqr;

namespace {

const char* kTwoClause = "p cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n";

MdpInstance two_clause() { return build_mdp(parse_dimacs(kTwoClause)); }

State st(std::vector<std::int8_t> v) { return State::from_values(std::move(v)); }

PolicyParams theta(std::vector<double> v) { return PolicyParams::from(std::move(v)); }

}  // namespace

TEST_CASE("greedy q on the two-clause formula") {
  const MdpInstance m = two_clause();
  CHECK(eval_q_greedy(m, theta({1, 1, 1}), st({1, -1, -1}), Action::False) == Rational(1, 2));
  CHECK(eval_q_greedy(m, theta({1, 1, 1}), State::initial(3), Action::True) == Rational(1));
  CHECK(eval_v_greedy(m, theta({1, 1, 1}), State::initial(3)) == Rational(1));
  CHECK(eval_v_greedy(m, theta({-1, 1, -1}), State::initial(3)) == Rational(1, 2));
  CHECK(eval_v_greedy(m, theta({1, 1, 1}), st({1, 0, 1})) == Rational(1, 2));
  CHECK_THROWS_AS((void)eval_q_greedy(m, theta({1, 1, 1}), st({1, 0, 1}), Action::True), Error);
  CHECK_THROWS_AS((void)eval_q_greedy(m, theta({1, 1}), State::initial(3), Action::True), Error);
}

TEST_CASE("greedy q equals the reward at the look-ahead leaf") {
  CounterRng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(6));
    const MdpInstance m = build_mdp(random_bounded_formula(n, 2 * n, 3, rng));
    std::vector<double> t(static_cast<std::size_t>(n));
    for (auto& x : t) x = rng.next_uniform(-1, 1);
    const auto p = theta(t);
    const int h = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    const auto states = states_at_stage(n, h);
    const State& s = states[rng.next_below(states.size())];
    for (Action a : {Action::False, Action::True}) {
      CHECK(eval_q_greedy(m, p, s, a) == reward(m, lookahead_state(s, a, p)));
    }
  }
}

TEST_CASE("softmax q on the two-clause formula") {
  const MdpInstance m = two_clause();
  // Uniform policy over the True subtree: three leaves pay 1, (1,0,1) pays 1/2.
  CHECK(eval_q_softmax(m, theta({0, 0, 0}), State::initial(3), Action::True) ==
        doctest::Approx(0.875).epsilon(1e-15));
  // 30-digit references from an independent mpmath trajectory sum.
  const auto p = theta({0.5, -1.0, 2.0});
  CHECK(eval_q_softmax(m, p, State::initial(3), Action::True) ==
        doctest::Approx(0.56752256160031224).epsilon(1e-14));
  CHECK(eval_q_softmax(m, p, State::initial(3), Action::False) ==
        doctest::Approx(0.99892799560820768).epsilon(1e-14));
  CHECK(eval_q_softmax(m, p, st({1, 0, -1}), Action::True) == 0.5);
  CHECK(eval_q_softmax_exhaustive(m, p, State::initial(3), Action::True) ==
        doctest::Approx(0.56752256160031224).epsilon(1e-14));
}

TEST_CASE("softmax q saturates to greedy q") {
  const MdpInstance m = two_clause();
  for (const State& s : {State::initial(3), st({1, -1, -1}), st({0, 1, -1})}) {
    for (Action a : {Action::False, Action::True}) {
      const double soft = eval_q_softmax(m, theta({20, 20, 20}), s, a);
      const double hard = to_double(eval_q_greedy(m, theta({1, 1, 1}), s, a));
      CHECK(std::abs(soft - hard) < 1e-6);
    }
  }
}

TEST_CASE("trajectory enumeration") {
  const MdpInstance m = two_clause();
  const auto uniform = theta({0, 0, 0});
  const auto from_s1 = enumerate_trajectories(m, uniform, State::initial(3), Action::True);
  CHECK(from_s1.size() == 4);
  for (const auto& tau : from_s1) {
    CHECK(tau.probability == 0.25);
    CHECK(tau.terminal.is_terminal());
    CHECK(tau.steps.size() == 3);
    CHECK(tau.steps.front().second == Action::True);
  }
  CHECK(enumerate_trajectories(m, uniform, st({1, 0, -1}), Action::False).size() == 1);
  CHECK(enumerate_trajectories(m, theta({1, 1, 1}), State::initial(3), Action::False,
                               PolicyClass::Greedy)
            .size() == 1);
  CHECK_THROWS_AS((void)enumerate_trajectories(m, uniform, State::initial(3), Action::True,
                                               PolicyClass::Softmax, 1),
                  Error);

  CounterRng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = theta({rng.next_uniform(-3, 3), rng.next_uniform(-3, 3), rng.next_uniform(-3, 3)});
    double total = 0.0;
    for (const auto& tau : enumerate_trajectories(m, p, State::initial(3), Action::False)) {
      total += tau.probability;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("trajectory-sum weight has unit head") {
  const MdpInstance m = two_clause();
  const auto w = softmax_weight_from_trajectories(m, theta({0.3, -0.7, 1.1}), 1);
  CHECK(w.head == doctest::Approx(1.0).epsilon(1e-15));
  const auto closed = softmax_weight(m, theta({0.3, -0.7, 1.1}), 1);
  for (std::size_t i = 0; i < w.lookahead.size(); ++i) {
    CHECK(std::abs(w.lookahead[i] - closed.lookahead[i]) <= 1e-12);
  }
}

TEST_CASE("best greedy policy") {
  const auto best = best_greedy(two_clause());
  CHECK(best.value == Rational(1));
  CHECK(best.assignment == Assignment{1, 1, 1});
  CHECK(best.params.theta_prime == std::vector<double>{1, 1, 1});
  CHECK(best_greedy(build_mdp(parse_dimacs("p cnf 1 2\n1 0\n-1 0\n"))).value == Rational(1, 2));
  CHECK_THROWS_AS((void)best_greedy(two_clause(), 2), Error);

  CounterRng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(8));
    const Formula f = random_bounded_formula(n, 1 + static_cast<int>(rng.next_below(12)), 3, rng);
    const auto b = best_greedy(build_mdp(f));
    CHECK(b.value == is_zeta_satisfiable(f, Rational(0)).value);
    CHECK(satisfied_fraction(f, b.assignment) == b.value);
  }
}

TEST_CASE("sampled trajectories") {
  const MdpInstance m = two_clause();
  const auto saturated = theta({20, 20, 20});
  const auto tau = sample_trajectory(m, saturated, 99);
  CHECK(tau.terminal == st({1, 1, 1}));
  CHECK(tau.probability > 1.0 - 1e-4);

  const auto p = theta({0.4, -0.2, 0.9});
  const auto a = sample_trajectory(m, p, 5);
  const auto b = sample_trajectory(m, p, 5);
  CHECK(a.terminal == b.terminal);
  CHECK(a.probability == b.probability);
  CHECK(a.steps.size() == 3);
}

TEST_CASE("sampled rewards average to the softmax value") {
  CounterRng rng(77);
  const MdpInstance m = build_mdp(random_bounded_formula(8, 12, 3, rng));
  std::vector<double> t(8);
  for (auto& x : t) x = rng.next_uniform(-1.5, 1.5);
  const auto p = theta(t);
  const double exact = eval_v_softmax(m, p, State::initial(8));
  const int trials = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < trials; ++i) {
    const double r = to_double(reward(m, sample_trajectory(m, p, CounterRng(1).split(i).seed()).terminal));
    sum += r;
    sum_sq += r * r;
  }
  const double mean = sum / trials;
  const double se = std::sqrt((sum_sq / trials - mean * mean) / trials);
  CHECK(std::abs(mean - exact) <= 3.0 * se);
}
