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
#include "pqr/mdp.hpp"
#include "pqr/rng.hpp"

using namespace pqr;

namespace {

const char* kTwoClause = "p cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n";
const char* kFourClause = "p cnf 7 4\n-1 -2 0\n1 -4 5 0\n2 -4 5 0\n3 -6 7 0\n";

State st(std::vector<std::int8_t> v) { return State::from_values(std::move(v)); }

Clause clause(std::initializer_list<int> lits) {
  std::vector<Literal> out;
  for (int l : lits) out.push_back(Literal{std::abs(l), l < 0});
  return Clause::make(std::move(out));
}

PolicyParams theta(std::vector<double> v) { return PolicyParams::from(std::move(v)); }

}  // namespace

TEST_CASE("psp features are signed one-hot vectors") {
  CHECK(psp_feature(1, Action::True, 3).vector == std::vector<int>{1, 0, 0});
  CHECK(psp_feature(1, Action::False, 3).vector == std::vector<int>{-1, 0, 0});
  CHECK(psp_feature(3, Action::True, 3).vector == std::vector<int>{0, 0, 1});
  CHECK_THROWS_AS((void)psp_feature(4, Action::True, 3), Error);
}

TEST_CASE("greedy action and threshold") {
  CHECK(greedy_action(2, theta({1, 1, 1})) == Action::True);
  CHECK(greedy_action(1, theta({0, 0, 0})) == Action::False);
  CHECK(greedy_action(1, theta({-0.5, 1, 1})) == Action::False);
  CHECK(f_threshold(theta({0.0}), 1) == 0);
  CHECK(f_threshold(theta({3.2}), 1) == 1);
  CHECK(f_threshold(theta({-1e-300}), 1) == 0);
  CHECK_THROWS_AS((void)greedy_action(4, theta({1, 1, 1})), Error);
  CHECK_THROWS_AS(PolicyParams::from({1.0, NAN}), Error);
  CHECK_THROWS_AS(PolicyParams::from({INFINITY}), Error);

  CounterRng rng(17);
  for (int i = 0; i < 1000; ++i) {
    const auto p = theta({rng.next_uniform(-2, 2), (i % 7 == 0) ? 0.0 : rng.next_uniform(-2, 2)});
    for (int h = 1; h <= 2; ++h) CHECK(to_int(greedy_action(h, p)) == f_threshold(p, h));
  }
}

TEST_CASE("softmax probabilities") {
  CHECK(softmax_prob(1, theta({0.0})) == 0.5);
  // e / (e + 1/e), 50-digit reference 0.880797077977882444059729...
  CHECK(softmax_prob(1, theta({1.0})) == doctest::Approx(0.88079707797788244).epsilon(1e-15));
  CHECK(softmax_prob(1, theta({15.0})) > 1.0 - 1e-9);
  CHECK(softmax_prob(1, theta({-15.0})) < 1e-9);
  CHECK(softmax_prob(1, theta({-800.0})) == 0.0);
  CHECK(softmax_prob(1, theta({800.0})) == 1.0);
  double prev = 0.0;
  for (double t = -10; t <= 10; t += 0.25) {
    const double p = softmax_prob(1, theta({t}));
    CHECK(p >= prev);
    CHECK(p + softmax_prob(1, theta({-t})) == doctest::Approx(1.0).epsilon(1e-15));
    prev = p;
  }
}

TEST_CASE("undecided multiset on the multi-clause example") {
  const Formula f = parse_dimacs(kFourClause);
  const std::vector<std::int8_t> x00{0, 0};
  const auto u = undecided_multiset(f, x00);
  REQUIRE(u.size() == 3);
  CHECK(u[0] == clause({-4, 5}));
  CHECK(u[1] == clause({-4, 5}));
  CHECK(u[2] == clause({3, -6, 7}));
  CHECK(undecided_multiset(f, {}).size() == 4);
  CHECK(undecided_multiset(f, {}) == f.clauses());
}

TEST_CASE("undecided multiset on the two-clause formula") {
  const Formula f = parse_dimacs(kTwoClause);
  // x1 = 1 satisfies the first clause; the second shrinks to (~x3).
  const std::vector<std::int8_t> x10{1, 0};
  const auto u = undecided_multiset(f, x10);
  REQUIRE(u.size() == 1);
  CHECK(u[0] == clause({-3}));
}

TEST_CASE("realizability feature on the two-clause formula") {
  const MdpInstance m = build_mdp(parse_dimacs(kTwoClause));
  const auto phi = realizability_feature(m, st({1, -1, -1}), Action::False);
  CHECK(phi.stage == 2);
  CHECK(phi.satisfied == 1);
  CHECK(phi.clause_count == 2);
  CHECK(phi.undecided.size() == 26);
  CHECK(phi.undecided_total() == 1);
  CHECK(phi.undecided[m.universe().index_of(clause({-3}))] == 1);

  const MdpInstance only_x2 = build_mdp(parse_dimacs("p cnf 2 1\n2 0\n"));
  CHECK(realizability_feature(only_x2, State::initial(2), Action::True).satisfied == 0);
  CHECK_THROWS_AS((void)realizability_feature(m, st({1, 0, 1}), Action::True), Error);
}

TEST_CASE("realizability counts partition the clauses") {
  CounterRng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(6));
    const MdpInstance m = build_mdp(random_bounded_formula(n, 2 * n, 3, rng));
    const int h = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    const auto states = states_at_stage(n, h);
    const State& s = states[rng.next_below(states.size())];
    const Action a = rng.next_below(2) ? Action::True : Action::False;
    const auto phi = realizability_feature(m, s, a);
    std::vector<std::int8_t> prefix(s.values().begin(), s.values().begin() + h);
    prefix.back() = static_cast<std::int8_t>(to_int(a));
    std::int64_t falsified = 0;
    for (const auto& c : m.formula().clauses()) {
      falsified += eval_clause(c, prefix).state == ClauseState::Falsified;
    }
    CHECK(phi.satisfied + falsified + phi.undecided_total() == m.clause_count());
  }
}

TEST_CASE("greedy weight on the two-clause formula") {
  const MdpInstance m = build_mdp(parse_dimacs(kTwoClause));
  const auto p = theta({1, 1, 1});
  const auto w2 = greedy_weight(m, p, 2);
  CHECK(w2.head == 1);
  CHECK(w2.lookahead[m.universe().index_of(clause({-3}))] == 0);
  CHECK(w2.lookahead[m.universe().index_of(clause({3}))] == 1);
  CHECK(w2.lookahead[m.universe().index_of(clause({-2}))] == 0);  // touches x2
  const auto phi = realizability_feature(m, st({1, -1, -1}), Action::False);
  CHECK(dot(phi, w2) == Rational(1, 2));

  const auto w3 = greedy_weight(m, p, 3);
  for (auto v : w3.lookahead) CHECK(v == 0);
  CHECK_THROWS_AS((void)greedy_weight(m, p, 4), Error);
  CHECK_THROWS_AS((void)greedy_weight(m, theta({1, 1}), 1), Error);
}

TEST_CASE("look-ahead state") {
  CHECK(lookahead_state(st({1, -1, -1}), Action::False, theta({1, 1, 1})) == st({1, 0, 1}));
  CHECK(lookahead_state(State::initial(3), Action::False, theta({1, -2, 0})) == st({0, 0, 0}));
  CHECK(lookahead_state(st({1, 0, 1}), Action::False, theta({-1, -1, -1})) == st({1, 0, 1}));
  CounterRng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4;
    const auto p = theta({rng.next_uniform(-1, 1), rng.next_uniform(-1, 1), rng.next_uniform(-1, 1),
                          rng.next_uniform(-1, 1)});
    const int h = 1 + static_cast<int>(rng.next_below(4));
    const State s = states_at_stage(n, h)[0];
    State rolled = transition(s, Action::True);
    while (!rolled.is_terminal()) rolled = transition(rolled, greedy_action(rolled.stage(), p));
    CHECK(lookahead_state(s, Action::True, p) == rolled);
  }
}

TEST_CASE("softmax weight entries at theta' = 0") {
  const MdpInstance m = build_mdp(parse_dimacs("p cnf 4 1\n1 2 3 0\n"));
  const auto w = softmax_weight(m, theta({0, 0, 0, 0}), 1);
  CHECK(w.head == 1.0);
  const auto& u = m.universe();
  CHECK(w.lookahead[u.index_of(clause({2}))] == 0.5);
  CHECK(w.lookahead[u.index_of(clause({-2, 4}))] == 0.75);
  CHECK(w.lookahead[u.index_of(clause({2, -3, 4}))] == 0.875);
  CHECK(w.lookahead[u.index_of(clause({1, 2}))] == 0.0);
}

TEST_CASE("softmax weight saturates to the all-true greedy weight") {
  const MdpInstance m = build_mdp(parse_dimacs(kFourClause));
  const auto soft = softmax_weight(m, theta({20, 20, 20, 20, 20, 20, 20}), 2);
  const auto hard = greedy_weight(m, theta({1, 1, 1, 1, 1, 1, 1}), 2);
  double worst = 0.0;
  for (std::size_t i = 0; i < soft.lookahead.size(); ++i) {
    worst = std::max(worst, std::abs(soft.lookahead[i] - hard.lookahead[i]));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("policy class names") {
  CHECK(policy_class_from_string("softmax") == PolicyClass::Softmax);
  CHECK(std::string(to_string(PolicyClass::Greedy)) == "greedy");
  CHECK_THROWS_AS((void)policy_class_from_string("boltzmann"), Error);
}
