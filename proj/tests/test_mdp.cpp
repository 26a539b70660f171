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

#include <set>

#include "pqr/cnf.hpp"
#include "pqr/error.hpp"
#include "pqr/mdp.hpp"

using namespace pqr;

namespace {

MdpInstance two_clause() { return build_mdp(parse_dimacs("p cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n")); }

State st(std::vector<std::int8_t> v) { return State::from_values(std::move(v)); }

}  // namespace

TEST_CASE("instance dimensions") {
  const MdpInstance m = two_clause();
  CHECK(m.n() == 3);
  CHECK(m.horizon() == 4);
  CHECK(m.d() == 27);
  CHECK(m.d_prime() == 3);
  CHECK(m.action_count() == 2);
  CHECK(m.clause_count() == 2);
  CHECK(m.implied_state_count() == 15.0);

  const MdpInstance one = build_mdp(parse_dimacs("p cnf 1 1\n1 0\n"));
  CHECK(one.horizon() == 2);
  CHECK(one.d() == 3);
}

TEST_CASE("implied states are exactly the reachable states") {
  const MdpInstance m = two_clause();
  std::set<std::vector<std::int8_t>> seen;
  std::vector<State> frontier{State::initial(3)};
  while (!frontier.empty()) {
    State s = frontier.back();
    frontier.pop_back();
    seen.insert({s.values().begin(), s.values().end()});
    if (s.is_terminal()) continue;
    for (Action a : {Action::False, Action::True}) frontier.push_back(transition(s, a));
  }
  CHECK(seen.size() == 15);
  std::size_t by_stage = 0;
  for (int h = 1; h <= m.horizon(); ++h) by_stage += states_at_stage(3, h).size();
  CHECK(by_stage == 15);
}

TEST_CASE("state validation") {
  CHECK(State::initial(3).stage() == 1);
  CHECK(st({1, 0, -1}).stage() == 3);
  CHECK(st({1, 0, 1}).is_terminal());
  CHECK(st({1, 0, 1}).as_assignment() == Assignment{1, 0, 1});
  CHECK(st({1, -1, -1}).to_string() == "(1,-1,-1)");
  CHECK_THROWS_AS(st({-1, 0, -1}), Error);
  CHECK_THROWS_AS(st({2, -1, -1}), Error);
  CHECK_THROWS_AS(st({}), Error);
  CHECK_THROWS_AS((void)st({1, -1, -1}).as_assignment(), Error);
}

TEST_CASE("transitions") {
  CHECK(transition(st({-1, -1, -1}), Action::True) == st({1, -1, -1}));
  CHECK(transition(st({0, -1, -1}), Action::False) == st({0, 0, -1}));
  try {
    (void)transition(st({1, 0, 1}), Action::False);
    FAIL("expected a terminal-state error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TerminalState);
  }
}

TEST_CASE("rewards") {
  const MdpInstance m = two_clause();
  CHECK(reward(m, st({0, 1, 0})) == Rational(1, 2));
  CHECK(reward(m, st({1, 0, 1})) == Rational(1, 2));
  CHECK(reward(m, st({0, 0, 0})) == Rational(1));
  CHECK(reward(m, st({0, -1, -1})) == Rational(0));
  int ones = 0;
  for (const State& leaf : states_at_stage(3, 4)) ones += reward(m, leaf) == Rational(1);
  CHECK(ones == 6);
  CHECK_THROWS_AS((void)reward(m, st({0, 1})), Error);
}

TEST_CASE("generative model queries") {
  const MdpInstance m = two_clause();
  auto t1 = generative_query(m, st({1, -1, -1}), Action::False);
  CHECK(t1.next == st({1, 0, -1}));
  CHECK(t1.reward == Rational(0));
  auto t2 = generative_query(m, st({1, 0, -1}), Action::True);
  CHECK(t2.next == st({1, 0, 1}));
  CHECK(t2.reward == Rational(1, 2));
  auto t3 = generative_query(m, st({0, 0, -1}), Action::True);
  CHECK(t3.reward == Rational(1));

  GenerativeModel model(m);
  (void)model.query(State::initial(3), Action::True);
  (void)model.query(State::initial(3), Action::False);
  CHECK(model.queries() == 2);
}

TEST_CASE("stage enumeration") {
  const auto s2 = states_at_stage(3, 2);
  REQUIRE(s2.size() == 2);
  CHECK(s2[0] == st({0, -1, -1}));
  CHECK(s2[1] == st({1, -1, -1}));
  CHECK(states_at_stage(3, 3)[2] == st({1, 0, -1}));
  CHECK_THROWS_AS((void)states_at_stage(3, 5), Error);
  CHECK_THROWS_AS((void)states_at_stage(30, 27), Error);
}

TEST_CASE("actions") {
  CHECK(to_int(Action::True) == 1);
  CHECK(action_from_int(0) == Action::False);
  CHECK_THROWS_AS((void)action_from_int(2), Error);
}
