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

#include "pqr/cnf.hpp"
#include "pqr/error.hpp"
#include "pqr/json_io.hpp"
#include "pqr/reduction.hpp"

using namespace pqr;
using nlohmann::json;

namespace {
const char* kTwoClause = "p cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n";
}

TEST_CASE("formula round trip") {
  const Formula f = parse_dimacs(kTwoClause);
  const json j = to_json(f);
  CHECK(j == json::parse(R"({"n":3,"clauses":[[1,-2,3],[-1,2,-3]]})"));
  CHECK(formula_from_json(j).clauses() == f.clauses());
  CHECK_THROWS_AS((void)formula_from_json(json::parse(R"({"n":2,"clauses":[[1,0]]})")), Error);
  CHECK_THROWS_AS((void)formula_from_json(json::parse(R"({"n":2})")), Error);
  CHECK_THROWS_AS((void)formula_from_json(json::parse(R"({"n":1,"clauses":[[1,-1]]})")), Error);
}

TEST_CASE("instance descriptor") {
  const MdpInstance m = build_mdp(parse_dimacs(kTwoClause));
  const json bare = instance_descriptor(m, false);
  CHECK(bare["n"] == 3);
  CHECK(bare["H"] == 4);
  CHECK(bare["d"] == 27);
  CHECK(bare["d_prime"] == 3);
  CHECK_FALSE(bare.contains("universe"));
  const json full = instance_descriptor(m, true);
  CHECK(full["universe"].size() == 26);
  CHECK(full["universe"][0] == json::array({1}));
  CHECK(full["psp_features"].size() == 6);
  CHECK(full["psp_features"][1] == json::parse(R"({"stage":1,"action":1,"vector":[1,0,0]})"));
}

TEST_CASE("states and parameters") {
  const State s = State::from_values({1, -1, -1});
  CHECK(to_json(s) == json::array({1, -1, -1}));
  CHECK(state_from_json(json::array({1, -1, -1})) == s);
  CHECK_THROWS_AS((void)state_from_json(json::array({2, -1})), Error);
  CHECK(params_from_json(json::parse(R"({"theta_prime":[1,-1]})")).theta_prime ==
        std::vector<double>{1, -1});
  CHECK(params_from_json(json::parse("[0.5]")).theta_prime == std::vector<double>{0.5});
  CHECK_THROWS_AS((void)params_from_json(json::parse(R"({"theta":[1]})")), Error);
}

TEST_CASE("vector export scales") {
  const MdpInstance m = build_mdp(parse_dimacs(kTwoClause));
  const auto p = PolicyParams::from({1, 1, 1});
  const auto phi = realizability_feature(m, State::from_values({1, -1, -1}), Action::False);
  const json jphi = to_json(phi);
  CHECK(jphi["scale_num"] == 1);
  CHECK(jphi["scale_den"] == 2);
  CHECK(jphi["entries"].size() == 27);
  CHECK(jphi["entries"][0] == 1);
  const json jw = to_json(greedy_weight(m, p, 2));
  CHECK(jw["entries"][0] == 1);
  const json js = to_json(softmax_weight(m, PolicyParams::from({0, 0, 0}), 1));
  CHECK(js["entries"][0] == "1");
  CHECK(js["entries"].size() == 27);
  CHECK(decimal_string(0.875) == "0.875");
  CHECK(decimal_string(0.1) == "0.10000000000000001");
}

TEST_CASE("reduction report uses exact fraction strings") {
  const auto r = decide_max3sat(parse_dimacs(kTwoClause), Rational(1, 10), exact_solver(),
                                Rational(1, 20));
  const json j = to_json(r);
  CHECK(j["decision"] == "Yes");
  CHECK(j["achieved_fraction"] == "1/1");
  CHECK(j["delta"] == "1/10");
  CHECK(j["epsilon"] == "1/20");
  CHECK(j["v_star"] == "1/1");
  CHECK(j["policy_value_exact"] == "1/1");
  CHECK(j["extracted"] == json::array({1, 1, 1}));
  CHECK(j["bounds"]["epsilon_bound"].is_null());
}
