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

#include <algorithm>
#include <cmath>
#include <set>

#include "pqr/cnf.hpp"
#include "pqr/error.hpp"
#include "pqr/generators.hpp"
#include "pqr/rng.hpp"

using namespace pqr;

namespace {

const char* kTwoClause = "p cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n";
const char* kFourClause = "p cnf 7 4\n-1 -2 0\n1 -4 5 0\n2 -4 5 0\n3 -6 7 0\n";

Clause clause(std::initializer_list<int> lits) {
  std::vector<Literal> out;
  for (int l : lits) out.push_back(Literal{std::abs(l), l < 0});
  return Clause::make(std::move(out));
}

// Truth-table evaluation straight from the DIMACS integers.
bool naive_holds(const std::vector<int>& lits, const Assignment& x) {
  return std::any_of(lits.begin(), lits.end(), [&](int l) {
    return x[static_cast<std::size_t>(std::abs(l) - 1)] == (l > 0 ? 1 : 0);
  });
}

}  // namespace

TEST_CASE("literal keys") {
  CHECK(Literal{1, false}.key() == 0);
  CHECK(Literal{1, true}.key() == 1);
  CHECK(Literal{3, true}.key() == 5);
  CHECK(Literal::from_key(5) == Literal{3, true});
  CHECK(Literal{2, true}.dimacs() == -2);
}

TEST_CASE("clause canonicalization") {
  const Clause c = clause({3, -1, 2});
  CHECK(c.dimacs() == std::vector<int>{-1, 2, 3});
  CHECK(c.min_variable() == 1);
  CHECK(c.max_variable() == 3);
  CHECK(clause({2, 1}) == clause({1, 2}));
  CHECK(c.to_string() == "(~x1 v x2 v x3)");
  CHECK_THROWS_AS(clause({1, -1}), Error);
  CHECK_THROWS_AS(clause({1, 1}), Error);
  CHECK_THROWS_AS(clause({1, 2, 3, 4}), Error);
  CHECK_THROWS_AS(Clause::make({}), Error);
}

TEST_CASE("DIMACS parsing") {
  const Formula f = parse_dimacs(kTwoClause);
  CHECK(f.variable_count() == 3);
  CHECK(f.clause_count() == 2);
  CHECK(f.clauses()[0] == clause({1, -2, 3}));
  CHECK(f.clauses()[1] == clause({-1, 2, -3}));

  const Formula unit = parse_dimacs("p cnf 1 1\n1 0\n");
  CHECK(unit.variable_count() == 1);
  CHECK(unit.clause_count() == 1);

  // clauses may span lines, comments anywhere, SATLIB trailer
  const Formula spread = parse_dimacs("c hi\np cnf 3 2\n1 -2\n 3 0 -1 0\nc end\n%\n0\n");
  CHECK(spread.clause_count() == 2);
  CHECK(parse_dimacs(spread.to_dimacs()).clauses() == spread.clauses());
}

TEST_CASE("DIMACS errors name the line") {
  auto message = [](const char* text) {
    try {
      (void)parse_dimacs(text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Parse);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("p cnf 2 1\n1 -1 0\n").find("tautological") != std::string::npos);
  CHECK(message("p cnf 2 1\n1 -1 0\n").find("line 2") != std::string::npos);
  CHECK(message("p cnf 4 2\n1 0\n1 2 3 4 0\n").find("clause 2") != std::string::npos);
  CHECK(message("p cnf 3 0\n").find("empty clause list") != std::string::npos);
  CHECK(message("p cnf 2 1\n1 3 0\n").find("out of range") != std::string::npos);
  CHECK(message("p cnf 2 2\n1 0\n").find("declares 2") != std::string::npos);
  CHECK(message("1 2 0\n").find("before problem line") != std::string::npos);
  CHECK(message("p cnf 2 1\n1 2\n").find("not terminated") != std::string::npos);
  CHECK(message("p cnf 2 1\n1 x 0\n").find("unexpected token") != std::string::npos);
  CHECK(message("p dnf 2 1\n1 0\n").find("malformed problem line") != std::string::npos);
  CHECK(message("p cnf 2 2\n1 0\n0\n").find("empty clause 2") != std::string::npos);
}

TEST_CASE("clause universe sizes") {
  CHECK(ClauseUniverse::block_size(3, 1) == 6);
  CHECK(ClauseUniverse::block_size(3, 2) == 12);
  CHECK(ClauseUniverse::block_size(3, 3) == 8);
  CHECK(ClauseUniverse(3).size() == 26);
  CHECK(1 + ClauseUniverse(3).size() == 27);
  CHECK(ClauseUniverse(1).size() == 2);
  CHECK(ClauseUniverse::block_size(1, 2) == 0);
  CHECK(ClauseUniverse::block_size(40, 3) == 79040);
  CHECK(ClauseUniverse::total_size(40) == 82240);
  CHECK_THROWS_AS(ClauseUniverse(0), Error);
}

TEST_CASE("clause universe order and lookup") {
  const ClauseUniverse u(3);
  CHECK(u[0] == clause({1}));
  CHECK(u[1] == clause({-1}));
  CHECK(u[5] == clause({-3}));
  CHECK(u[6] == clause({1, 2}));
  CHECK(u[u.size() - 1] == clause({-1, -2, -3}));
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(u.index_of(u[i]) == i);
  for (std::size_t i = 1; i < u.size(); ++i) {
    if (u[i - 1].size() == u[i].size()) CHECK(u[i - 1] < u[i]);
    else CHECK(u[i - 1].size() < u[i].size());
  }
  CHECK_THROWS_AS((void)u.index_of(clause({4})), Error);
  CHECK_THROWS_AS((void)u.index_of(clause({1, -2, 4})), Error);
}

TEST_CASE("universe lookup inverts enumeration") {
  for (int n : {1, 2, 4, 7, 12, 25}) {
    CAPTURE(n);
    const ClauseUniverse u(n);
    bool all = true;
    for (std::size_t i = 0; i < u.size(); ++i) all = all && u.index_of(u[i]) == i;
    CHECK(all);
  }
}

TEST_CASE("clause evaluation on prefixes") {
  const std::vector<std::int8_t> x00{0, 0};
  CHECK(eval_clause(clause({-1, -2}), x00).state == ClauseState::Satisfied);
  const auto shrunk = eval_clause(clause({1, -4, 5}), x00);
  CHECK(shrunk.state == ClauseState::Undecided);
  CHECK(*shrunk.simplified == clause({-4, 5}));
  const std::vector<std::int8_t> x0{0};
  CHECK(eval_clause(clause({1}), x0).state == ClauseState::Falsified);
  const std::vector<std::int8_t> unassigned{-1, -1};
  CHECK(*eval_clause(clause({1, 2}), unassigned).simplified == clause({1, 2}));
}

TEST_CASE("satisfied fraction on the two-clause formula") {
  const Formula f = parse_dimacs(kTwoClause);
  CHECK(satisfied_fraction(f, {0, 1, 0}) == Rational(1, 2));
  CHECK(satisfied_fraction(f, {1, 0, 1}) == Rational(1, 2));
  CHECK(satisfied_fraction(f, {1, 1, 1}) == Rational(1));
  CHECK(satisfied_count(f, {0, 0, 0}) == 2);
  CHECK_THROWS_AS((void)satisfied_fraction(f, {1, 1}), Error);
}

TEST_CASE("satisfied fraction agrees with a truth-table recount") {
  CounterRng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(7));
    const Formula f = random_bounded_formula(n, 1 + static_cast<int>(rng.next_below(10)), 3, rng);
    Assignment x(static_cast<std::size_t>(n));
    for (auto& v : x) v = static_cast<std::uint8_t>(rng.next_below(2));
    std::int64_t count = 0;
    for (const auto& c : f.clauses()) count += naive_holds(c.dimacs(), x) ? 1 : 0;
    CHECK(satisfied_fraction(f, x) ==
          Rational(count, static_cast<std::int64_t>(f.clause_count())));
  }
}

TEST_CASE("occurrence bound") {
  CHECK(occurrence_bound(parse_dimacs(kTwoClause)) == 2);
  CHECK(occurrence_bound(parse_dimacs("p cnf 3 1\n1 2 3 0\n")) == 1);
  CHECK(occurrence_bound(parse_dimacs(kFourClause)) == 2);
  CounterRng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Formula f = random_bounded_formula(6, 8, 3, rng);
    std::vector<int> naive(7, 0);
    for (const auto& c : f.clauses())
      for (int l : c.dimacs()) ++naive[static_cast<std::size_t>(std::abs(l))];
    CHECK(occurrence_bound(f) == *std::max_element(naive.begin(), naive.end()));
  }
}

TEST_CASE("zeta satisfiability") {
  const Formula f = parse_dimacs(kTwoClause);
  const auto full = is_zeta_satisfiable(f, Rational(1));
  CHECK(full.satisfiable);
  CHECK(full.best == Assignment{1, 1, 1});
  CHECK(full.value == Rational(1));

  const Formula contra = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n");
  const auto half = is_zeta_satisfiable(contra, Rational(1));
  CHECK_FALSE(half.satisfiable);
  CHECK(half.value == Rational(1, 2));
  CHECK(is_zeta_satisfiable(contra, Rational(1, 2)).satisfiable);

  CHECK_THROWS_AS((void)is_zeta_satisfiable(f, Rational(3, 2)), Error);
  CHECK_THROWS_AS((void)is_zeta_satisfiable(f, Rational(1), 2), Error);
}

TEST_CASE("zeta satisfiability agrees with plain enumeration") {
  CounterRng rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(8));
    const Formula f = random_bounded_formula(n, 1 + static_cast<int>(rng.next_below(12)), 3, rng);
    Rational best(0);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
      Assignment x(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = (code >> j) & 1U;
      best = std::max(best, satisfied_fraction(f, x));
    }
    const auto r = is_zeta_satisfiable(f, Rational(0));
    CHECK(r.value == best);
    CHECK(satisfied_fraction(f, r.best) == best);
  }
}
