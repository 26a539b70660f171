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

#include "pqr/cnf.hpp"
#include "pqr/rational.hpp"
#include "pqr/rng.hpp"

namespace pqr {

/// Random formula with at most `clause_count` clauses of 1-3 literals in which
/// no variable occurs in more than `max_occurrence` clauses. Generation stops
/// early once the occurrence budget runs out; at least one clause is always
/// produced.
Formula random_bounded_formula(int n, int clause_count, int max_occurrence, CounterRng& rng);

struct PlantedInstance {
  Formula formula;
  Assignment planted;
  Rational planted_fraction;
};

/// Formula of `clause_count` 3-clauses (fewer literals when n < 3) whose
/// planted assignment satisfies at least `min_fraction` of the clauses:
/// floor((1 - min_fraction) * m) clauses are falsified by the plant, every
/// other clause is satisfied by it.
PlantedInstance planted_formula(int n, int clause_count, const Rational& min_fraction,
                                CounterRng& rng);

/// (x_1) and (~x_1), (x_2) and (~x_2), ... over `pairs` variables of an
/// n-variable formula: every assignment satisfies exactly half.
Formula contradictory_units(int n, int pairs);

}  // namespace pqr
