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

#include "pqr/generators.hpp"

#include <algorithm>

#include "pqr/error.hpp"

namespace pqr {

namespace {

int draw_size(CounterRng& rng) {
  const auto r = rng.next_below(10);
  if (r < 2) return 1;
  if (r < 5) return 2;
  return 3;
}

std::vector<int> distinct_variables(int count, CounterRng& rng,
                                    const std::vector<int>& allowed) {
  std::vector<int> pool = allowed;
  std::vector<int> out;
  for (int i = 0; i < count && !pool.empty(); ++i) {
    const auto pick = static_cast<std::size_t>(rng.next_below(pool.size()));
    out.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

}  // namespace

Formula random_bounded_formula(int n, int clause_count, int max_occurrence, CounterRng& rng) {
  if (n < 1 || clause_count < 1 || max_occurrence < 1) {
    throw Error(ErrorCode::InvalidArgument, "n, clause count and occurrence bound must be positive");
  }
  std::vector<int> used(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Clause> clauses;
  for (int c = 0; c < clause_count; ++c) {
    std::vector<int> open;
    for (int v = 1; v <= n; ++v) {
      if (used[v] < max_occurrence) open.push_back(v);
    }
    if (open.empty()) break;
    const int size = std::min<int>(draw_size(rng), static_cast<int>(open.size()));
    std::vector<Literal> lits;
    for (int v : distinct_variables(size, rng, open)) {
      lits.push_back(Literal{v, rng.next_below(2) == 1});
      ++used[v];
    }
    clauses.push_back(Clause::make(std::move(lits)));
  }
  return Formula(n, std::move(clauses));
}

PlantedInstance planted_formula(int n, int clause_count, const Rational& min_fraction,
                                CounterRng& rng) {
  if (n < 1 || clause_count < 1) {
    throw Error(ErrorCode::InvalidArgument, "n and clause count must be positive");
  }
  if (min_fraction < Rational(0) || min_fraction > Rational(1)) {
    throw Error(ErrorCode::InvalidArgument, "planted fraction must lie in [0, 1]");
  }
  Assignment plant(static_cast<std::size_t>(n));
  for (auto& x : plant) x = static_cast<std::uint8_t>(rng.next_below(2));

  const Rational allowed = (Rational(1) - min_fraction) * Rational(clause_count);
  const auto violated = static_cast<int>(allowed.numerator() / allowed.denominator());
  const int width = std::min(3, n);
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) all[static_cast<std::size_t>(v - 1)] = v;

  std::vector<Clause> clauses;
  for (int c = 0; c < clause_count; ++c) {
    const bool falsify = c < violated;
    for (;;) {
      std::vector<Literal> lits;
      bool satisfied = false;
      for (int v : distinct_variables(width, rng, all)) {
        const int value = plant[static_cast<std::size_t>(v - 1)];
        // A falsified clause negates the plant on every literal.
        const bool negated = falsify ? value == 1 : rng.next_below(2) == 1;
        Literal lit{v, negated};
        satisfied = satisfied || lit.holds(value);
        lits.push_back(lit);
      }
      if (falsify || satisfied) {
        clauses.push_back(Clause::make(std::move(lits)));
        break;
      }
    }
  }
  // Shuffle so the falsified clauses are not all first.
  for (std::size_t i = clauses.size(); i > 1; --i) {
    std::swap(clauses[i - 1], clauses[static_cast<std::size_t>(rng.next_below(i))]);
  }
  Formula formula(n, std::move(clauses));
  Rational fraction = satisfied_fraction(formula, plant);
  return PlantedInstance{std::move(formula), std::move(plant), fraction};
}

Formula contradictory_units(int n, int pairs) {
  if (pairs < 1 || pairs > n) {
    throw Error(ErrorCode::InvalidArgument, "pairs must lie in 1..n");
  }
  std::vector<Clause> clauses;
  for (int v = 1; v <= pairs; ++v) {
    clauses.push_back(Clause::make({Literal{v, false}}));
    clauses.push_back(Clause::make({Literal{v, true}}));
  }
  return Formula(n, std::move(clauses));
}

}  // namespace pqr
