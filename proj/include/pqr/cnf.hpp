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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pqr/rational.hpp"

namespace pqr {

struct Literal {
  int variable = 1;  // 1-based
  bool negated = false;

  /// Canonical key 2*(variable-1) + negated; orders x1 < !x1 < x2 < ...
  int key() const noexcept { return 2 * (variable - 1) + (negated ? 1 : 0); }

  static Literal from_key(int key) noexcept {
    return Literal{key / 2 + 1, (key % 2) == 1};
  }

  /// DIMACS signed integer (x3 -> 3, !x3 -> -3).
  int dimacs() const noexcept { return negated ? -variable : variable; }

  /// Truth value under a variable value in {0,1}.
  bool holds(int value) const noexcept { return negated ? value == 0 : value == 1; }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal& a, const Literal& b) noexcept {
    return a.key() <=> b.key();
  }
};

/// A disjunction of 1-3 literals in canonical (sorted by key) order. Never a
/// tautology and never holding a repeated literal.
class Clause {
 public:
  Clause() = default;

  /// Canonicalizes; throws Error(Parse) on empty, oversized, duplicate or
  /// complementary input.
  static Clause make(std::vector<Literal> literals);

  std::span<const Literal> literals() const noexcept { return literals_; }
  std::size_t size() const noexcept { return literals_.size(); }
  int max_variable() const noexcept;
  int min_variable() const noexcept;

  /// Packed canonical key sequence; equal clauses have equal codes.
  std::uint64_t code() const noexcept;

  std::vector<int> dimacs() const;
  std::string to_string() const;

  friend bool operator==(const Clause&, const Clause&) = default;
  friend auto operator<=>(const Clause& a, const Clause& b) = default;

 private:
  explicit Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {}
  std::vector<Literal> literals_;
  friend class ClauseUniverse;
};

/// A multiset of clauses over variables 1..n. Duplicate instances are kept.
class Formula {
 public:
  Formula(int n, std::vector<Clause> clauses);

  int variable_count() const noexcept { return n_; }
  std::size_t clause_count() const noexcept { return clauses_.size(); }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }

  std::string to_dimacs() const;

 private:
  int n_;
  std::vector<Clause> clauses_;
};

/// Variable values x_1..x_n, each 0 or 1.
using Assignment = std::vector<std::uint8_t>;

/// All non-tautological clauses of size 1..3 over n variables: the 1-clause
/// block, then 2-clauses, then 3-clauses, each block lexicographic in the
/// canonical key sequence. Position in this list is the coordinate used by
/// the undecided-clause and look-ahead vectors.
class ClauseUniverse {
 public:
  explicit ClauseUniverse(int n);

  int variable_count() const noexcept { return n_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<Clause>& entries() const noexcept { return entries_; }
  const Clause& operator[](std::size_t i) const { return entries_[i]; }

  std::size_t index_of(const Clause& clause) const;

  /// Sizes of the three blocks, from their closed forms.
  static std::int64_t block_size(int n, int clause_size);
  static std::int64_t total_size(int n);

 private:
  int n_;
  std::vector<Clause> entries_;
  std::vector<std::size_t> pair_start_;    // first 2-clause with leading key a
  std::vector<std::size_t> triple_start_;  // first 3-clause with leading keys (a, b)
};

ClauseUniverse enumerate_universe(int n);

Formula parse_dimacs(std::string_view text);

enum class ClauseState { Satisfied, Falsified, Undecided };

struct ClauseStatus {
  ClauseState state = ClauseState::Undecided;
  std::optional<Clause> simplified;  // set iff state == Undecided
};

/// Evaluates a clause under a partial assignment: values[i] is the value of
/// x_{i+1} in {0,1}, or -1 when unassigned. Variables beyond values.size()
/// are unassigned.
ClauseStatus eval_clause(const Clause& clause, std::span<const std::int8_t> values);

Rational satisfied_fraction(const Formula& formula, const Assignment& assignment);

std::size_t satisfied_count(const Formula& formula, const Assignment& assignment);

int occurrence_bound(const Formula& formula);

struct ZetaResult {
  bool satisfiable = false;
  Assignment best;
  Rational value;
};

inline constexpr int kDefaultBruteForceCap = 24;

/// Exhaustive maximization of the satisfied fraction. Ties resolve to the
/// lexicographically greatest assignment (x_1 most significant).
ZetaResult is_zeta_satisfiable(const Formula& formula, const Rational& zeta,
                               int cap = kDefaultBruteForceCap);

}  // namespace pqr
