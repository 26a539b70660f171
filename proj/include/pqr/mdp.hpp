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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pqr/cnf.hpp"
#include "pqr/rational.hpp"

namespace pqr {

enum class Action : std::uint8_t { False = 0, True = 1 };

inline int to_int(Action a) noexcept { return static_cast<int>(a); }
Action action_from_int(int value);

/// Prefix assignment: values[i] in {-1,0,1}, with every -1 after every
/// assigned entry. Stage is 1 + number of assigned entries.
class State {
 public:
  /// The initial state (-1,...,-1).
  static State initial(int n);

  /// Validates prefix form and the {-1,0,1} domain.
  static State from_values(std::vector<std::int8_t> values);

  static State from_assignment(const Assignment& assignment);

  int size() const noexcept { return static_cast<int>(values_.size()); }
  int stage() const noexcept { return assigned_ + 1; }
  int assigned() const noexcept { return assigned_; }
  bool is_terminal() const noexcept { return assigned_ == size(); }
  std::span<const std::int8_t> values() const noexcept { return values_; }
  std::int8_t operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }

  /// Leaf read as an assignment; throws unless terminal.
  Assignment as_assignment() const;

  std::string to_string() const;

  friend bool operator==(const State&, const State&) = default;

 private:
  State(std::vector<std::int8_t> values, int assigned)
      : values_(std::move(values)), assigned_(assigned) {}

  std::vector<std::int8_t> values_;
  int assigned_ = 0;
};

/// The tree MDP built from a formula. Only the formula and the clause
/// universe are stored; states are produced on demand.
class MdpInstance {
 public:
  explicit MdpInstance(Formula formula);

  const Formula& formula() const noexcept { return formula_; }
  const ClauseUniverse& universe() const noexcept { return universe_; }
  int n() const noexcept { return formula_.variable_count(); }
  int horizon() const noexcept { return n() + 1; }
  int action_count() const noexcept { return 2; }
  std::size_t d() const noexcept { return 1 + universe_.size(); }
  std::size_t d_prime() const noexcept { return static_cast<std::size_t>(n()); }
  std::int64_t clause_count() const noexcept {
    return static_cast<std::int64_t>(formula_.clause_count());
  }
  /// 2^{n+1} - 1 as a double, since n may exceed 62.
  double implied_state_count() const noexcept;

 private:
  Formula formula_;
  ClauseUniverse universe_;
};

MdpInstance build_mdp(Formula formula);

State transition(const State& state, Action action);

Rational reward(const MdpInstance& instance, const State& state);

struct Transition {
  State next;
  Rational reward;
};

Transition generative_query(const MdpInstance& instance, const State& state, Action action);

/// Generative-model access handed to solvers; counts queries.
class GenerativeModel {
 public:
  explicit GenerativeModel(const MdpInstance& instance) : instance_(&instance) {}

  Transition query(const State& state, Action action) {
    ++queries_;
    return generative_query(*instance_, state, action);
  }

  const MdpInstance& instance() const noexcept { return *instance_; }
  std::uint64_t queries() const noexcept { return queries_; }

 private:
  const MdpInstance* instance_;
  std::uint64_t queries_ = 0;
};

/// Every state of the given stage (2^{h-1} of them), in lexicographic order.
std::vector<State> states_at_stage(int n, int h);

}  // namespace pqr
