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

#include "pqr/mdp.hpp"

#include <cmath>

#include "pqr/error.hpp"

namespace pqr {

Action action_from_int(int value) {
  if (value != 0 && value != 1) {
    throw Error(ErrorCode::InvalidArgument,
                "action must be 0 or 1, got " + std::to_string(value));
  }
  return static_cast<Action>(value);
}

State State::initial(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "state needs n >= 1");
  return State(std::vector<std::int8_t>(static_cast<std::size_t>(n), -1), 0);
}

State State::from_values(std::vector<std::int8_t> values) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "state must be non-empty");
  int assigned = 0;
  bool seen_unassigned = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto v = values[i];
    if (v < -1 || v > 1) {
      throw Error(ErrorCode::InvalidArgument, "state entries must be -1, 0 or 1");
    }
    if (v == -1) {
      seen_unassigned = true;
    } else {
      if (seen_unassigned) {
        throw Error(ErrorCode::InvalidArgument,
                    "state is not a prefix assignment: entry " + std::to_string(i + 1) +
                        " assigned after an unassigned entry");
      }
      ++assigned;
    }
  }
  return State(std::move(values), assigned);
}

State State::from_assignment(const Assignment& assignment) {
  std::vector<std::int8_t> values(assignment.begin(), assignment.end());
  return from_values(std::move(values));
}

Assignment State::as_assignment() const {
  if (!is_terminal()) {
    throw Error(ErrorCode::InvalidArgument, "state " + to_string() + " is not terminal");
  }
  return Assignment(values_.begin(), values_.end());
}

std::string State::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(values_[i]);
  }
  return out + ")";
}

MdpInstance::MdpInstance(Formula formula)
    : formula_(std::move(formula)), universe_(formula_.variable_count()) {}

double MdpInstance::implied_state_count() const noexcept {
  return std::exp2(static_cast<double>(n() + 1)) - 1.0;
}

MdpInstance build_mdp(Formula formula) { return MdpInstance(std::move(formula)); }

State transition(const State& state, Action action) {
  if (state.is_terminal()) {
    throw Error(ErrorCode::TerminalState,
                "no transition out of terminal state " + state.to_string());
  }
  std::vector<std::int8_t> values(state.values().begin(), state.values().end());
  values[static_cast<std::size_t>(state.assigned())] = static_cast<std::int8_t>(to_int(action));
  return State::from_values(std::move(values));
}

Rational reward(const MdpInstance& instance, const State& state) {
  if (state.size() != instance.n()) {
    throw Error(ErrorCode::InvalidArgument, "state length " + std::to_string(state.size()) +
                                                " != n = " + std::to_string(instance.n()));
  }
  if (!state.is_terminal()) return Rational(0);
  return satisfied_fraction(instance.formula(), state.as_assignment());
}

Transition generative_query(const MdpInstance& instance, const State& state, Action action) {
  State next = transition(state, action);
  Rational r = reward(instance, next);
  return {std::move(next), r};
}

std::vector<State> states_at_stage(int n, int h) {
  if (h < 1 || h > n + 1) {
    throw Error(ErrorCode::InvalidArgument, "stage " + std::to_string(h) +
                                                " outside 1.." + std::to_string(n + 1));
  }
  const int assigned = h - 1;
  if (assigned > 24) throw Error(ErrorCode::CapExceeded, "stage enumeration capped at h <= 25");
  std::vector<State> out;
  const std::uint64_t count = std::uint64_t{1} << assigned;
  out.reserve(count);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<std::int8_t> values(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < assigned; ++i) {
      values[static_cast<std::size_t>(i)] =
          static_cast<std::int8_t>((code >> (assigned - 1 - i)) & 1U);
    }
    out.push_back(State::from_values(std::move(values)));
  }
  return out;
}

}  // namespace pqr
