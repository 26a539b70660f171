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

#include "pqr/features.hpp"

#include <cmath>
#include <numeric>

#include "pqr/error.hpp"

namespace pqr {

PolicyParams PolicyParams::from(std::vector<double> theta) {
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!std::isfinite(theta[i])) {
      throw Error(ErrorCode::InvalidArgument,
                  "theta' entry " + std::to_string(i + 1) + " is not finite");
    }
  }
  return PolicyParams{std::move(theta)};
}

PolicyParams PolicyParams::sign_pattern(const Assignment& assignment, double magnitude) {
  std::vector<double> theta;
  theta.reserve(assignment.size());
  for (auto x : assignment) theta.push_back(x ? magnitude : -magnitude);
  return from(std::move(theta));
}

double PolicyParams::at_stage(int h) const {
  if (h < 1 || h > static_cast<int>(theta_prime.size())) {
    throw Error(ErrorCode::InvalidArgument, "stage " + std::to_string(h) + " outside 1.." +
                                                std::to_string(theta_prime.size()));
  }
  return theta_prime[static_cast<std::size_t>(h - 1)];
}

const char* to_string(PolicyClass cls) noexcept {
  return cls == PolicyClass::Greedy ? "greedy" : "softmax";
}

PolicyClass policy_class_from_string(std::string_view text) {
  if (text == "greedy") return PolicyClass::Greedy;
  if (text == "softmax") return PolicyClass::Softmax;
  throw Error(ErrorCode::InvalidArgument,
              "policy class must be 'greedy' or 'softmax', got '" + std::string(text) + "'");
}

PspFeature psp_feature(int h, Action action, int d_prime) {
  if (h < 1 || h > d_prime) {
    throw Error(ErrorCode::InvalidArgument,
                "stage " + std::to_string(h) + " outside 1.." + std::to_string(d_prime));
  }
  PspFeature out{h, action, std::vector<int>(static_cast<std::size_t>(d_prime), 0)};
  out.vector[static_cast<std::size_t>(h - 1)] = action == Action::True ? 1 : -1;
  return out;
}

Action greedy_action(int h, const PolicyParams& params) {
  // <phi'(.,True), theta'> = theta'_h and <phi'(.,False), theta'> = -theta'_h.
  const double score_true = params.at_stage(h);
  const double score_false = -score_true;
  return score_true > score_false ? Action::True : Action::False;
}

int f_threshold(const PolicyParams& params, int h) {
  return params.at_stage(h) <= 0.0 ? 0 : 1;
}

double softmax_prob(int h, const PolicyParams& params) {
  const double t = 2.0 * params.at_stage(h);
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

std::vector<Clause> undecided_multiset(const Formula& formula,
                                       std::span<const std::int8_t> prefix) {
  if (prefix.size() > static_cast<std::size_t>(formula.variable_count())) {
    throw Error(ErrorCode::InvalidArgument, "prefix longer than n");
  }
  std::vector<Clause> out;
  for (const auto& clause : formula.clauses()) {
    auto status = eval_clause(clause, prefix);
    if (status.state == ClauseState::Undecided) out.push_back(std::move(*status.simplified));
  }
  return out;
}

std::int64_t RealizabilityFeature::undecided_total() const {
  return std::accumulate(undecided.begin(), undecided.end(), std::int64_t{0});
}

namespace {

void check_params(const MdpInstance& instance, const PolicyParams& params) {
  if (params.size() != static_cast<std::size_t>(instance.n())) {
    throw Error(ErrorCode::InvalidArgument, "theta' has " + std::to_string(params.size()) +
                                                " entries, expected d' = " +
                                                std::to_string(instance.n()));
  }
}

void check_weight_stage(const MdpInstance& instance, int h) {
  if (h < 1 || h > instance.horizon() - 1) {
    throw Error(ErrorCode::InvalidArgument, "weight stage " + std::to_string(h) +
                                                " outside 1.." +
                                                std::to_string(instance.horizon() - 1));
  }
}

}  // namespace

RealizabilityFeature realizability_feature(const MdpInstance& instance, const State& state,
                                           Action action) {
  if (state.size() != instance.n()) {
    throw Error(ErrorCode::InvalidArgument, "state length does not match n");
  }
  if (state.is_terminal()) {
    throw Error(ErrorCode::TerminalState,
                "no feature for terminal state " + state.to_string());
  }
  const int h = state.stage();
  std::vector<std::int8_t> prefix(state.values().begin(), state.values().begin() + h);
  prefix[static_cast<std::size_t>(h - 1)] = static_cast<std::int8_t>(to_int(action));

  RealizabilityFeature phi;
  phi.stage = h;
  phi.clause_count = instance.clause_count();
  phi.undecided.assign(instance.universe().size(), 0);
  for (const auto& clause : instance.formula().clauses()) {
    const auto status = eval_clause(clause, prefix);
    if (status.state == ClauseState::Satisfied) {
      ++phi.satisfied;
    } else if (status.state == ClauseState::Undecided) {
      ++phi.undecided[instance.universe().index_of(*status.simplified)];
    }
  }
  return phi;
}

GreedyWeight greedy_weight(const MdpInstance& instance, const PolicyParams& params, int h) {
  check_params(instance, params);
  check_weight_stage(instance, h);
  const int n = instance.n();
  std::vector<int> follow(static_cast<std::size_t>(n) + 1, 0);
  for (int j = h + 1; j <= n; ++j) follow[j] = f_threshold(params, j);

  GreedyWeight theta;
  theta.stage = h;
  const auto& entries = instance.universe().entries();
  theta.lookahead.assign(entries.size(), 0);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& clause = entries[i];
    if (clause.min_variable() <= h) continue;  // touches an assigned variable
    for (const auto& lit : clause.literals()) {
      if (lit.holds(follow[lit.variable])) {
        theta.lookahead[i] = 1;
        break;
      }
    }
  }
  return theta;
}

SoftmaxWeight softmax_weight(const MdpInstance& instance, const PolicyParams& params, int h) {
  check_params(instance, params);
  check_weight_stage(instance, h);
  const int n = instance.n();
  std::vector<double> p_true(static_cast<std::size_t>(n) + 1, 0.0);
  for (int j = h + 1; j <= n; ++j) p_true[j] = softmax_prob(j, params);

  SoftmaxWeight theta;
  theta.stage = h;
  const auto& entries = instance.universe().entries();
  theta.lookahead.assign(entries.size(), 0.0);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& clause = entries[i];
    if (clause.min_variable() <= h) continue;
    // Variables are drawn independently, so the clause fails only when every
    // literal fails.
    double all_false = 1.0;
    for (const auto& lit : clause.literals()) {
      all_false *= lit.negated ? p_true[lit.variable] : 1.0 - p_true[lit.variable];
    }
    theta.lookahead[i] = 1.0 - all_false;
  }
  return theta;
}

State lookahead_state(const State& state, Action action, const PolicyParams& params) {
  if (state.is_terminal()) return state;
  std::vector<std::int8_t> values(state.values().begin(), state.values().end());
  const int h = state.stage();
  values[static_cast<std::size_t>(h - 1)] = static_cast<std::int8_t>(to_int(action));
  for (int j = h + 1; j <= state.size(); ++j) {
    values[static_cast<std::size_t>(j - 1)] = static_cast<std::int8_t>(f_threshold(params, j));
  }
  return State::from_values(std::move(values));
}

std::int64_t lookahead_inner(const RealizabilityFeature& phi, const GreedyWeight& theta) {
  if (phi.undecided.size() != theta.lookahead.size()) {
    throw Error(ErrorCode::InvalidArgument, "feature and weight dimensions differ");
  }
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < phi.undecided.size(); ++i) {
    if (theta.lookahead[i]) sum += phi.undecided[i];
  }
  return sum;
}

double lookahead_inner(const RealizabilityFeature& phi, const SoftmaxWeight& theta) {
  if (phi.undecided.size() != theta.lookahead.size()) {
    throw Error(ErrorCode::InvalidArgument, "feature and weight dimensions differ");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < phi.undecided.size(); ++i) {
    if (phi.undecided[i] != 0) sum += phi.undecided[i] * theta.lookahead[i];
  }
  return sum;
}

Rational dot(const RealizabilityFeature& phi, const GreedyWeight& theta) {
  return Rational(phi.satisfied * theta.head + lookahead_inner(phi, theta), phi.clause_count);
}

double dot(const RealizabilityFeature& phi, const SoftmaxWeight& theta) {
  return (static_cast<double>(phi.satisfied) * theta.head + lookahead_inner(phi, theta)) /
         static_cast<double>(phi.clause_count);
}

}  // namespace pqr
