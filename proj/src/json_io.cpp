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

#include "pqr/json_io.hpp"

#include <cstdio>

#include "pqr/error.hpp"

namespace pqr {

using nlohmann::json;

std::string decimal_string(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

json clause_list(const std::vector<Clause>& clauses) {
  json out = json::array();
  for (const auto& c : clauses) out.push_back(c.dimacs());
  return out;
}

template <typename F>
auto wrap_json_errors(const char* what, F&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string(what) + ": " + e.what());
  }
}

}  // namespace

json to_json(const Formula& formula) {
  return json{{"n", formula.variable_count()}, {"clauses", clause_list(formula.clauses())}};
}

Formula formula_from_json(const json& j) {
  return wrap_json_errors("formula JSON", [&] {
    const int n = j.at("n").get<int>();
    std::vector<Clause> clauses;
    for (const auto& c : j.at("clauses")) {
      std::vector<Literal> lits;
      for (const auto& lit : c) {
        const int v = lit.get<int>();
        if (v == 0) throw Error(ErrorCode::Parse, "formula JSON: literal 0");
        lits.push_back(Literal{v < 0 ? -v : v, v < 0});
      }
      clauses.push_back(Clause::make(std::move(lits)));
    }
    return Formula(n, std::move(clauses));
  });
}

json to_json(const ClauseUniverse& universe) {
  return json{{"n", universe.variable_count()}, {"clauses", clause_list(universe.entries())}};
}

json to_json(const State& state) {
  return std::vector<int>(state.values().begin(), state.values().end());
}

State state_from_json(const json& j) {
  return wrap_json_errors("state JSON", [&] {
    std::vector<std::int8_t> values;
    for (const auto& v : j) {
      const int x = v.get<int>();
      if (x < -1 || x > 1) throw Error(ErrorCode::Parse, "state entries must be -1, 0 or 1");
      values.push_back(static_cast<std::int8_t>(x));
    }
    return State::from_values(std::move(values));
  });
}

json assignment_to_json(const Assignment& assignment) {
  return std::vector<int>(assignment.begin(), assignment.end());
}

json to_json(const PolicyParams& params) { return json{{"theta_prime", params.theta_prime}}; }

PolicyParams params_from_json(const json& j) {
  return wrap_json_errors("policy JSON", [&] {
    const json& arr = j.is_object() ? j.at("theta_prime") : j;
    return PolicyParams::from(arr.get<std::vector<double>>());
  });
}

json instance_descriptor(const MdpInstance& instance, bool include_tables) {
  json out{{"n", instance.n()},
           {"H", instance.horizon()},
           {"d", instance.d()},
           {"d_prime", instance.d_prime()},
           {"clause_count", instance.clause_count()},
           {"formula", to_json(instance.formula())}};
  if (include_tables) {
    out["universe"] = clause_list(instance.universe().entries());
    json psp = json::array();
    for (int h = 1; h <= instance.n(); ++h) {
      for (Action a : {Action::False, Action::True}) {
        psp.push_back(json{{"stage", h},
                           {"action", to_int(a)},
                           {"vector", psp_feature(h, a, instance.n()).vector}});
      }
    }
    out["psp_features"] = std::move(psp);
  }
  return out;
}

json to_json(const RealizabilityFeature& phi) {
  std::vector<std::int64_t> entries;
  entries.reserve(phi.undecided.size() + 1);
  entries.push_back(phi.satisfied);
  entries.insert(entries.end(), phi.undecided.begin(), phi.undecided.end());
  return json{{"stage", phi.stage},
              {"scale_num", 1},
              {"scale_den", phi.clause_count},
              {"entries", entries}};
}

json to_json(const GreedyWeight& theta) {
  std::vector<std::int64_t> entries;
  entries.reserve(theta.lookahead.size() + 1);
  entries.push_back(theta.head);
  entries.insert(entries.end(), theta.lookahead.begin(), theta.lookahead.end());
  return json{{"stage", theta.stage}, {"scale_num", 1}, {"scale_den", 1}, {"entries", entries}};
}

json to_json(const SoftmaxWeight& theta) {
  json entries = json::array();
  entries.push_back(decimal_string(theta.head));
  for (double m : theta.lookahead) entries.push_back(decimal_string(m));
  return json{{"stage", theta.stage}, {"scale_num", 1}, {"scale_den", 1}, {"entries", entries}};
}

json to_json(const BestGreedy& best) {
  return json{{"theta_prime", best.params.theta_prime},
              {"assignment", assignment_to_json(best.assignment)},
              {"value", to_fraction_string(best.value)}};
}

json to_json(const ZetaResult& result) {
  return json{{"satisfiable", result.satisfiable},
              {"best", assignment_to_json(result.best)},
              {"value", to_fraction_string(result.value)}};
}

json to_json(const BoundDetails& bounds) {
  json out{{"b", bounds.b},
           {"clause_count", bounds.clause_count},
           {"horizon", bounds.horizon},
           {"p0", bounds.p0},
           {"t", bounds.t},
           {"tail", bounds.tail},
           {"softmax_checked", bounds.softmax_checked},
           {"epsilon_bound", nullptr},
           {"horizon_floor", nullptr}};
  if (bounds.epsilon_bound) out["epsilon_bound"] = *bounds.epsilon_bound;
  if (bounds.horizon_floor) out["horizon_floor"] = *bounds.horizon_floor;
  if (!bounds.note.empty()) out["note"] = bounds.note;
  return out;
}

json to_json(const ReductionReport& report) {
  json out{{"decision", report.yes ? "Yes" : "No"},
           {"yes", report.yes},
           {"extracted", assignment_to_json(report.extracted)},
           {"achieved_fraction", to_fraction_string(report.achieved_fraction)},
           {"delta", to_fraction_string(report.delta)},
           {"epsilon", to_fraction_string(report.epsilon)},
           {"class", to_string(report.policy_class)},
           {"mode", to_string(report.mode)},
           {"seed", report.seed},
           {"theta_prime", report.params.theta_prime},
           {"v_star", nullptr},
           {"policy_value", report.policy_value},
           {"success_probability", report.success_probability},
           {"solver_queries", report.solver_queries},
           {"bounds", to_json(report.bounds)}};
  if (report.v_star) out["v_star"] = to_fraction_string(*report.v_star);
  if (report.policy_value_exact) {
    out["policy_value_exact"] = to_fraction_string(*report.policy_value_exact);
  }
  return out;
}

json to_json(const McDiarmidCheck& check) {
  return json{{"expected", check.expected}, {"empirical_tail", check.empirical_tail},
              {"bound", check.bound},       {"slack", check.slack},
              {"pass", check.pass},         {"trials", check.trials},
              {"t", check.t},               {"b", check.b}};
}

}  // namespace pqr
