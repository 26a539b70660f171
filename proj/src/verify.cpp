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

#include "pqr/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include "pqr/error.hpp"
#include "pqr/features.hpp"
#include "pqr/generators.hpp"
#include "pqr/mdp.hpp"
#include "pqr/policies.hpp"
#include "pqr/reduction.hpp"
#include "pqr/rng.hpp"

namespace pqr {

using nlohmann::json;

void SuiteResult::fail(std::string message, json inputs) {
  ++failure_count;
  if (failures.size() < kMaxRecordedFailures) {
    failures.push_back({std::move(message), std::move(inputs)});
  }
}

json SuiteResult::to_json(bool include_timing) const {
  std::vector<json> failure_list;
  failure_list.reserve(failures.size());
  for (const auto& f : failures) {
    failure_list.push_back(json{{"message", f.message}, {"inputs", f.inputs}});
  }
  std::sort(failure_list.begin(), failure_list.end(),
            [](const json& a, const json& b) { return a.dump() < b.dump(); });
  json out{{"suite", suite},
           {"cases", cases},
           {"passed", passed()},
           {"failure_count", failure_count},
           {"failures", failure_list},
           {"seed", seed},
           {"params", params},
           {"metrics", metrics},
           {"operations", operations}};
  if (include_timing) out["wall_seconds"] = wall_seconds;
  return out;
}

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<int> state_vector(const State& s) {
  return std::vector<int>(s.values().begin(), s.values().end());
}

json cell_inputs(const Formula& formula, const PolicyParams& params, const State& s, Action a) {
  return json{{"dimacs", formula.to_dimacs()},
              {"theta_prime", params.theta_prime},
              {"state", state_vector(s)},
              {"action", to_int(a)}};
}

PolicyParams pattern_from_code(std::uint64_t code, int n, double magnitude = 1.0) {
  std::vector<double> theta(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    theta[static_cast<std::size_t>(j - 1)] = ((code >> (n - j)) & 1U) ? magnitude : -magnitude;
  }
  return PolicyParams{std::move(theta)};
}

/// Random formulas for each n, then the caller's extras.
std::vector<Formula> suite_formulas(int n_min, int n_max, int per_n, int max_occurrence,
                                    std::uint64_t seed, const std::vector<Formula>& extras) {
  if (n_min < 1 || n_max < n_min) {
    throw Error(ErrorCode::InvalidArgument, "need 1 <= n_min <= n_max");
  }
  std::vector<Formula> out;
  const CounterRng root(seed);
  for (int n = n_min; n <= n_max; ++n) {
    CounterRng rng = root.split(static_cast<std::uint64_t>(n));
    for (int k = 0; k < per_n; ++k) {
      const int clauses = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(2 * n)));
      out.push_back(random_bounded_formula(n, clauses, max_occurrence, rng));
    }
  }
  out.insert(out.end(), extras.begin(), extras.end());
  return out;
}

/// Count of undecided clause instances satisfied by the look-ahead leaf,
/// computed from the formula without the clause universe.
std::int64_t lookahead_satisfied_direct(const Formula& formula, const State& state, Action a,
                                        const PolicyParams& params) {
  const int h = state.stage();
  std::vector<std::int8_t> prefix(state.values().begin(), state.values().begin() + h);
  prefix[static_cast<std::size_t>(h - 1)] = static_cast<std::int8_t>(to_int(a));
  const State leaf = lookahead_state(state, a, params);
  const auto leaf_values = leaf.values();
  std::int64_t count = 0;
  for (const auto& clause : undecided_multiset(formula, prefix)) {
    if (eval_clause(clause, leaf_values).state == ClauseState::Satisfied) ++count;
  }
  return count;
}

void greedy_realizability_formula(const Formula& formula, SuiteResult& result) {
  const MdpInstance instance = build_mdp(formula);
  const int n = instance.n();
  const std::int64_t C = instance.clause_count();
  const std::uint64_t patterns = std::uint64_t{1} << n;
  for (std::uint64_t code = 0; code < patterns; ++code) {
    const PolicyParams params = pattern_from_code(code, n);
    std::vector<GreedyWeight> weights;
    for (int h = 1; h <= n; ++h) weights.push_back(greedy_weight(instance, params, h));
    for (int h = 1; h <= n; ++h) {
      const auto& theta = weights[static_cast<std::size_t>(h - 1)];
      for (const State& s : states_at_stage(n, h)) {
        for (Action a : {Action::False, Action::True}) {
          ++result.cases;
          const Rational q = eval_q_greedy(instance, params, s, a);
          const auto phi = realizability_feature(instance, s, a);
          const Rational linear = dot(phi, theta);
          if (q != linear) {
            auto in = cell_inputs(formula, params, s, a);
            in["q"] = to_fraction_string(q);
            in["dot"] = to_fraction_string(linear);
            result.fail("q != <phi, theta_h>", std::move(in));
          }
          const std::int64_t direct = lookahead_satisfied_direct(formula, s, a, params);
          if (Rational(phi.satisfied + direct, C) != q) {
            auto in = cell_inputs(formula, params, s, a);
            in["q"] = to_fraction_string(q);
            in["b"] = phi.satisfied;
            in["lookahead_satisfied"] = direct;
            result.fail("decomposition q = (b + <Y,M>)/|C| fails", std::move(in));
          }
          if (h == n) {
            if (lookahead_inner(phi, theta) != 0 || q != Rational(phi.satisfied, C)) {
              result.fail("base case h = H-1: expected <Y,M> = 0 and q = b/|C|",
                          cell_inputs(formula, params, s, a));
            }
          } else if (h == n - 1) {
            const Rational leaf_reward = reward(instance, lookahead_state(s, a, params));
            if (q != leaf_reward) {
              result.fail("base case h = H-2: q differs from the look-ahead leaf reward",
                          cell_inputs(formula, params, s, a));
            }
          }
        }
      }
    }
  }
}

void telescoping_formula(const Formula& formula, SuiteResult& result) {
  const MdpInstance instance = build_mdp(formula);
  const int n = instance.n();
  const std::uint64_t patterns = std::uint64_t{1} << n;
  for (std::uint64_t code = 0; code < patterns; ++code) {
    const PolicyParams params = pattern_from_code(code, n);
    std::vector<GreedyWeight> weights;
    for (int h = 1; h <= n; ++h) weights.push_back(greedy_weight(instance, params, h));
    // Every consecutive pair (stage h-1, stage h) of a greedy trajectory has
    // a free first action and a policy action after it.
    for (int h = 2; h <= n; ++h) {
      for (const State& s : states_at_stage(n, h - 1)) {
        for (Action a : {Action::False, Action::True}) {
          ++result.cases;
          const auto phi_prev = realizability_feature(instance, s, a);
          const State next = transition(s, a);
          const Action follow = greedy_action(h, params);
          const auto phi_next = realizability_feature(instance, next, follow);
          const std::int64_t lhs =
              lookahead_inner(phi_prev, weights[static_cast<std::size_t>(h - 2)]) -
              lookahead_inner(phi_next, weights[static_cast<std::size_t>(h - 1)]);
          const std::int64_t rhs = phi_next.satisfied - phi_prev.satisfied;
          if (lhs != rhs) {
            auto in = cell_inputs(formula, params, s, a);
            in["stage"] = h;
            in["lhs"] = lhs;
            in["rhs"] = rhs;
            result.fail("telescoping identity fails", std::move(in));
          }
        }
      }
    }
  }
}

template <typename Fn>
SuiteResult run_greedy_like(const char* name, const GreedySuiteConfig& config, Fn&& per_formula,
                            std::vector<std::string> ops) {
  Stopwatch clock;
  SuiteResult result;
  result.suite = name;
  result.seed = config.seed;
  result.operations = std::move(ops);
  result.params = json{{"n_min", config.n_min},
                       {"n_max", config.n_max},
                       {"formulas_per_n", config.formulas_per_n},
                       {"max_occurrence", config.max_occurrence},
                       {"extra_formulas", config.extra_formulas.size()},
                       {"tolerance", 0}};
  if (config.n_max > 10) throw Error(ErrorCode::CapExceeded, "greedy sweep capped at n <= 10");
  const auto formulas = suite_formulas(config.n_min, config.n_max, config.formulas_per_n,
                                       config.max_occurrence, config.seed, config.extra_formulas);
  for (const auto& f : formulas) {
    if (f.variable_count() > 10) {
      throw Error(ErrorCode::CapExceeded, "greedy sweep capped at n <= 10");
    }
    per_formula(f, result);
  }
  result.metrics["formulas"] = formulas.size();
  result.wall_seconds = clock.seconds();
  return result;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double log_log_slope(const std::vector<int>& ns, const std::vector<double>& times) {
  const auto k = static_cast<double>(ns.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double x = std::log(static_cast<double>(ns[i]));
    const double y = std::log(std::max(times[i], 1e-12));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

/// Best-of-batches time per call, batching until each batch is long enough
/// to be measurable.
double time_per_call(const std::function<void()>& fn, double min_seconds) {
  int reps = 1;
  for (;;) {
    Stopwatch clock;
    for (int i = 0; i < reps; ++i) fn();
    if (clock.seconds() >= min_seconds || reps >= (1 << 20)) break;
    reps *= 2;
  }
  double best = 1e300;
  for (int batch = 0; batch < 3; ++batch) {
    Stopwatch clock;
    for (int i = 0; i < reps; ++i) fn();
    best = std::min(best, clock.seconds() / reps);
  }
  return best;
}

}  // namespace

SuiteResult check_realizability_greedy(const GreedySuiteConfig& config) {
  return run_greedy_like("realizability_greedy", config, greedy_realizability_formula,
                         {"greedy_weight", "realizability_feature", "undecided_multiset",
                          "lookahead_state", "greedy_action", "f_threshold", "eval_q_greedy"});
}

SuiteResult check_telescoping(const GreedySuiteConfig& config) {
  return run_greedy_like("telescoping", config, telescoping_formula,
                         {"greedy_weight", "realizability_feature", "greedy_action"});
}

SuiteResult check_realizability_softmax(const SoftmaxSuiteConfig& config) {
  Stopwatch clock;
  SuiteResult result;
  result.suite = "realizability_softmax";
  result.seed = config.seed;
  result.operations = {"softmax_prob",    "softmax_weight", "realizability_feature",
                       "eval_q_softmax",  "enumerate_trajectories",
                       "psp_feature"};
  result.params = json{{"n_min", config.n_min},
                       {"n_max", config.n_max},
                       {"formulas_per_n", config.formulas_per_n},
                       {"thetas_per_formula", config.thetas_per_formula},
                       {"theta_range", config.theta_range},
                       {"tol", config.tol},
                       {"closed_form_tol", config.closed_form_tol},
                       {"max_occurrence", config.max_occurrence}};
  if (config.n_max > 8) throw Error(ErrorCode::CapExceeded, "softmax oracle capped at n <= 8");
  const auto formulas = suite_formulas(config.n_min, config.n_max, config.formulas_per_n,
                                       config.max_occurrence, config.seed ^ 0x5f, config.extra_formulas);
  CounterRng theta_rng = CounterRng(config.seed).split(0xA11CE);
  double worst_cell = 0.0;
  double worst_weight = 0.0;
  double worst_oracle = 0.0;
  for (const auto& formula : formulas) {
    const MdpInstance instance = build_mdp(formula);
    const int n = instance.n();
    for (int t = 0; t < config.thetas_per_formula; ++t) {
      std::vector<double> theta(static_cast<std::size_t>(n));
      // The first draw per formula is theta' = 0, the uniform policy.
      for (auto& x : theta) {
        x = t == 0 ? 0.0 : theta_rng.next_uniform(-config.theta_range, config.theta_range);
      }
      const PolicyParams params = PolicyParams::from(std::move(theta));

      // psp features drive the probabilities: p_h = e^{<phi'(T),th'>} / sum.
      for (int h = 1; h <= n; ++h) {
        const auto up = psp_feature(h, Action::True, n);
        const auto down = psp_feature(h, Action::False, n);
        double s_up = 0, s_down = 0;
        for (int j = 0; j < n; ++j) {
          s_up += up.vector[static_cast<std::size_t>(j)] * params.theta_prime[static_cast<std::size_t>(j)];
          s_down += down.vector[static_cast<std::size_t>(j)] * params.theta_prime[static_cast<std::size_t>(j)];
        }
        const double p_def = std::exp(s_up) / (std::exp(s_up) + std::exp(s_down));
        if (std::abs(p_def - softmax_prob(h, params)) > config.closed_form_tol) {
          result.fail("softmax_prob disagrees with the psp definition",
                      json{{"theta_prime", params.theta_prime}, {"stage", h}});
        }
      }

      std::vector<SoftmaxWeight> weights;
      for (int h = 1; h <= n; ++h) {
        auto closed = softmax_weight(instance, params, h);
        const auto reference = softmax_weight_from_trajectories(instance, params, h);
        const double diff = std::max(max_abs_diff(closed.lookahead, reference.lookahead),
                                     std::abs(closed.head - reference.head));
        worst_weight = std::max(worst_weight, diff);
        ++result.cases;
        const bool in_range = std::all_of(closed.lookahead.begin(), closed.lookahead.end(),
                                          [](double m) { return m >= 0.0 && m <= 1.0; });
        if (diff > config.closed_form_tol || closed.head != 1.0 || !in_range) {
          result.fail("closed-form theta_h disagrees with the trajectory sum",
                      json{{"dimacs", formula.to_dimacs()},
                           {"theta_prime", params.theta_prime},
                           {"stage", h},
                           {"max_abs_diff", diff}});
        }
        weights.push_back(std::move(closed));
      }
      for (int h = 1; h <= n; ++h) {
        for (const State& s : states_at_stage(n, h)) {
          for (Action a : {Action::False, Action::True}) {
            ++result.cases;
            const double q = eval_q_softmax(instance, params, s, a);
            const double linear =
                dot(realizability_feature(instance, s, a), weights[static_cast<std::size_t>(h - 1)]);
            const double oracle = eval_q_softmax_exhaustive(instance, params, s, a);
            worst_cell = std::max(worst_cell, std::abs(q - linear));
            worst_oracle = std::max(worst_oracle, std::abs(q - oracle));
            if (std::abs(q - linear) > config.tol || q < 0.0 || q > 1.0) {
              auto in = cell_inputs(formula, params, s, a);
              in["q"] = q;
              in["dot"] = linear;
              result.fail("|q - <phi, theta_h>| exceeds tolerance", std::move(in));
            }
            if (std::abs(q - oracle) > config.closed_form_tol) {
              auto in = cell_inputs(formula, params, s, a);
              in["q"] = q;
              in["trajectory_sum"] = oracle;
              result.fail("per-clause q disagrees with the trajectory sum", std::move(in));
            }
          }
        }
      }
    }
  }
  result.metrics = json{{"formulas", formulas.size()},
                        {"max_cell_error", worst_cell},
                        {"max_weight_error", worst_weight},
                        {"max_oracle_error", worst_oracle}};
  result.wall_seconds = clock.seconds();
  return result;
}

SuiteResult check_limit_coupling(const LimitSuiteConfig& config) {
  Stopwatch clock;
  SuiteResult result;
  result.suite = "limit_coupling";
  result.seed = config.seed;
  result.operations = {"softmax_prob", "greedy_action", "softmax_weight", "greedy_weight",
                       "eval_q_softmax", "eval_q_greedy"};
  result.params = json{{"n_min", config.n_min},
                       {"n_max", config.n_max},
                       {"formulas_per_n", config.formulas_per_n},
                       {"magnitude", config.magnitude},
                       {"tol", config.tol}};
  if (config.n_max > 8) throw Error(ErrorCode::CapExceeded, "limit suite capped at n <= 8");
  const auto formulas = suite_formulas(config.n_min, config.n_max, config.formulas_per_n,
                                       config.max_occurrence, config.seed ^ 0x11, {});
  double worst = 0.0;
  auto record = [&](double diff, const char* what, json in) {
    worst = std::max(worst, diff);
    ++result.cases;
    if (!(diff <= config.tol)) {
      in["difference"] = diff;
      result.fail(what, std::move(in));
    }
  };
  for (const auto& formula : formulas) {
    const MdpInstance instance = build_mdp(formula);
    const int n = instance.n();
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
      const PolicyParams saturated = pattern_from_code(code, n, config.magnitude);
      const PolicyParams pattern = pattern_from_code(code, n);
      const json base{{"dimacs", formula.to_dimacs()}, {"theta_prime", saturated.theta_prime}};
      for (int h = 1; h <= n; ++h) {
        const double p = softmax_prob(h, saturated);
        record(std::abs(p - to_int(greedy_action(h, pattern))), "action probability", base);
        const auto soft = softmax_weight(instance, saturated, h);
        const auto hard = greedy_weight(instance, pattern, h);
        double diff = std::abs(soft.head - static_cast<double>(hard.head));
        for (std::size_t i = 0; i < soft.lookahead.size(); ++i) {
          diff = std::max(diff, std::abs(soft.lookahead[i] - hard.lookahead[i]));
        }
        record(diff, "weights", base);
        for (const State& s : states_at_stage(n, h)) {
          for (Action a : {Action::False, Action::True}) {
            const double qs = eval_q_softmax(instance, saturated, s, a);
            const double qg = to_double(eval_q_greedy(instance, pattern, s, a));
            record(std::abs(qs - qg), "q-values", cell_inputs(formula, saturated, s, a));
          }
        }
      }
    }
  }
  result.metrics = json{{"formulas", formulas.size()}, {"max_difference", worst}};
  result.wall_seconds = clock.seconds();
  return result;
}

SuiteResult check_construction_scaling(const ScalingSuiteConfig& config) {
  Stopwatch clock;
  SuiteResult result;
  result.suite = "construction_scaling";
  result.seed = config.seed;
  result.operations = {"enumerate_universe", "realizability_feature", "greedy_weight",
                       "softmax_weight"};
  result.params = json{{"n_list", config.n_list},
                       {"max_slope_greedy", config.max_slope_greedy},
                       {"max_slope_softmax", config.max_slope_softmax},
                       {"closed_form_n_max", config.closed_form_n_max}};
  if (config.n_list.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "scaling needs at least two sizes");
  }

  for (int n = 1; n <= config.closed_form_n_max; ++n) {
    ++result.cases;
    const ClauseUniverse u = enumerate_universe(n);
    std::int64_t counts[4] = {0, 0, 0, 0};
    for (const auto& c : u.entries()) ++counts[c.size()];
    for (int j = 1; j <= 3; ++j) {
      if (counts[j] != ClauseUniverse::block_size(n, j)) {
        result.fail("universe block size differs from its closed form",
                    json{{"n", n}, {"block", j}, {"count", counts[j]},
                         {"closed_form", ClauseUniverse::block_size(n, j)}});
      }
    }
  }

  std::vector<double> t_universe, t_greedy, t_softmax;
  json rows = json::array();
  const CounterRng root(config.seed);
  for (int n : config.n_list) {
    CounterRng rng = root.split(static_cast<std::uint64_t>(n));
    const MdpInstance instance = build_mdp(random_bounded_formula(n, n, 3, rng));
    std::vector<double> theta(static_cast<std::size_t>(n));
    for (auto& x : theta) x = rng.next_uniform(-3.0, 3.0);
    const PolicyParams params = PolicyParams::from(std::move(theta));
    std::vector<State> anchors;
    for (int h = 1; h <= n; ++h) {
      std::vector<std::int8_t> values(static_cast<std::size_t>(n), -1);
      for (int i = 0; i < h - 1; ++i) values[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(i % 2);
      anchors.push_back(State::from_values(std::move(values)));
    }

    const double universe = time_per_call([n] { (void)enumerate_universe(n); },
                                          config.min_sample_seconds);
    const double greedy_all = time_per_call(
        [&] {
          for (int h = 1; h <= n; ++h) {
            (void)realizability_feature(instance, anchors[static_cast<std::size_t>(h - 1)],
                                        Action::True);
            (void)greedy_weight(instance, params, h);
          }
        },
        config.min_sample_seconds);
    const double softmax_all = time_per_call(
        [&] {
          for (int h = 1; h <= n; ++h) (void)softmax_weight(instance, params, h);
        },
        config.min_sample_seconds);
    t_universe.push_back(universe);
    t_greedy.push_back(greedy_all / n);
    t_softmax.push_back(softmax_all);
    rows.push_back(json{{"n", n},
                        {"d", instance.d()},
                        {"universe_seconds", universe},
                        {"greedy_stage_seconds", greedy_all / n},
                        {"softmax_all_stages_seconds", softmax_all}});
    ++result.cases;
    if (static_cast<std::int64_t>(instance.d()) != 1 + ClauseUniverse::total_size(n)) {
      result.fail("d differs from 1 + l1 + l2 + l3", json{{"n", n}, {"d", instance.d()}});
    }
  }
  const double s_universe = log_log_slope(config.n_list, t_universe);
  const double s_greedy = log_log_slope(config.n_list, t_greedy);
  const double s_softmax = log_log_slope(config.n_list, t_softmax);
  result.cases += 3;
  if (s_universe > config.max_slope_greedy) {
    result.fail("universe enumeration slope too steep", json{{"slope", s_universe}});
  }
  if (s_greedy > config.max_slope_greedy) {
    result.fail("greedy vector slope too steep", json{{"slope", s_greedy}});
  }
  if (s_softmax > config.max_slope_softmax) {
    result.fail("softmax weight slope too steep", json{{"slope", s_softmax}});
  }
  result.metrics = json{{"rows", rows},
                        {"slope_universe", s_universe},
                        {"slope_greedy", s_greedy},
                        {"slope_softmax", s_softmax}};
  result.wall_seconds = clock.seconds();
  return result;
}

SuiteResult check_reduction_roundtrip(const RoundtripSuiteConfig& config) {
  Stopwatch clock;
  SuiteResult result;
  result.suite = "reduction_roundtrip";
  result.seed = config.seed;
  result.operations = {"decide_max3sat", "extract_assignment_greedy", "epsilon_bound_greedy",
                       "best_greedy", "gap3sat_to_delta_b"};
  result.params = json{{"count", config.count},
                       {"n", config.n},
                       {"delta", to_fraction_string(config.delta)},
                       {"epsilon", to_fraction_string(config.epsilon)},
                       {"clauses_per_variable", config.clauses_per_variable}};
  if (config.epsilon > epsilon_bound_greedy(config.delta)) {
    throw Error(ErrorCode::Precondition, "roundtrip needs epsilon <= delta/2");
  }
  const Rational zeta = Rational(1) - config.delta + 2 * config.epsilon;
  const Rational target = Rational(1) - config.delta;
  const CounterRng root(config.seed);
  const RlSolver exact = exact_solver();
  const RlSolver adversary = epsilon_adversary_solver();
  std::int64_t yes_exact = 0;
  std::int64_t yes_adversary = 0;

  auto certificate_ok = [&](const Formula& f, const ReductionReport& r) {
    // Recount with eval_clause rather than satisfied_fraction.
    std::vector<std::int8_t> values(r.extracted.begin(), r.extracted.end());
    std::int64_t sat = 0;
    for (const auto& c : f.clauses()) {
      if (eval_clause(c, values).state == ClauseState::Satisfied) ++sat;
    }
    const Rational recount(sat, static_cast<std::int64_t>(f.clause_count()));
    return recount == r.achieved_fraction && recount >= target;
  };

  for (int i = 0; i < config.count; ++i) {
    CounterRng rng = root.split(static_cast<std::uint64_t>(i));
    const auto planted =
        planted_formula(config.n, config.clauses_per_variable * config.n, zeta, rng);
    const json in{{"dimacs", planted.formula.to_dimacs()}, {"instance", i}};
    const auto premise = is_zeta_satisfiable(planted.formula, zeta);
    ++result.cases;
    if (!premise.satisfiable) {
      result.fail("planted instance is not zeta-satisfiable", in);
      continue;
    }
    const MdpInstance instance = build_mdp(planted.formula);
    if (best_greedy(instance).value != premise.value) {
      result.fail("best greedy value differs from the assignment optimum", in);
    }
    for (const auto* solver : {&exact, &adversary}) {
      ++result.cases;
      DecideOptions options;
      options.policy_class = PolicyClass::Greedy;
      const auto report = decide_max3sat(planted.formula, config.delta, *solver, config.epsilon,
                                         options);
      const bool optimal_enough =
          report.policy_value_exact && *report.policy_value_exact >= premise.value - config.epsilon;
      if (!report.yes || !certificate_ok(planted.formula, report) || !optimal_enough) {
        auto bad = in;
        bad["solver"] = solver == &exact ? "exact" : "epsilon_adversary";
        bad["achieved"] = to_fraction_string(report.achieved_fraction);
        result.fail("planted instance not decided Yes with a valid certificate", std::move(bad));
      } else {
        ++(solver == &exact ? yes_exact : yes_adversary);
      }
    }
  }

  // max fraction 1/2 < 1 - delta for any delta < 1/2.
  const Formula unsat = contradictory_units(config.n, std::min(config.n, 5));
  ++result.cases;
  const auto max_unsat = is_zeta_satisfiable(unsat, Rational(0)).value;
  const auto report = decide_max3sat(unsat, config.delta, exact, config.epsilon, {});
  if (max_unsat >= target || report.yes) {
    result.fail("contradictory-unit instance not decided No",
                json{{"dimacs", unsat.to_dimacs()},
                     {"max_fraction", to_fraction_string(max_unsat)}});
  }
  ++result.cases;
  try {
    (void)gap3sat_to_delta_b(unsat, 1, config.epsilon, config.delta);
    result.fail("gap3sat_to_delta_b accepted an occurrence-bound violation",
                json{{"dimacs", unsat.to_dimacs()}});
  } catch (const Error&) {
  }
  const Formula two = parse_dimacs("p cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n");
  ++result.cases;
  const auto two_report = decide_max3sat(two, config.delta, exact, config.epsilon, {});
  if (!two_report.yes || two_report.achieved_fraction != Rational(1)) {
    result.fail("two-clause formula not decided Yes with fraction 1",
                json{{"dimacs", two.to_dimacs()}});
  }
  result.metrics = json{{"yes_exact", yes_exact},
                        {"yes_adversary", yes_adversary},
                        {"zeta", to_fraction_string(zeta)}};
  result.wall_seconds = clock.seconds();
  return result;
}

SuiteResult check_mcdiarmid(const McDiarmidSuiteConfig& config) {
  Stopwatch clock;
  SuiteResult result;
  result.suite = "mcdiarmid";
  result.seed = config.seed;
  result.operations = {"mcdiarmid_tail", "empirical_mcdiarmid", "sample_trajectory",
                       "eval_q_softmax", "epsilon_bound_softmax",
                       "extract_assignment_softmax"};
  result.params = json{{"n", config.n},
                       {"b", config.b},
                       {"trials", config.trials},
                       {"p0", config.p0},
                       {"policies", config.policies}};
  CounterRng rng = CounterRng(config.seed).split(0xC0DE);
  const Formula formula = random_bounded_formula(config.n, 3 * config.n, config.b, rng);
  const MdpInstance instance = build_mdp(formula);
  const int b_actual = occurrence_bound(formula);
  const double t =
      mcdiarmid_calibration_t(instance.horizon(), b_actual, instance.clause_count(), config.p0);
  const double tail = mcdiarmid_tail(t, instance.horizon(), b_actual, instance.clause_count());
  ++result.cases;
  if (std::abs(tail - config.p0) > 1e-12 * config.p0) {
    result.fail("calibration tail differs from p0", json{{"t", t}, {"tail", tail}});
  }
  json runs = json::array();
  for (int k = 0; k < config.policies; ++k) {
    std::vector<double> theta(static_cast<std::size_t>(config.n));
    for (auto& x : theta) x = rng.next_uniform(-config.theta_range, config.theta_range);
    const PolicyParams params = PolicyParams::from(std::move(theta));
    // The calibration point plus smaller deviations where the bound bites.
    json grid = json::array();
    for (double fraction : {1.0, 0.5, 0.25, 0.125}) {
      const double t_k = fraction * t;
      const auto check = empirical_mcdiarmid(instance, params, config.trials, t_k,
                                             CounterRng(config.seed).split(k).seed());
      ++result.cases;
      grid.push_back(json{{"t", t_k},
                          {"expected", check.expected},
                          {"empirical_tail", check.empirical_tail},
                          {"bound", check.bound},
                          {"slack", check.slack}});
      if (!check.pass) {
        result.fail("empirical tail exceeds bound + 3 sigma",
                    json{{"dimacs", formula.to_dimacs()},
                         {"theta_prime", params.theta_prime},
                         {"t", t_k}});
      }
    }
    runs.push_back(json{{"theta_prime", params.theta_prime}, {"grid", grid}});
    // Rewards live in [0,1], so a deviation of 1 below the mean never occurs.
    const auto far = empirical_mcdiarmid(instance, params, std::min<std::int64_t>(config.trials, 2000),
                                         1.0, config.seed + 7);
    ++result.cases;
    if (far.empirical_tail != 0.0) {
      result.fail("empirical tail at t = 1 is nonzero", json{{"theta_prime", params.theta_prime}});
    }
    // Rounded extraction agrees with the greedy reading of the same signs.
    ++result.cases;
    if (extract_assignment_softmax(params, config.n, ExtractMode::Round) !=
        extract_assignment_greedy(params, config.n)) {
      result.fail("rounded softmax extraction differs from greedy extraction",
                  json{{"theta_prime", params.theta_prime}});
    }
  }
  const auto v_star = is_zeta_satisfiable(formula, Rational(0)).value;
  result.metrics = json{{"clause_count", instance.clause_count()},
                        {"b", b_actual},
                        {"horizon", instance.horizon()},
                        {"t", t},
                        {"tail_at_t", tail},
                        {"v_star", to_fraction_string(v_star)},
                        {"epsilon_bound_softmax",
                         epsilon_bound_softmax(v_star, instance.horizon(), b_actual,
                                               instance.clause_count(), Rational(1, 10),
                                               config.p0)},
                        {"runs", runs}};
  result.wall_seconds = clock.seconds();
  return result;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "greedy", "telescoping", "softmax", "limit", "scaling", "roundtrip", "mcdiarmid"};
  return names;
}

namespace {

template <typename T>
void take(const json& params, const char* key, T& field) {
  if (params.contains(key)) field = params.at(key).get<T>();
}

void take_rational(const json& params, const char* key, Rational& field) {
  if (!params.contains(key)) return;
  const auto& v = params.at(key);
  field = v.is_string() ? parse_rational(v.get<std::string>())
                        : parse_rational(v.dump());
}

}  // namespace

SuiteResult run_suite(const std::string& name, const json& params) {
  if (!params.is_object()) throw Error(ErrorCode::InvalidArgument, "suite params must be an object");
  try {
    if (name == "greedy" || name == "telescoping") {
      GreedySuiteConfig c;
      take(params, "n_min", c.n_min);
      take(params, "n_max", c.n_max);
      take(params, "formulas_per_n", c.formulas_per_n);
      take(params, "b", c.max_occurrence);
      take(params, "seed", c.seed);
      return name == "greedy" ? check_realizability_greedy(c) : check_telescoping(c);
    }
    if (name == "softmax") {
      SoftmaxSuiteConfig c;
      take(params, "n_min", c.n_min);
      take(params, "n_max", c.n_max);
      take(params, "formulas_per_n", c.formulas_per_n);
      take(params, "thetas_per_formula", c.thetas_per_formula);
      take(params, "tol", c.tol);
      take(params, "b", c.max_occurrence);
      take(params, "seed", c.seed);
      return check_realizability_softmax(c);
    }
    if (name == "limit") {
      LimitSuiteConfig c;
      take(params, "n_min", c.n_min);
      take(params, "n_max", c.n_max);
      take(params, "formulas_per_n", c.formulas_per_n);
      take(params, "magnitude", c.magnitude);
      take(params, "tol", c.tol);
      take(params, "seed", c.seed);
      return check_limit_coupling(c);
    }
    if (name == "scaling") {
      ScalingSuiteConfig c;
      take(params, "n_list", c.n_list);
      take(params, "max_slope_greedy", c.max_slope_greedy);
      take(params, "max_slope_softmax", c.max_slope_softmax);
      take(params, "seed", c.seed);
      return check_construction_scaling(c);
    }
    if (name == "roundtrip") {
      RoundtripSuiteConfig c;
      take(params, "count", c.count);
      take(params, "n", c.n);
      take_rational(params, "delta", c.delta);
      take_rational(params, "epsilon", c.epsilon);
      take(params, "seed", c.seed);
      return check_reduction_roundtrip(c);
    }
    if (name == "mcdiarmid") {
      McDiarmidSuiteConfig c;
      take(params, "n", c.n);
      take(params, "b", c.b);
      take(params, "trials", c.trials);
      take(params, "p0", c.p0);
      take(params, "seed", c.seed);
      return check_mcdiarmid(c);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad suite parameter: ") + e.what());
  }
  throw Error(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
}

}  // namespace pqr
