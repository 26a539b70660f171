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

#include "pqr/reduction.hpp"

#include <cmath>
#include <limits>

#include "pqr/error.hpp"
#include "pqr/policies.hpp"
#include "pqr/rng.hpp"

namespace pqr {

const char* to_string(ExtractMode mode) noexcept {
  return mode == ExtractMode::Round ? "round" : "sample";
}

ExtractMode extract_mode_from_string(std::string_view text) {
  if (text == "round") return ExtractMode::Round;
  if (text == "sample") return ExtractMode::Sample;
  throw Error(ErrorCode::InvalidArgument,
              "mode must be 'round' or 'sample', got '" + std::string(text) + "'");
}

namespace {

void check_length(const PolicyParams& params, int n) {
  if (params.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::InvalidArgument, "theta' has " + std::to_string(params.size()) +
                                                " entries, expected n = " + std::to_string(n));
  }
}

/// Leaf reached by a sign pattern, queried through the generative model.
Rational rollout_value(GenerativeModel& model, const PolicyParams& params) {
  State s = State::initial(model.instance().n());
  Rational r(0);
  while (!s.is_terminal()) {
    auto step = model.query(s, greedy_action(s.stage(), params));
    s = std::move(step.next);
    r = step.reward;
  }
  return r;
}

PolicyParams pattern_from_code(std::uint64_t code, int n, double magnitude = 1.0) {
  std::vector<double> theta(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    theta[static_cast<std::size_t>(j - 1)] = ((code >> (n - j)) & 1U) ? magnitude : -magnitude;
  }
  return PolicyParams{std::move(theta)};
}

void check_sweep_cap(int n, int cap) {
  if (n > cap || n > 62) {
    throw Error(ErrorCode::CapExceeded, "solver sweep over 2^" + std::to_string(n) +
                                            " patterns exceeds cap n <= " +
                                            std::to_string(cap));
  }
}

PolicyParams saturate(const MdpInstance& instance, const PolicyParams& pattern,
                      const Rational& target, const Rational& epsilon) {
  // Smallest power-of-two magnitude whose softmax value is epsilon-close to
  // the greedy optimum; the value increases monotonically along the ray.
  const double goal = to_double(target) - to_double(epsilon);
  const State s1 = State::initial(instance.n());
  PolicyParams scaled = pattern;
  for (double magnitude = 1.0; magnitude <= 64.0; magnitude *= 2.0) {
    for (std::size_t i = 0; i < pattern.size(); ++i) {
      scaled.theta_prime[i] = pattern.theta_prime[i] * magnitude;
    }
    if (eval_v_softmax(instance, scaled, s1) >= goal) break;
  }
  return scaled;
}

}  // namespace

Assignment extract_assignment_greedy(const PolicyParams& params, int n) {
  check_length(params, n);
  Assignment x(static_cast<std::size_t>(n));
  for (int h = 1; h <= n; ++h) {
    x[static_cast<std::size_t>(h - 1)] = static_cast<std::uint8_t>(to_int(greedy_action(h, params)));
  }
  return x;
}

Assignment extract_assignment_softmax(const PolicyParams& params, int n, ExtractMode mode,
                                      std::uint64_t seed) {
  check_length(params, n);
  Assignment x(static_cast<std::size_t>(n));
  if (mode == ExtractMode::Round) {
    // softmax_prob > 1/2 exactly when theta'_h > 0; comparing the parameter
    // avoids rounding p to 1/2 for tiny positive entries.
    for (int h = 1; h <= n; ++h) x[static_cast<std::size_t>(h - 1)] = params.at_stage(h) > 0.0;
    return x;
  }
  CounterRng rng(seed);
  for (int h = 1; h <= n; ++h) {
    x[static_cast<std::size_t>(h - 1)] = rng.next_unit() < softmax_prob(h, params) ? 1 : 0;
  }
  return x;
}

RlSolver exact_solver(int cap) {
  return [cap](const MdpInstance& instance, GenerativeModel& model, const Rational& epsilon,
               PolicyClass cls) {
    const int n = instance.n();
    check_sweep_cap(n, cap);
    const std::uint64_t total = std::uint64_t{1} << n;
    std::uint64_t best_code = 0;
    Rational best(-1);
    for (std::uint64_t k = total; k-- > 0;) {
      const Rational v = rollout_value(model, pattern_from_code(k, n));
      if (v > best) {
        best = v;
        best_code = k;
      }
    }
    PolicyParams pattern = pattern_from_code(best_code, n);
    if (cls == PolicyClass::Greedy) return pattern;
    return saturate(instance, pattern, best, epsilon);
  };
}

RlSolver epsilon_adversary_solver(int cap) {
  return [cap](const MdpInstance& instance, GenerativeModel& model, const Rational& epsilon,
               PolicyClass cls) {
    const int n = instance.n();
    check_sweep_cap(n, cap);
    const std::uint64_t total = std::uint64_t{1} << n;
    std::vector<Rational> values(total);
    Rational best(-1);
    for (std::uint64_t k = 0; k < total; ++k) {
      values[k] = rollout_value(model, pattern_from_code(k, n));
      if (values[k] > best) best = values[k];
    }
    std::uint64_t worst_code = 0;
    Rational worst(2);
    for (std::uint64_t k = 0; k < total; ++k) {
      if (values[k] >= best - epsilon && values[k] < worst) {
        worst = values[k];
        worst_code = k;
      }
    }
    PolicyParams pattern = pattern_from_code(worst_code, n);
    if (cls == PolicyClass::Greedy) return pattern;
    return saturate(instance, pattern, worst, Rational(0));
  };
}

Rational epsilon_bound_greedy(const Rational& delta) {
  if (delta <= Rational(0) || delta >= Rational(1)) {
    throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, 1), got " +
                                                to_compact_string(delta));
  }
  return delta / 2;
}

double mcdiarmid_tail(double t, int horizon, int b, std::int64_t clause_count) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw Error(ErrorCode::InvalidArgument, "t must be finite and nonnegative");
  }
  if (horizon < 1 || b < 1 || clause_count < 1) {
    throw Error(ErrorCode::InvalidArgument, "H, b and C must be positive");
  }
  const double c = static_cast<double>(clause_count);
  const double bb = static_cast<double>(b);
  return std::exp(-2.0 * t * t * c * c / (static_cast<double>(horizon) * bb * bb));
}

double mcdiarmid_calibration_t(int horizon, int b, std::int64_t clause_count, double p0) {
  if (horizon < 1 || b < 1 || clause_count < 1) {
    throw Error(ErrorCode::InvalidArgument, "H, b and C must be positive");
  }
  if (!(p0 > 0.0 && p0 < 1.0)) throw Error(ErrorCode::InvalidArgument, "p0 must lie in (0, 1)");
  return static_cast<double>(b) / static_cast<double>(clause_count) *
         std::sqrt(static_cast<double>(horizon) * std::log(1.0 / p0) / 2.0);
}

double epsilon_bound_softmax(const Rational& v_star, int horizon, int b,
                             std::int64_t clause_count, const Rational& delta, double p0) {
  if (v_star < Rational(0) || v_star > Rational(1)) {
    throw Error(ErrorCode::InvalidArgument, "v* must lie in [0, 1]");
  }
  if (delta <= Rational(0) || delta >= Rational(1)) {
    throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
  }
  return to_double(v_star) + to_double(delta) -
         mcdiarmid_calibration_t(horizon, b, clause_count, p0) - 1.0;
}

double softmax_horizon_floor(const Rational& v_star, const Rational& delta) {
  const Rational gap = v_star - (Rational(1) - delta);
  if (gap <= Rational(0)) return std::numeric_limits<double>::infinity();
  const double g = to_double(gap);
  return 1.0 / (g * g);
}

Formula gap3sat_to_delta_b(const Formula& formula, int b, const Rational& epsilon,
                           const Rational& delta) {
  if (b < 1) throw Error(ErrorCode::InvalidArgument, "b must be positive");
  const int occ = occurrence_bound(formula);
  if (occ > b) {
    throw Error(ErrorCode::Precondition, "a variable occurs in " + std::to_string(occ) +
                                             " clauses, more than b = " + std::to_string(b));
  }
  if (delta <= epsilon) {
    throw Error(ErrorCode::Precondition, "delta = " + to_compact_string(delta) +
                                             " must exceed epsilon = " +
                                             to_compact_string(epsilon));
  }
  return formula;
}

ReductionReport decide_max3sat(const Formula& formula, const Rational& delta,
                               const RlSolver& solver, const Rational& epsilon,
                               const DecideOptions& options) {
  if (delta <= Rational(0) || delta >= Rational(1)) {
    throw Error(ErrorCode::Precondition, "delta must lie in (0, 1), got " +
                                             to_compact_string(delta));
  }
  if (epsilon < Rational(0)) {
    throw Error(ErrorCode::Precondition, "epsilon must be nonnegative");
  }
  if (!(options.p0 > 0.0 && options.p0 < 1.0)) {
    throw Error(ErrorCode::Precondition, "p0 must lie in (0, 1)");
  }
  if (!solver) throw Error(ErrorCode::InvalidArgument, "no solver given");

  ReductionReport report;
  report.delta = delta;
  report.epsilon = epsilon;
  report.policy_class = options.policy_class;
  report.mode = options.policy_class == PolicyClass::Greedy ? ExtractMode::Round : options.mode;
  report.seed = options.seed;

  const MdpInstance instance = build_mdp(formula);
  const int occ = occurrence_bound(formula);
  auto& bounds = report.bounds;
  bounds.b = options.b.value_or(occ);
  bounds.clause_count = instance.clause_count();
  bounds.horizon = instance.horizon();
  bounds.p0 = options.p0;
  if (bounds.b < 1) throw Error(ErrorCode::Precondition, "b must be positive");
  bounds.t = mcdiarmid_calibration_t(bounds.horizon, bounds.b, bounds.clause_count, options.p0);
  bounds.tail = mcdiarmid_tail(bounds.t, bounds.horizon, bounds.b, bounds.clause_count);

  if (options.v_star) {
    report.v_star = options.v_star;
  } else if (instance.n() <= options.brute_force_cap) {
    report.v_star = is_zeta_satisfiable(formula, Rational(0), options.brute_force_cap).value;
  }

  if (options.policy_class == PolicyClass::Greedy) {
    const Rational limit = epsilon_bound_greedy(delta);
    if (epsilon > limit) {
      throw Error(ErrorCode::Precondition, "epsilon = " + to_compact_string(epsilon) +
                                               " exceeds delta/2 = " +
                                               to_compact_string(limit));
    }
    report.success_probability = 1.0 - options.solver_error;
  } else {
    if (occ > bounds.b) {
      throw Error(ErrorCode::Precondition, "a variable occurs in " + std::to_string(occ) +
                                               " clauses, more than b = " +
                                               std::to_string(bounds.b));
    }
    if (report.v_star) {
      const double eb = epsilon_bound_softmax(*report.v_star, bounds.horizon, bounds.b,
                                              bounds.clause_count, delta, options.p0);
      const double floor = softmax_horizon_floor(*report.v_star, delta);
      bounds.epsilon_bound = eb;
      bounds.horizon_floor = floor;
      bounds.softmax_checked = true;
      if (!(eb > 0.0)) {
        throw Error(ErrorCode::Precondition,
                    "softmax epsilon bound " + std::to_string(eb) +
                        " is not positive; the instance is too small for the concentration "
                        "argument (need more clauses relative to b*sqrt(H))");
      }
      if (to_double(epsilon) > eb) {
        throw Error(ErrorCode::Precondition, "epsilon = " + to_compact_string(epsilon) +
                                                 " exceeds the softmax bound " +
                                                 std::to_string(eb));
      }
      if (static_cast<double>(bounds.horizon) < floor) {
        throw Error(ErrorCode::Precondition, "horizon " + std::to_string(bounds.horizon) +
                                                 " is below the floor " + std::to_string(floor));
      }
    } else {
      bounds.note = "v* unknown: softmax epsilon bound and horizon floor not checked";
    }
    report.success_probability = (1.0 - options.solver_error) * (1.0 - options.p0);
  }

  GenerativeModel model(instance);
  try {
    report.params = solver(instance, model, epsilon, options.policy_class);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::Solver, std::string("RL solver failed: ") + e.what());
  }
  report.solver_queries = model.queries();
  report.params = PolicyParams::from(report.params.theta_prime);
  if (report.params.size() != instance.d_prime()) {
    throw Error(ErrorCode::Solver, "RL solver returned theta' of length " +
                                       std::to_string(report.params.size()) + ", expected " +
                                       std::to_string(instance.d_prime()));
  }

  const int n = instance.n();
  const State s1 = State::initial(n);
  if (options.policy_class == PolicyClass::Greedy) {
    report.extracted = extract_assignment_greedy(report.params, n);
    report.policy_value_exact = eval_v_greedy(instance, report.params, s1);
    report.policy_value = to_double(*report.policy_value_exact);
  } else {
    report.extracted = extract_assignment_softmax(report.params, n, report.mode, options.seed);
    report.policy_value = eval_v_softmax(instance, report.params, s1);
  }
  report.achieved_fraction = satisfied_fraction(formula, report.extracted);
  report.yes = report.achieved_fraction >= Rational(1) - delta;
  return report;
}

McDiarmidCheck empirical_mcdiarmid(const MdpInstance& instance, const PolicyParams& params,
                                   std::int64_t trials, double t, std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
  McDiarmidCheck out;
  out.trials = trials;
  out.t = t;
  out.b = std::max(1, occurrence_bound(instance.formula()));
  out.expected = eval_v_softmax(instance, params, State::initial(instance.n()));
  out.bound = mcdiarmid_tail(t, instance.horizon(), out.b, instance.clause_count());

  const CounterRng root(seed);
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < trials; ++i) {
    const auto tau =
        sample_trajectory(instance, params, root.split(static_cast<std::uint64_t>(i)).seed());
    const double r = to_double(reward(instance, tau.terminal));
    if (r - out.expected <= -t) ++hits;
  }
  out.empirical_tail = static_cast<double>(hits) / static_cast<double>(trials);
  out.slack = 3.0 * std::sqrt(out.bound * (1.0 - out.bound) / static_cast<double>(trials));
  out.pass = out.empirical_tail <= out.bound + out.slack;
  return out;
}

}  // namespace pqr
