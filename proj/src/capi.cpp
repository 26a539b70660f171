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

#include "pqr/pqr.h"

#include <cstring>
#include <new>
#include <string>

#include "pqr/error.hpp"
#include "pqr/json_io.hpp"
#include "pqr/reduction.hpp"
#include "pqr/verify.hpp"

struct pqr_formula {
  pqr::Formula value;
};

struct pqr_instance {
  pqr::MdpInstance value;
};

namespace {

using nlohmann::json;

thread_local std::string g_last_error;

pqr_status set_error(pqr_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename F>
pqr_status guarded(F&& fn) {
  g_last_error.clear();
  try {
    fn();
    return PQR_OK;
  } catch (const pqr::Error& e) {
    return set_error(static_cast<pqr_status>(e.code()), e.what());
  } catch (const json::exception& e) {
    return set_error(PQR_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(PQR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(PQR_ERR_INTERNAL, e.what());
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) throw pqr::Error(pqr::ErrorCode::InvalidArgument, std::string(name) + " is null");
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

pqr::Rational rational_arg(const char* text, const char* name) {
  require(text, name);
  return pqr::parse_rational(text);
}

pqr::PolicyParams params_arg(const double* theta, size_t len) {
  if (len > 0) require(theta, "theta");
  return pqr::PolicyParams::from(std::vector<double>(theta, theta + len));
}

pqr::PolicyClass class_arg(pqr_policy_class cls) {
  switch (cls) {
    case PQR_CLASS_GREEDY: return pqr::PolicyClass::Greedy;
    case PQR_CLASS_SOFTMAX: return pqr::PolicyClass::Softmax;
  }
  throw pqr::Error(pqr::ErrorCode::InvalidArgument, "unknown policy class");
}

pqr::ExtractMode mode_arg(pqr_extract_mode mode) {
  switch (mode) {
    case PQR_MODE_ROUND: return pqr::ExtractMode::Round;
    case PQR_MODE_SAMPLE: return pqr::ExtractMode::Sample;
  }
  throw pqr::Error(pqr::ErrorCode::InvalidArgument, "unknown extract mode");
}

}  // namespace

#define PQR_CHECK_OUT(p)                                                \
  do {                                                                  \
    if ((p) == nullptr) {                                               \
      return set_error(PQR_ERR_NULL_POINTER, #p " is null");            \
    }                                                                   \
  } while (0)

extern "C" {

const char* pqr_version(void) { return "0.1.0"; }

const char* pqr_status_string(pqr_status status) {
  switch (status) {
    case PQR_OK: return "ok";
    case PQR_ERR_PARSE: return "parse error";
    case PQR_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PQR_ERR_PRECONDITION: return "precondition violated";
    case PQR_ERR_CAP_EXCEEDED: return "cap exceeded";
    case PQR_ERR_TERMINAL_STATE: return "terminal state";
    case PQR_ERR_SOLVER: return "solver failure";
    case PQR_ERR_NULL_POINTER: return "null pointer";
    case PQR_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* pqr_last_error_message(void) { return g_last_error.c_str(); }

void pqr_string_free(char* str) { delete[] str; }

pqr_status pqr_formula_parse_dimacs(const char* text, pqr_formula** out) {
  PQR_CHECK_OUT(out);
  *out = nullptr;
  return guarded([&] {
    require(text, "text");
    *out = new pqr_formula{pqr::parse_dimacs(text)};
  });
}

pqr_status pqr_formula_from_json(const char* text, pqr_formula** out) {
  PQR_CHECK_OUT(out);
  *out = nullptr;
  return guarded([&] {
    require(text, "json");
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw pqr::Error(pqr::ErrorCode::Parse, e.what());
    }
    *out = new pqr_formula{pqr::formula_from_json(j)};
  });
}

void pqr_formula_free(pqr_formula* formula) { delete formula; }

pqr_status pqr_formula_stats(const pqr_formula* formula, int* n, int64_t* clause_count,
                             int* occurrence_bound) {
  PQR_CHECK_OUT(formula);
  return guarded([&] {
    if (n) *n = formula->value.variable_count();
    if (clause_count) *clause_count = static_cast<int64_t>(formula->value.clause_count());
    if (occurrence_bound) *occurrence_bound = pqr::occurrence_bound(formula->value);
  });
}

pqr_status pqr_formula_to_json(const pqr_formula* formula, char** out_json) {
  PQR_CHECK_OUT(formula);
  PQR_CHECK_OUT(out_json);
  return guarded([&] { *out_json = dup_string(pqr::to_json(formula->value).dump()); });
}

pqr_status pqr_formula_to_dimacs(const pqr_formula* formula, char** out_text) {
  PQR_CHECK_OUT(formula);
  PQR_CHECK_OUT(out_text);
  return guarded([&] { *out_text = dup_string(formula->value.to_dimacs()); });
}

pqr_status pqr_formula_zeta_check(const pqr_formula* formula, const char* zeta, int cap,
                                  char** out_json) {
  PQR_CHECK_OUT(formula);
  PQR_CHECK_OUT(out_json);
  return guarded([&] {
    const auto result = pqr::is_zeta_satisfiable(formula->value, rational_arg(zeta, "zeta"),
                                                 cap > 0 ? cap : pqr::kDefaultBruteForceCap);
    *out_json = dup_string(pqr::to_json(result).dump());
  });
}

pqr_status pqr_instance_create(const pqr_formula* formula, pqr_instance** out) {
  PQR_CHECK_OUT(out);
  *out = nullptr;
  PQR_CHECK_OUT(formula);
  return guarded([&] { *out = new pqr_instance{pqr::build_mdp(formula->value)}; });
}

void pqr_instance_free(pqr_instance* instance) { delete instance; }

pqr_status pqr_instance_dims(const pqr_instance* instance, pqr_dims* out) {
  PQR_CHECK_OUT(instance);
  PQR_CHECK_OUT(out);
  const auto& m = instance->value;
  out->n = m.n();
  out->horizon = m.horizon();
  out->d = static_cast<int64_t>(m.d());
  out->d_prime = static_cast<int64_t>(m.d_prime());
  out->clause_count = m.clause_count();
  out->implied_states = m.implied_state_count();
  return PQR_OK;
}

pqr_status pqr_instance_describe(const pqr_instance* instance, int include_tables,
                                 char** out_json) {
  PQR_CHECK_OUT(instance);
  PQR_CHECK_OUT(out_json);
  return guarded([&] {
    *out_json = dup_string(pqr::instance_descriptor(instance->value, include_tables != 0).dump());
  });
}

pqr_status pqr_eval(const pqr_instance* instance, pqr_policy_class cls, const double* theta,
                    size_t theta_len, const int* state, size_t state_len, int action,
                    char** out_json) {
  PQR_CHECK_OUT(instance);
  PQR_CHECK_OUT(out_json);
  return guarded([&] {
    const auto& m = instance->value;
    const auto params = params_arg(theta, theta_len);
    pqr::State s = pqr::State::initial(m.n());
    if (state_len > 0) {
      require(state, "state");
      std::vector<std::int8_t> values;
      for (size_t i = 0; i < state_len; ++i) {
        if (state[i] < -1 || state[i] > 1) {
          throw pqr::Error(pqr::ErrorCode::InvalidArgument, "state entries must be -1, 0 or 1");
        }
        values.push_back(static_cast<std::int8_t>(state[i]));
      }
      s = pqr::State::from_values(std::move(values));
    }
    const pqr::Action a = pqr::action_from_int(action);
    const auto phi = pqr::realizability_feature(m, s, a);
    const int h = s.stage();
    json out{{"class", pqr::to_string(class_arg(cls))},
             {"state", pqr::to_json(s)},
             {"action", action},
             {"stage", h},
             {"theta_prime", params.theta_prime},
             {"phi", pqr::to_json(phi)}};
    if (class_arg(cls) == pqr::PolicyClass::Greedy) {
      const auto theta_h = pqr::greedy_weight(m, params, h);
      out["q"] = pqr::to_fraction_string(pqr::eval_q_greedy(m, params, s, a));
      out["v"] = pqr::to_fraction_string(pqr::eval_v_greedy(m, params, s));
      out["dot"] = pqr::to_fraction_string(pqr::dot(phi, theta_h));
      out["theta_h"] = pqr::to_json(theta_h);
    } else {
      const auto theta_h = pqr::softmax_weight(m, params, h);
      out["q"] = pqr::decimal_string(pqr::eval_q_softmax(m, params, s, a));
      out["v"] = pqr::decimal_string(pqr::eval_v_softmax(m, params, s));
      out["dot"] = pqr::decimal_string(pqr::dot(phi, theta_h));
      out["theta_h"] = pqr::to_json(theta_h);
    }
    *out_json = dup_string(out.dump());
  });
}

pqr_status pqr_best_greedy(const pqr_instance* instance, int cap, char** out_json) {
  PQR_CHECK_OUT(instance);
  PQR_CHECK_OUT(out_json);
  return guarded([&] {
    const auto best =
        pqr::best_greedy(instance->value, cap > 0 ? cap : pqr::kDefaultBruteForceCap);
    *out_json = dup_string(pqr::to_json(best).dump());
  });
}

pqr_status pqr_extract(const double* theta, size_t theta_len, pqr_policy_class cls,
                       pqr_extract_mode mode, uint64_t seed, int* out_assignment) {
  if (theta_len > 0) PQR_CHECK_OUT(out_assignment);
  return guarded([&] {
    const auto params = params_arg(theta, theta_len);
    const int n = static_cast<int>(theta_len);
    const auto assignment = class_arg(cls) == pqr::PolicyClass::Greedy
                                ? pqr::extract_assignment_greedy(params, n)
                                : pqr::extract_assignment_softmax(params, n, mode_arg(mode), seed);
    for (size_t i = 0; i < assignment.size(); ++i) out_assignment[i] = assignment[i];
  });
}

void pqr_decide_options_init(pqr_decide_options* options) {
  if (options == nullptr) return;
  options->delta = "1/10";
  options->epsilon = "1/20";
  options->policy_class = PQR_CLASS_GREEDY;
  options->mode = PQR_MODE_SAMPLE;
  options->seed = 0;
  options->p0 = 0.125;
  options->b = 0;
  options->v_star = nullptr;
  options->solver = PQR_SOLVER_EXACT;
  options->brute_force_cap = pqr::kDefaultBruteForceCap;
  options->solver_error = 0.1;
}

pqr_status pqr_decide(const pqr_formula* formula, const pqr_decide_options* options,
                      int* out_yes, char** out_json) {
  PQR_CHECK_OUT(formula);
  PQR_CHECK_OUT(options);
  return guarded([&] {
    pqr::DecideOptions opts;
    opts.policy_class = class_arg(options->policy_class);
    opts.mode = mode_arg(options->mode);
    opts.seed = options->seed;
    opts.p0 = options->p0;
    if (options->b < 0) throw pqr::Error(pqr::ErrorCode::InvalidArgument, "b must be positive");
    if (options->b > 0) opts.b = options->b;
    if (options->v_star != nullptr) opts.v_star = pqr::parse_rational(options->v_star);
    opts.brute_force_cap =
        options->brute_force_cap > 0 ? options->brute_force_cap : pqr::kDefaultBruteForceCap;
    opts.solver_error = options->solver_error;
    pqr::RlSolver solver;
    switch (options->solver) {
      case PQR_SOLVER_EXACT: solver = pqr::exact_solver(opts.brute_force_cap); break;
      case PQR_SOLVER_EPSILON_ADVERSARY:
        solver = pqr::epsilon_adversary_solver(opts.brute_force_cap);
        break;
      default: throw pqr::Error(pqr::ErrorCode::InvalidArgument, "unknown solver kind");
    }
    const auto report =
        pqr::decide_max3sat(formula->value, rational_arg(options->delta, "delta"), solver,
                            rational_arg(options->epsilon, "epsilon"), opts);
    if (out_yes) *out_yes = report.yes ? 1 : 0;
    if (out_json) *out_json = dup_string(pqr::to_json(report).dump());
  });
}

pqr_status pqr_bound_mcdiarmid(double t, int horizon, int b, int64_t clause_count, double* out) {
  PQR_CHECK_OUT(out);
  return guarded([&] { *out = pqr::mcdiarmid_tail(t, horizon, b, clause_count); });
}

pqr_status pqr_bound_calibration_t(int horizon, int b, int64_t clause_count, double p0,
                                   double* out) {
  PQR_CHECK_OUT(out);
  return guarded([&] { *out = pqr::mcdiarmid_calibration_t(horizon, b, clause_count, p0); });
}

pqr_status pqr_bound_epsilon_greedy(const char* delta, char** out_fraction) {
  PQR_CHECK_OUT(out_fraction);
  return guarded([&] {
    *out_fraction =
        dup_string(pqr::to_fraction_string(pqr::epsilon_bound_greedy(rational_arg(delta, "delta"))));
  });
}

pqr_status pqr_bound_epsilon_softmax(const char* v_star, int horizon, int b, int64_t clause_count,
                                     const char* delta, double p0, double* out) {
  PQR_CHECK_OUT(out);
  return guarded([&] {
    *out = pqr::epsilon_bound_softmax(rational_arg(v_star, "v_star"), horizon, b, clause_count,
                                      rational_arg(delta, "delta"), p0);
  });
}

pqr_status pqr_bound_horizon_floor(const char* v_star, const char* delta, double* out) {
  PQR_CHECK_OUT(out);
  return guarded([&] {
    *out = pqr::softmax_horizon_floor(rational_arg(v_star, "v_star"), rational_arg(delta, "delta"));
  });
}

pqr_status pqr_verify_suite_names(char** out_json) {
  PQR_CHECK_OUT(out_json);
  return guarded([&] { *out_json = dup_string(json(pqr::suite_names()).dump()); });
}

pqr_status pqr_verify_run(const char* suite, const char* params_json, int* out_passed,
                          char** out_json) {
  return guarded([&] {
    require(suite, "suite");
    json params = json::object();
    if (params_json != nullptr && *params_json != '\0') {
      try {
        params = json::parse(params_json);
      } catch (const json::exception& e) {
        throw pqr::Error(pqr::ErrorCode::Parse, std::string("suite params: ") + e.what());
      }
    }
    const auto result = pqr::run_suite(suite, params);
    if (out_passed) *out_passed = result.passed() ? 1 : 0;
    if (out_json) *out_json = dup_string(result.to_json().dump());
  });
}

}  // extern "C"
