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

/* C interface to the pqreduce library.
 *
 * Every fallible call returns a pqr_status. On failure the message for the
 * calling thread is available from pqr_last_error_message() until the next
 * call on that thread. Strings handed out through char** parameters are owned
 * by the caller and released with pqr_string_free(). Fractions are passed as
 * "p/q", integer, or finite decimal text.
 */
#ifndef PQR_PQR_H
#define PQR_PQR_H

#include <stddef.h>
#include <stdint.h>

#if defined(PQR_BUILDING_LIBRARY)
#define PQR_API __attribute__((visibility("default")))
#else
#define PQR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct pqr_formula pqr_formula;
typedef struct pqr_instance pqr_instance;

typedef enum pqr_status {
  PQR_OK = 0,
  PQR_ERR_PARSE = 1,
  PQR_ERR_INVALID_ARGUMENT = 2,
  PQR_ERR_PRECONDITION = 3,
  PQR_ERR_CAP_EXCEEDED = 4,
  PQR_ERR_TERMINAL_STATE = 5,
  PQR_ERR_SOLVER = 6,
  PQR_ERR_NULL_POINTER = 7,
  PQR_ERR_INTERNAL = 8
} pqr_status;

typedef enum pqr_policy_class { PQR_CLASS_GREEDY = 0, PQR_CLASS_SOFTMAX = 1 } pqr_policy_class;

typedef enum pqr_extract_mode { PQR_MODE_ROUND = 0, PQR_MODE_SAMPLE = 1 } pqr_extract_mode;

typedef enum pqr_solver_kind {
  PQR_SOLVER_EXACT = 0,
  PQR_SOLVER_EPSILON_ADVERSARY = 1 /* worst policy still within epsilon */
} pqr_solver_kind;

PQR_API const char* pqr_version(void);
PQR_API const char* pqr_status_string(pqr_status status);
PQR_API const char* pqr_last_error_message(void);
PQR_API void pqr_string_free(char* str);

/* Formulas */
PQR_API pqr_status pqr_formula_parse_dimacs(const char* text, pqr_formula** out);
PQR_API pqr_status pqr_formula_from_json(const char* json, pqr_formula** out);
PQR_API void pqr_formula_free(pqr_formula* formula);
PQR_API pqr_status pqr_formula_stats(const pqr_formula* formula, int* n, int64_t* clause_count,
                                     int* occurrence_bound);
PQR_API pqr_status pqr_formula_to_json(const pqr_formula* formula, char** out_json);
PQR_API pqr_status pqr_formula_to_dimacs(const pqr_formula* formula, char** out_text);
/* Brute force; out_json holds {"satisfiable","best","value"}. */
PQR_API pqr_status pqr_formula_zeta_check(const pqr_formula* formula, const char* zeta, int cap,
                                          char** out_json);

/* MDP instances */
typedef struct pqr_dims {
  int n;
  int horizon;
  int64_t d;
  int64_t d_prime;
  int64_t clause_count;
  double implied_states;
} pqr_dims;

PQR_API pqr_status pqr_instance_create(const pqr_formula* formula, pqr_instance** out);
PQR_API void pqr_instance_free(pqr_instance* instance);
PQR_API pqr_status pqr_instance_dims(const pqr_instance* instance, pqr_dims* out);
PQR_API pqr_status pqr_instance_describe(const pqr_instance* instance, int include_tables,
                                         char** out_json);

/* q and v at (state, action) with the linear recomputation <phi, theta_h>.
 * state has n entries in {-1,0,1}; state_len 0 means the initial state. */
PQR_API pqr_status pqr_eval(const pqr_instance* instance, pqr_policy_class cls,
                            const double* theta, size_t theta_len, const int* state,
                            size_t state_len, int action, char** out_json);

PQR_API pqr_status pqr_best_greedy(const pqr_instance* instance, int cap, char** out_json);

/* Writes theta_len entries of 0/1 to out_assignment. */
PQR_API pqr_status pqr_extract(const double* theta, size_t theta_len, pqr_policy_class cls,
                               pqr_extract_mode mode, uint64_t seed, int* out_assignment);

typedef struct pqr_decide_options {
  const char* delta;
  const char* epsilon;
  pqr_policy_class policy_class;
  pqr_extract_mode mode;
  uint64_t seed;
  double p0;
  int b;              /* 0: use the formula's occurrence bound */
  const char* v_star; /* NULL: brute force when n <= brute_force_cap */
  pqr_solver_kind solver;
  int brute_force_cap;
  double solver_error;
} pqr_decide_options;

PQR_API void pqr_decide_options_init(pqr_decide_options* options);
PQR_API pqr_status pqr_decide(const pqr_formula* formula, const pqr_decide_options* options,
                              int* out_yes, char** out_json);

/* Bounds */
PQR_API pqr_status pqr_bound_mcdiarmid(double t, int horizon, int b, int64_t clause_count,
                                       double* out);
PQR_API pqr_status pqr_bound_calibration_t(int horizon, int b, int64_t clause_count, double p0,
                                           double* out);
PQR_API pqr_status pqr_bound_epsilon_greedy(const char* delta, char** out_fraction);
PQR_API pqr_status pqr_bound_epsilon_softmax(const char* v_star, int horizon, int b,
                                             int64_t clause_count, const char* delta, double p0,
                                             double* out);
PQR_API pqr_status pqr_bound_horizon_floor(const char* v_star, const char* delta, double* out);

/* Verification suites */
PQR_API pqr_status pqr_verify_suite_names(char** out_json);
PQR_API pqr_status pqr_verify_run(const char* suite, const char* params_json, int* out_passed,
                                  char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* PQR_PQR_H */
