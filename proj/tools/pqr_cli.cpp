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

// pqr: command-line front end over the C interface.
//
// Exit codes: 0 success (decide: Yes), 1 decide: No or a failed verify
// suite, 2 any error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pqr/pqr.h"

namespace {

using nlohmann::json;

constexpr int kExitError = 2;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CString {
  char* p = nullptr;
  ~CString() { pqr_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

void check(pqr_status status) {
  if (status != PQR_OK) {
    throw CliError(std::string(pqr_status_string(status)) + ": " + pqr_last_error_message());
  }
}

using FormulaPtr = std::unique_ptr<pqr_formula, decltype(&pqr_formula_free)>;
using InstancePtr = std::unique_ptr<pqr_instance, decltype(&pqr_instance_free)>;

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError("cannot open '" + path + "'");
    buf << in.rdbuf();
  }
  return buf.str();
}

FormulaPtr load_formula(const std::string& path) {
  pqr_formula* f = nullptr;
  const std::string text = read_input(path);
  const pqr_status status = pqr_formula_parse_dimacs(text.c_str(), &f);
  if (status != PQR_OK) {
    throw CliError(path + ": " + pqr_last_error_message());
  }
  return FormulaPtr(f, pqr_formula_free);
}

InstancePtr make_instance(const pqr_formula* f) {
  pqr_instance* m = nullptr;
  check(pqr_instance_create(f, &m));
  return InstancePtr(m, pqr_instance_free);
}

void emit(const json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw CliError("cannot write '" + out_path + "'");
  out << text;
}

double parse_double(const std::string& text, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw CliError("malformed " + what + " '" + text + "'");
  }
  return v;
}

// "1,-0.5,2", "+-+", or a JSON file holding {"theta_prime":[...]} or [...].
std::vector<double> parse_theta(const std::string& spec) {
  if (spec.empty()) throw CliError("empty theta'");
  if (spec.find_first_not_of("+-") == std::string::npos && spec.size() > 1) {
    std::vector<double> out;
    for (char c : spec) out.push_back(c == '+' ? 1.0 : -1.0);
    return out;
  }
  if (spec == "+") return {1.0};
  std::ifstream file(spec);
  if (file) {
    json j;
    try {
      j = json::parse(file);
      const json& arr = j.is_object() ? j.at("theta_prime") : j;
      return arr.get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw CliError("theta' file '" + spec + "': " + e.what());
    }
  }
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item, "theta' entry"));
  if (spec.back() == ',') throw CliError("malformed theta' '" + spec + "'");
  return out;
}

std::vector<int> parse_state(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item != "-1" && item != "0" && item != "1") {
      throw CliError("state entries must be -1, 0 or 1, got '" + item + "'");
    }
    out.push_back(std::stoi(item));
  }
  return out;
}

int parse_action(const std::string& text) {
  if (text == "1" || text == "true" || text == "True") return 1;
  if (text == "0" || text == "false" || text == "False") return 0;
  throw CliError("action must be 0/1 or false/true, got '" + text + "'");
}

// "3/1" -> "3" for the human summary; JSON keeps "num/den".
std::string compact(const json& value) {
  std::string s = value.is_string() ? value.get<std::string>() : value.dump();
  if (s.size() > 2 && s.compare(s.size() - 2, 2, "/1") == 0) s.resize(s.size() - 2);
  return s;
}

std::string assignment_text(const json& a) {
  std::string out;
  for (const auto& v : a) out += v.get<int>() ? '1' : '0';
  return out;
}

struct Options {
  std::string input = "-";
  std::string out;
  std::string delta = "1/10";
  std::string epsilon = "1/20";
  double p0 = 0.125;
  int b = 0;
  std::string policy_class = "greedy";
  std::string mode = "sample";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int n_max = 0;
  std::optional<double> tol;
  std::string theta;
  std::string state;
  std::string action = "0";
  std::string solver = "exact";
  std::string v_star;
  int n = 0;
  bool tables = true;
  // bound
  std::string kind;
  double t = 0.0;
  int horizon = 0;
  std::int64_t clause_count = 0;
  // verify
  std::vector<std::string> suites;
  std::string params;
};

pqr_policy_class class_of(const std::string& s) {
  return s == "softmax" ? PQR_CLASS_SOFTMAX : PQR_CLASS_GREEDY;
}

int cmd_reduce(const Options& o) {
  auto f = load_formula(o.input);
  auto m = make_instance(f.get());
  CString text;
  check(pqr_instance_describe(m.get(), o.tables ? 1 : 0, &text.p));
  pqr_dims dims{};
  check(pqr_instance_dims(m.get(), &dims));
  emit(json::parse(text.str()), o.out);
  std::cerr << "n = " << dims.n << ", |C| = " << dims.clause_count << ", H = " << dims.horizon
            << ", d = " << dims.d << ", d' = " << dims.d_prime << "\n";
  return 0;
}

int cmd_eval(const Options& o) {
  auto f = load_formula(o.input);
  auto m = make_instance(f.get());
  const auto theta = parse_theta(o.theta);
  const auto state = o.state.empty() ? std::vector<int>{} : parse_state(o.state);
  CString text;
  check(pqr_eval(m.get(), class_of(o.policy_class), theta.data(), theta.size(), state.data(),
                 state.size(), parse_action(o.action), &text.p));
  const json j = json::parse(text.str());
  emit(j, o.out);
  std::cerr << "q = " << compact(j["q"]) << ", dot = " << compact(j["dot"])
            << ", v = " << compact(j["v"]) << "\n";
  return 0;
}

int cmd_solve(const Options& o) {
  auto f = load_formula(o.input);
  auto m = make_instance(f.get());
  CString text;
  check(pqr_best_greedy(m.get(), o.n_max, &text.p));
  const json j = json::parse(text.str());
  emit(j, o.out);
  std::cerr << "value = " << compact(j["value"])
            << ", assignment = " << assignment_text(j["assignment"]) << "\n";
  return 0;
}

int cmd_extract(const Options& o) {
  const auto theta = parse_theta(o.theta);
  if (o.n > 0 && static_cast<std::size_t>(o.n) != theta.size()) {
    throw CliError("theta' has " + std::to_string(theta.size()) + " entries, --n is " +
                   std::to_string(o.n));
  }
  std::vector<int> assignment(theta.size());
  const auto mode = o.mode == "round" ? PQR_MODE_ROUND : PQR_MODE_SAMPLE;
  check(pqr_extract(theta.data(), theta.size(), class_of(o.policy_class), mode, o.seed,
                    assignment.data()));
  json j{{"class", o.policy_class},
         {"mode", o.policy_class == "greedy" ? "round" : o.mode},
         {"seed", o.seed},
         {"assignment", assignment}};
  emit(j, o.out);
  std::cerr << "assignment = " << assignment_text(j["assignment"]) << "\n";
  return 0;
}

int cmd_decide(const Options& o) {
  auto f = load_formula(o.input);
  pqr_decide_options opts;
  pqr_decide_options_init(&opts);
  opts.delta = o.delta.c_str();
  opts.epsilon = o.epsilon.c_str();
  opts.policy_class = class_of(o.policy_class);
  opts.mode = o.mode == "round" ? PQR_MODE_ROUND : PQR_MODE_SAMPLE;
  opts.seed = o.seed;
  opts.p0 = o.p0;
  opts.b = o.b;
  opts.v_star = o.v_star.empty() ? nullptr : o.v_star.c_str();
  opts.solver = o.solver == "adversary" ? PQR_SOLVER_EPSILON_ADVERSARY : PQR_SOLVER_EXACT;
  if (o.n_max > 0) opts.brute_force_cap = o.n_max;
  int yes = 0;
  CString text;
  check(pqr_decide(f.get(), &opts, &yes, &text.p));
  const json j = json::parse(text.str());
  emit(j, o.out);
  std::cerr << (yes ? "Yes" : "No") << "\n"
            << "assignment = " << assignment_text(j["extracted"]) << "\n"
            << "fraction = " << compact(j["achieved_fraction"]) << "\n";
  return yes ? 0 : 1;
}

int cmd_bound(const Options& o) {
  json j{{"kind", o.kind}};
  if (o.kind == "mcdiarmid") {
    double v = 0;
    check(pqr_bound_mcdiarmid(o.t, o.horizon, o.b, o.clause_count, &v));
    j.update(json{{"t", o.t}, {"H", o.horizon}, {"b", o.b}, {"C", o.clause_count}, {"value", v}});
  } else if (o.kind == "calibrate-t") {
    double v = 0;
    check(pqr_bound_calibration_t(o.horizon, o.b, o.clause_count, o.p0, &v));
    j.update(json{{"H", o.horizon}, {"b", o.b}, {"C", o.clause_count}, {"p0", o.p0}, {"value", v}});
  } else if (o.kind == "epsilon-greedy") {
    CString text;
    check(pqr_bound_epsilon_greedy(o.delta.c_str(), &text.p));
    j.update(json{{"delta", o.delta}, {"value", text.str()}});
  } else if (o.kind == "epsilon-softmax" || o.kind == "horizon-floor") {
    if (o.v_star.empty()) throw CliError("--v-star is required for " + o.kind);
    double v = 0;
    if (o.kind == "epsilon-softmax") {
      check(pqr_bound_epsilon_softmax(o.v_star.c_str(), o.horizon, o.b, o.clause_count,
                                      o.delta.c_str(), o.p0, &v));
      j.update(json{{"H", o.horizon}, {"b", o.b}, {"C", o.clause_count}, {"p0", o.p0}});
    } else {
      check(pqr_bound_horizon_floor(o.v_star.c_str(), o.delta.c_str(), &v));
    }
    j.update(json{{"v_star", o.v_star}, {"delta", o.delta}, {"value", v}});
  } else {
    throw CliError("unknown bound kind '" + o.kind + "'");
  }
  emit(j, o.out);
  std::cerr << o.kind << " = " << compact(j["value"]) << "\n";
  return 0;
}

int cmd_verify(const Options& o) {
  json params = json::object();
  if (!o.params.empty()) {
    const std::string text = o.params.front() == '{' ? o.params : read_input(o.params);
    try {
      params = json::parse(text);
    } catch (const json::exception& e) {
      throw CliError(std::string("--params: ") + e.what());
    }
  }
  if (o.n_max > 0) params["n_max"] = o.n_max;
  if (o.tol) params["tol"] = *o.tol;
  if (o.b > 0) params["b"] = o.b;
  if (o.seed_given) params["seed"] = o.seed;
  std::vector<std::string> suites = o.suites;
  if (suites.empty() || (suites.size() == 1 && suites[0] == "all")) {
    CString names;
    check(pqr_verify_suite_names(&names.p));
    suites = json::parse(names.str()).get<std::vector<std::string>>();
  }
  json results = json::array();
  bool all_passed = true;
  for (const auto& suite : suites) {
    int passed = 0;
    CString text;
    check(pqr_verify_run(suite.c_str(), params.dump().c_str(), &passed, &text.p));
    const json r = json::parse(text.str());
    std::cerr << suite << ": " << (passed ? "PASS" : "FAIL") << " (" << r["cases"] << " cases, "
              << r["failure_count"] << " failures)\n";
    all_passed = all_passed && passed;
    results.push_back(r);
  }
  emit(results.size() == 1 ? results[0] : results, o.out);
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-3SAT to linear-realizable MDP reduction toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pqr_version()));
  Options o;

  const std::vector<std::string> classes{"greedy", "softmax"};
  const std::vector<std::string> modes{"round", "sample"};
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out,-o", o.out, "Write JSON here instead of standard output");
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("cnf", o.input, "DIMACS CNF file, '-' for standard input")->required();
  };
  auto add_class = [&](CLI::App* sub) {
    sub->add_option("--class", o.policy_class, "Policy class")
        ->check(CLI::IsMember(classes))
        ->capture_default_str();
  };
  auto add_theta = [&](CLI::App* sub) {
    sub->add_option("--theta", o.theta,
                    "theta' as '1,-1,0.5', a sign pattern '+-+', or a JSON file")
        ->required();
  };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "Assignment extraction for softmax")
        ->check(CLI::IsMember(modes))
        ->capture_default_str();
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  };

  auto* reduce = app.add_subcommand("reduce", "Compile a CNF into the MDP instance descriptor");
  add_input(reduce);
  add_common(reduce);
  reduce->add_flag("!--no-tables", o.tables, "Omit the universe order and phi' tables");

  auto* eval = app.add_subcommand("eval", "Evaluate q and v at a state-action pair");
  add_input(eval);
  add_theta(eval);
  add_class(eval);
  eval->add_option("--state", o.state, "Comma-separated state in {-1,0,1}; default initial");
  eval->add_option("--action", o.action, "0/false or 1/true")->capture_default_str();
  add_common(eval);

  auto* solve = app.add_subcommand("solve", "Best greedy policy by exhaustive sweep");
  add_input(solve);
  solve->add_option("--n-max", o.n_max, "Brute-force cap on n (default 24)");
  add_common(solve);

  auto* extract = app.add_subcommand("extract", "Read an assignment off theta'");
  add_theta(extract);
  extract->add_option("--n", o.n, "Expected number of variables");
  add_class(extract);
  add_mode(extract);
  add_seed(extract);
  add_common(extract);

  auto* decide = app.add_subcommand("decide", "Decide delta-Max-3SAT through the RL reduction");
  add_input(decide);
  decide->add_option("--delta", o.delta, "Gap parameter in (0,1)")->capture_default_str();
  decide->add_option("--epsilon", o.epsilon, "Solver accuracy")->capture_default_str();
  decide->add_option("--p0", o.p0, "Concentration failure probability")->capture_default_str();
  decide->add_option("--b", o.b, "Occurrence bound (default: the formula's)");
  decide->add_option("--v-star", o.v_star, "Optimal value, skipping brute force");
  decide->add_option("--solver", o.solver, "Internal solver")
      ->check(CLI::IsMember({"exact", "adversary"}))
      ->capture_default_str();
  decide->add_option("--n-max", o.n_max, "Brute-force cap on n (default 24)");
  add_class(decide);
  add_mode(decide);
  add_seed(decide);
  add_common(decide);

  auto* bound = app.add_subcommand("bound", "Evaluate a concentration or accuracy bound");
  bound->add_option("kind", o.kind, "mcdiarmid, calibrate-t, epsilon-greedy, epsilon-softmax, horizon-floor")
      ->required()
      ->check(CLI::IsMember(
          {"mcdiarmid", "calibrate-t", "epsilon-greedy", "epsilon-softmax", "horizon-floor"}));
  bound->add_option("--t", o.t, "Deviation")->capture_default_str();
  bound->add_option("--H", o.horizon, "Horizon");
  bound->add_option("--b", o.b, "Occurrence bound");
  bound->add_option("--C", o.clause_count, "Clause count");
  bound->add_option("--p0", o.p0, "Failure probability")->capture_default_str();
  bound->add_option("--delta", o.delta, "Gap parameter")->capture_default_str();
  bound->add_option("--v-star", o.v_star, "Optimal value");
  add_common(bound);

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("suites", o.suites,
                     "greedy, telescoping, softmax, limit, scaling, roundtrip, mcdiarmid, or all");
  verify->add_option("--params", o.params, "Suite parameters as inline JSON or a JSON file");
  verify->add_option("--n-max", o.n_max, "Largest n");
  verify->add_option("--tol", o.tol, "Tolerance for floating-point suites");
  verify->add_option("--b", o.b, "Occurrence bound for generated formulas");
  add_seed(verify);
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*reduce) return cmd_reduce(o);
    if (*eval) return cmd_eval(o);
    if (*solve) return cmd_solve(o);
    if (*extract) return cmd_extract(o);
    if (*decide) return cmd_decide(o);
    if (*bound) return cmd_bound(o);
    if (*verify) {
      o.seed_given = verify->count("--seed") > 0;
      return cmd_verify(o);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
