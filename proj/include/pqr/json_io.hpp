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

#include <string>

#include <nlohmann/json.hpp>

#include "pqr/cnf.hpp"
#include "pqr/features.hpp"
#include "pqr/mdp.hpp"
#include "pqr/policies.hpp"
#include "pqr/reduction.hpp"

namespace pqr {

/// Shortest round-tripping decimal text ("%.17g").
std::string decimal_string(double value);

nlohmann::json to_json(const Formula& formula);
Formula formula_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ClauseUniverse& universe);

nlohmann::json to_json(const State& state);
State state_from_json(const nlohmann::json& j);

nlohmann::json assignment_to_json(const Assignment& assignment);

nlohmann::json to_json(const PolicyParams& params);

/// Accepts {"theta_prime":[...]} or a bare array.
PolicyParams params_from_json(const nlohmann::json& j);

/// {"n","H","d","d_prime","formula"}; with tables, also the universe order
/// and every phi'(h,a).
nlohmann::json instance_descriptor(const MdpInstance& instance, bool include_tables);

// Vectors are {"scale_num":1,"scale_den":k,"entries":[...]} with b_h or the
// head at index 0 followed by the universe coordinates.
nlohmann::json to_json(const RealizabilityFeature& phi);
nlohmann::json to_json(const GreedyWeight& theta);
nlohmann::json to_json(const SoftmaxWeight& theta);

nlohmann::json to_json(const BestGreedy& best);
nlohmann::json to_json(const ZetaResult& result);
nlohmann::json to_json(const BoundDetails& bounds);
nlohmann::json to_json(const ReductionReport& report);
nlohmann::json to_json(const McDiarmidCheck& check);

}  // namespace pqr
