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
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace pqr {

/// Exact rational used on every greedy path. Denominators stay small
/// (a clause count or a short decimal), so 64-bit components suffice.
using Rational = boost::rational<std::int64_t>;

/// "num/den", always with an explicit denominator.
std::string to_fraction_string(const Rational& value);

/// "num" when the denominator is 1, otherwise "num/den".
std::string to_compact_string(const Rational& value);

/// Accepts "p/q", integers, and plain decimals. Decimals convert exactly
/// ("0.05" -> 1/20); exponent notation is rejected.
Rational parse_rational(std::string_view text);

double to_double(const Rational& value);

}  // namespace pqr
