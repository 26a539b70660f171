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

#include "pqr/error.hpp"
#include "pqr/rational.hpp"
#include "pqr/rng.hpp"

#include <cctype>
#include <limits>

namespace pqr {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Precondition: return "precondition violated";
    case ErrorCode::CapExceeded: return "cap exceeded";
    case ErrorCode::TerminalState: return "terminal state";
    case ErrorCode::Solver: return "solver failure";
  }
  return "unknown error";
}

std::string to_fraction_string(const Rational& value) {
  return std::to_string(value.numerator()) + "/" +
         std::to_string(value.denominator());
}

std::string to_compact_string(const Rational& value) {
  if (value.denominator() == 1) return std::to_string(value.numerator());
  return to_fraction_string(value);
}

namespace {

std::int64_t parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                "malformed number '" + std::string(whole) + "'");
  }
  std::int64_t value = 0;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw Error(ErrorCode::InvalidArgument,
                  "malformed number '" + std::string(whole) + "'");
    }
    if (value > (std::numeric_limits<std::int64_t>::max() - 9) / 10) {
      throw Error(ErrorCode::InvalidArgument,
                  "number too large '" + std::string(whole) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational result;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = parse_integer(text.substr(0, slash), whole);
    const auto den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) {
      throw Error(ErrorCode::InvalidArgument,
                  "zero denominator in '" + std::string(whole) + "'");
    }
    result = Rational(num, den);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto int_part = text.substr(0, dot);
    const auto frac_part = text.substr(dot + 1);
    if (frac_part.size() > 17 || (int_part.empty() && frac_part.empty())) {
      throw Error(ErrorCode::InvalidArgument,
                  "malformed decimal '" + std::string(whole) + "'");
    }
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    const auto ip = int_part.empty() ? 0 : parse_integer(int_part, whole);
    const auto fp = frac_part.empty() ? 0 : parse_integer(frac_part, whole);
    result = Rational(ip) + Rational(fp, scale);
  } else {
    result = Rational(parse_integer(text, whole));
  }
  return negative ? -result : result;
}

double to_double(const Rational& value) {
  return static_cast<double>(value.numerator()) /
         static_cast<double>(value.denominator());
}

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::next_u64() noexcept {
  ++counter_;
  return mix64(seed_ + counter_ * 0x9E3779B97F4A7C15ULL);
}

double CounterRng::next_unit() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::next_below(std::uint64_t bound) noexcept {
  // Lemire-style rejection keeps the draw unbiased.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

double CounterRng::next_uniform(double lo, double hi) noexcept {
  return lo + (hi - lo) * next_unit();
}

CounterRng CounterRng::split(std::uint64_t stream) const noexcept {
  return CounterRng(mix64(seed_ ^ mix64(stream + 0xD1B54A32D192ED03ULL)));
}

}  // namespace pqr
