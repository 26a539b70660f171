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

#include "pqr/cnf.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "pqr/error.hpp"

namespace pqr {

Clause Clause::make(std::vector<Literal> literals) {
  if (literals.empty()) throw Error(ErrorCode::Parse, "empty clause");
  if (literals.size() > 3) {
    throw Error(ErrorCode::Parse, "clause has " + std::to_string(literals.size()) +
                                      " literals (at most 3 allowed)");
  }
  for (const auto& lit : literals) {
    if (lit.variable < 1) {
      throw Error(ErrorCode::Parse, "variable index must be positive");
    }
  }
  std::sort(literals.begin(), literals.end());
  for (std::size_t i = 1; i < literals.size(); ++i) {
    if (literals[i] == literals[i - 1]) {
      throw Error(ErrorCode::Parse,
                  "duplicate literal " + std::to_string(literals[i].dimacs()));
    }
    if (literals[i].variable == literals[i - 1].variable) {
      throw Error(ErrorCode::Parse, "tautological clause on variable " +
                                        std::to_string(literals[i].variable));
    }
  }
  return Clause(std::move(literals));
}

int Clause::max_variable() const noexcept { return literals_.back().variable; }
int Clause::min_variable() const noexcept { return literals_.front().variable; }

std::uint64_t Clause::code() const noexcept {
  std::uint64_t code = literals_.size();
  for (const auto& lit : literals_) {
    code = (code << 20) | static_cast<std::uint64_t>(lit.key() + 1);
  }
  return code;
}

std::vector<int> Clause::dimacs() const {
  std::vector<int> out;
  out.reserve(literals_.size());
  for (const auto& lit : literals_) out.push_back(lit.dimacs());
  return out;
}

std::string Clause::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < literals_.size(); ++i) {
    if (i > 0) out += " v ";
    if (literals_[i].negated) out += '~';
    out += 'x' + std::to_string(literals_[i].variable);
  }
  return out + ")";
}

Formula::Formula(int n, std::vector<Clause> clauses) : n_(n), clauses_(std::move(clauses)) {
  if (n_ < 1) throw Error(ErrorCode::InvalidArgument, "formula needs at least one variable");
  if (clauses_.empty()) throw Error(ErrorCode::InvalidArgument, "formula has no clauses");
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    if (clauses_[i].size() == 0) {
      throw Error(ErrorCode::InvalidArgument, "clause " + std::to_string(i + 1) + " is empty");
    }
    if (clauses_[i].max_variable() > n_) {
      throw Error(ErrorCode::InvalidArgument,
                  "clause " + std::to_string(i + 1) + " uses variable " +
                      std::to_string(clauses_[i].max_variable()) + " > n = " +
                      std::to_string(n_));
    }
  }
}

std::string Formula::to_dimacs() const {
  std::ostringstream out;
  out << "p cnf " << n_ << ' ' << clauses_.size() << '\n';
  for (const auto& clause : clauses_) {
    for (int lit : clause.dimacs()) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

std::int64_t ClauseUniverse::block_size(int n, int clause_size) {
  const std::int64_t m = 2 * static_cast<std::int64_t>(n);
  const std::int64_t nn = n;
  switch (clause_size) {
    case 1: return m;
    case 2: return m * (m - 1) / 2 - nn;
    case 3: return m * (m - 1) * (m - 2) / 6 - 2 * nn * nn + 2 * nn;
    default: throw Error(ErrorCode::InvalidArgument, "clause size must be 1, 2 or 3");
  }
}

std::int64_t ClauseUniverse::total_size(int n) {
  return block_size(n, 1) + block_size(n, 2) + block_size(n, 3);
}

ClauseUniverse::ClauseUniverse(int n) : n_(n) {
  if (n < 1) throw Error(ErrorCode::Precondition, "universe needs n >= 1");
  const int keys = 2 * n;
  entries_.reserve(static_cast<std::size_t>(total_size(n)));
  pair_start_.assign(static_cast<std::size_t>(keys), 0);
  triple_start_.assign(static_cast<std::size_t>(keys) * static_cast<std::size_t>(keys), 0);
  auto push = [this](std::vector<Literal> lits) {
    entries_.push_back(Clause(std::move(lits)));
  };
  for (int a = 0; a < keys; ++a) push({Literal::from_key(a)});
  for (int a = 0; a < keys; ++a) {
    pair_start_[static_cast<std::size_t>(a)] = entries_.size();
    for (int b = a + 1; b < keys; ++b) {
      if (a / 2 == b / 2) continue;
      push({Literal::from_key(a), Literal::from_key(b)});
    }
  }
  for (int a = 0; a < keys; ++a) {
    for (int b = a + 1; b < keys; ++b) {
      if (a / 2 == b / 2) continue;
      triple_start_[static_cast<std::size_t>(a * keys + b)] = entries_.size();
      for (int c = b + 1; c < keys; ++c) {
        if (b / 2 == c / 2) continue;
        push({Literal::from_key(a), Literal::from_key(b), Literal::from_key(c)});
      }
    }
  }
}

// Keys after `prev` that skip prev's complement.
static std::size_t rank_after(int prev, int key) {
  return static_cast<std::size_t>(key - prev - 1 - (prev % 2 == 0 ? 1 : 0));
}

std::size_t ClauseUniverse::index_of(const Clause& clause) const {
  const auto lits = clause.literals();
  if (lits.empty() || clause.max_variable() > n_) {
    throw Error(ErrorCode::InvalidArgument,
                "clause " + clause.to_string() + " is outside the universe for n = " +
                    std::to_string(n_));
  }
  const int a = lits[0].key();
  if (lits.size() == 1) return static_cast<std::size_t>(a);
  if (lits.size() == 2) return pair_start_[static_cast<std::size_t>(a)] + rank_after(a, lits[1].key());
  const int b = lits[1].key();
  return triple_start_[static_cast<std::size_t>(a * 2 * n_ + b)] + rank_after(b, lits[2].key());
}

ClauseUniverse enumerate_universe(int n) { return ClauseUniverse(n); }

Formula parse_dimacs(std::string_view text) {
  int declared_vars = -1;
  long declared_clauses = -1;
  std::vector<Clause> clauses;
  std::vector<Literal> pending;
  int pending_line = 0;
  int line_no = 0;

  auto fail = [](int line, const std::string& what) -> Error {
    return Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what);
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? text.npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    std::istringstream in{std::string(line)};
    std::string token;
    if (!(in >> token)) continue;
    if (token == "c" || token[0] == 'c') continue;
    if (token == "%") break;  // SATLIB trailer
    if (token == "p") {
      if (declared_vars >= 0) throw fail(line_no, "duplicate problem line");
      std::string fmt;
      if (!(in >> fmt) || fmt != "cnf" || !(in >> declared_vars >> declared_clauses)) {
        throw fail(line_no, "malformed problem line, expected 'p cnf <vars> <clauses>'");
      }
      if (declared_vars < 1) throw fail(line_no, "variable count must be positive");
      if (declared_clauses < 0) throw fail(line_no, "clause count must be nonnegative");
      continue;
    }
    if (declared_vars < 0) throw fail(line_no, "clause before problem line");

    in.clear();
    in.str(std::string(line));
    long value = 0;
    while (in >> token) {
      try {
        std::size_t used = 0;
        value = std::stol(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw fail(line_no, "unexpected token '" + token + "'");
      }
      if (value == 0) {
        const int clause_index = static_cast<int>(clauses.size()) + 1;
        if (pending.empty()) throw fail(line_no, "empty clause " + std::to_string(clause_index));
        try {
          clauses.push_back(Clause::make(std::move(pending)));
        } catch (const Error& e) {
          throw fail(pending_line, std::string("clause ") + std::to_string(clause_index) + ": " +
                                       e.what());
        }
        pending.clear();
        continue;
      }
      const long var = value < 0 ? -value : value;
      if (var > declared_vars) {
        throw fail(line_no, "variable " + std::to_string(var) + " out of range 1.." +
                                std::to_string(declared_vars));
      }
      if (pending.empty()) pending_line = line_no;
      pending.push_back(Literal{static_cast<int>(var), value < 0});
    }
  }
  if (declared_vars < 0) throw fail(line_no, "missing problem line");
  if (!pending.empty()) throw fail(pending_line, "clause not terminated by 0");
  if (clauses.empty()) throw fail(line_no, "empty clause list");
  if (static_cast<long>(clauses.size()) != declared_clauses) {
    throw fail(line_no, "header declares " + std::to_string(declared_clauses) +
                            " clauses, found " + std::to_string(clauses.size()));
  }
  return Formula(declared_vars, std::move(clauses));
}

ClauseStatus eval_clause(const Clause& clause, std::span<const std::int8_t> values) {
  std::vector<Literal> open;
  for (const auto& lit : clause.literals()) {
    const auto idx = static_cast<std::size_t>(lit.variable - 1);
    const int value = idx < values.size() ? values[idx] : -1;
    if (value < 0) {
      open.push_back(lit);
    } else if (lit.holds(value)) {
      return {ClauseState::Satisfied, std::nullopt};
    }
  }
  if (open.empty()) return {ClauseState::Falsified, std::nullopt};
  return {ClauseState::Undecided, Clause::make(std::move(open))};
}

std::size_t satisfied_count(const Formula& formula, const Assignment& assignment) {
  if (assignment.size() != static_cast<std::size_t>(formula.variable_count())) {
    throw Error(ErrorCode::InvalidArgument, "assignment length " +
                                                std::to_string(assignment.size()) +
                                                " != n = " +
                                                std::to_string(formula.variable_count()));
  }
  std::size_t count = 0;
  for (const auto& clause : formula.clauses()) {
    for (const auto& lit : clause.literals()) {
      if (lit.holds(assignment[lit.variable - 1])) {
        ++count;
        break;
      }
    }
  }
  return count;
}

Rational satisfied_fraction(const Formula& formula, const Assignment& assignment) {
  return Rational(static_cast<std::int64_t>(satisfied_count(formula, assignment)),
                  static_cast<std::int64_t>(formula.clause_count()));
}

int occurrence_bound(const Formula& formula) {
  std::vector<int> counts(static_cast<std::size_t>(formula.variable_count()) + 1, 0);
  for (const auto& clause : formula.clauses()) {
    for (const auto& lit : clause.literals()) ++counts[lit.variable];
  }
  return *std::max_element(counts.begin(), counts.end());
}

ZetaResult is_zeta_satisfiable(const Formula& formula, const Rational& zeta, int cap) {
  const int n = formula.variable_count();
  if (n > cap || n > 62) {
    throw Error(ErrorCode::CapExceeded, "exhaustive search over 2^" + std::to_string(n) +
                                            " assignments exceeds cap n <= " +
                                            std::to_string(cap));
  }
  if (zeta < Rational(0) || zeta > Rational(1)) {
    throw Error(ErrorCode::InvalidArgument, "zeta must lie in [0, 1]");
  }

  // Gray-code walk: each step flips one variable and only touches the
  // clauses that mention it. Bit (n - v) of the code holds x_v, so x_1 is
  // the most significant bit.
  struct Occurrence {
    std::size_t clause;
    bool positive;
  };
  std::vector<std::vector<Occurrence>> occurrences(static_cast<std::size_t>(n) + 1);
  const auto& clauses = formula.clauses();
  std::vector<int> true_literals(clauses.size(), 0);
  std::int64_t satisfied = 0;
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    for (const auto& lit : clauses[c].literals()) {
      occurrences[lit.variable].push_back({c, !lit.negated});
      if (lit.negated) ++true_literals[c];  // all-zero start
    }
    if (true_literals[c] > 0) ++satisfied;
  }

  std::uint64_t code = 0;
  std::uint64_t best_code = 0;
  std::int64_t best = satisfied;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int bit = std::countr_zero(i);
    code ^= std::uint64_t{1} << bit;
    const bool now_true = (code >> bit) & 1U;
    const int var = n - bit;
    for (const auto& occ : occurrences[var]) {
      const bool was = true_literals[occ.clause] > 0;
      true_literals[occ.clause] += (occ.positive == now_true) ? 1 : -1;
      const bool is = true_literals[occ.clause] > 0;
      satisfied += static_cast<int>(is) - static_cast<int>(was);
    }
    if (satisfied > best || (satisfied == best && code > best_code)) {
      best = satisfied;
      best_code = code;
    }
  }

  ZetaResult result;
  result.best.resize(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) result.best[v - 1] = (best_code >> (n - v)) & 1U;
  result.value = Rational(best, static_cast<std::int64_t>(clauses.size()));
  result.satisfiable = result.value >= zeta;
  return result;
}

}  // namespace pqr
