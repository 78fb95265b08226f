// Copyright 2026 The dioph Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Approximation functions psi and their hypothesis checks.

#ifndef DIOPH_PSI_HPP_
#define DIOPH_PSI_HPP_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "dioph/numerics.hpp"

namespace dioph {

// c * x^-tau
struct PowerLaw {
  Rational c;
  Rational tau;
};

// c * x^-tau * log(x + 2)^-beta. The shift keeps the logarithm positive on
// all of (0, inf).
struct PowerLog {
  Rational c;
  Rational tau;
  Rational beta;
};

// Right-continuous steps: psi(x) = value at the largest key <= x. Undefined
// (error) below the first key and beyond the last.
struct Table {
  std::map<long long, Rational> values;
  std::string source;
};

// c * base^-x, base > 1. Decays faster than every power.
struct Exponential {
  Rational c;
  Rational base;
};

class PsiSpec {
 public:
  using Family = std::variant<PowerLaw, PowerLog, Table, Exponential>;

  explicit PsiSpec(Family family);
  static PsiSpec power(const Rational& c, const Rational& tau);
  static PsiSpec power_log(const Rational& c, const Rational& tau, const Rational& beta);

  const Family& family() const { return family_; }
  bool closed_form() const { return !std::holds_alternative<Table>(family_); }
  // Canonical grammar string, e.g. "pow:c=1,tau=3".
  const std::string& label() const { return label_; }

  Interval evaluate(const Rational& x, int bits = kDefaultPrecision) const;
  Interval evaluate(const BigInt& q, int bits = kDefaultPrecision) const {
    return evaluate(Rational(q), bits);
  }
  Interval evaluate(long q, int bits = kDefaultPrecision) const {
    return evaluate(Rational(q), bits);
  }
  // psi(x)^s, exact whenever the value is rational.
  Interval evaluate_pow(const Rational& x, const Rational& s, int bits = kDefaultPrecision) const;

 private:
  Family family_;
  std::string label_;
};

// Grammar: pow:c=<rat>,tau=<rat> | powlog:c=<rat>,tau=<rat>,beta=<rat> |
// exp:c=<rat>,base=<rat> | table:<path> (lines "q value", '#' comments).
PsiSpec parse_psi(std::string_view text);
Table load_table(const std::string& path);

struct LambdaInfo {
  std::optional<Rational> exact;  // closed forms
  bool infinite = false;          // super-polynomial decay
  double estimate = 0.0;          // numeric value for tables
  bool estimate_only = false;
};

LambdaInfo lambda_of(const PsiSpec& psi, int sample_budget = 64);

enum class VerdictKind { kProvedSymbolically, kCheckedOnRange, kViolated };

struct Verdict {
  VerdictKind kind = VerdictKind::kProvedSymbolically;
  long long range_hi = 0;  // kCheckedOnRange: checked on [1, range_hi]
  BigInt witness = 0;      // kViolated: a q where the property fails
  bool holds() const { return kind != VerdictKind::kViolated; }
};

std::string to_string(const Verdict& v);

struct HypothesisReport {
  Verdict non_increasing;
  Verdict little_o_x2;
  Verdict x2_psi_s_non_increasing;
  // Smallest Q0 with q^2 psi(q) < 1/1000 for all q >= Q0.
  std::optional<BigInt> q0;
  // Same with psi^s in place of psi.
  std::optional<BigInt> q0_s;
};

HypothesisReport check_hypotheses(const PsiSpec& psi, const Rational& s,
                                  long long scan_limit = 100000);

// Smallest integer q >= lo with pred(q), for pred monotone in q. Throws
// kBudgetExceeded when no such q <= limit exists.
BigInt first_true(const BigInt& lo, const std::function<bool(const BigInt&)>& pred,
                  const BigInt& limit);

}  // namespace dioph

#endif  // DIOPH_PSI_HPP_
