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

// Exact rationals (GMP) and outward-rounded interval enclosures (MPFR).
//
// Every comparison that a construction relies on goes through
// cmp_certified(), which either proves an ordering or throws
// Error(ErrorKind::kUndecided). Intervals remember how they were produced so
// that a comparison can re-evaluate them at a higher precision.

#ifndef DIOPH_NUMERICS_HPP_
#define DIOPH_NUMERICS_HPP_

#include <mpfr.h>
#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dioph {

using BigInt = mpz_class;
using Rational = mpq_class;

enum class ErrorKind {
  kInvalidInput,
  kUsage,
  kUndecided,
  kHypothesisViolation,
  kCardinalityShortfall,
  kNoWindow,
  kBudgetExceeded,
  kCoverageShortfall,
  kCertification,
  kFormat,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline constexpr int kDefaultPrecision = 128;
inline constexpr int kDefaultPrecisionCap = 4096;

// Precision cap for certified comparisons. Reads DIOPH_PRECISION_CAP once;
// falls back to kDefaultPrecisionCap.
int precision_cap();

// ---------------------------------------------------------------------------
// Rationals

// num/den in lowest terms with positive denominator.
Rational reduce(const BigInt& num, const BigInt& den);
Rational reduce(std::int64_t num, std::int64_t den);

// "num/den", always with an explicit denominator.
std::string to_string(const Rational& r);
// Like to_string but drops a unit denominator ("3" rather than "3/1").
std::string to_short_string(const Rational& r);
// Accepts "p/q", "p", and finite decimals ("0.7", "-1.25e-3").
Rational parse_rational(std::string_view text);

std::string to_string(const BigInt& z);

BigInt floor(const Rational& r);
BigInt ceil(const Rational& r);
Rational pow(const Rational& base, long exponent);
// Exact b-th root when it exists.
std::optional<Rational> exact_root(const Rational& x, unsigned long b);
BigInt pow(const BigInt& base, unsigned long exponent);
// log2 of a positive rational in double precision, without overflow.
double log2_rational(const Rational& r);

// ---------------------------------------------------------------------------
// MPFR value with RAII.

class Mpfr {
 public:
  explicit Mpfr(int bits = kDefaultPrecision);
  Mpfr(const Mpfr& other);
  Mpfr(Mpfr&& other) noexcept;
  Mpfr& operator=(const Mpfr& other);
  Mpfr& operator=(Mpfr&& other) noexcept;
  ~Mpfr();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  int bits() const { return static_cast<int>(mpfr_get_prec(value_)); }

 private:
  mpfr_t value_;
};

// ---------------------------------------------------------------------------
// Interval enclosures.

class Interval;
using IntervalSource = std::function<Interval(int bits)>;

class Interval {
 public:
  Interval();  // [0,0], exact.

  static Interval exact(const Rational& value, int bits = kDefaultPrecision);
  static Interval exact(long value, int bits = kDefaultPrecision);
  // Encloses an arbitrary [lo, hi] without an exact value or refinement route.
  static Interval from_bounds(const Mpfr& lo, const Mpfr& hi);
  // Builds from a refinement routine evaluated at `bits`.
  static Interval from_source(IntervalSource source, int bits);

  const Mpfr& lo() const { return lo_; }
  const Mpfr& hi() const { return hi_; }
  int bits() const { return bits_; }
  bool is_exact() const { return exact_.has_value(); }
  const std::optional<Rational>& exact_value() const { return exact_; }
  bool refinable() const { return is_exact() || source_ != nullptr; }

  // Re-evaluates at `bits` when possible; otherwise returns *this.
  Interval refine(int bits) const;

  double lo_double() const;  // rounded down
  double hi_double() const;  // rounded up
  double mid_double() const;

  // Midpoint as an exact rational (dyadic).
  Rational mid_rational() const;
  Rational lo_rational() const;
  Rational hi_rational() const;

  // "lo..hi@bits", or "num/den" for exact values.
  std::string to_string() const;

 private:
  friend Interval attach_source(Interval, IntervalSource);
  Mpfr lo_;
  Mpfr hi_;
  int bits_ = kDefaultPrecision;
  std::optional<Rational> exact_;
  std::shared_ptr<const IntervalSource> source_;
};

// Parses "lo..hi@bits" or a rational.
Interval parse_interval(std::string_view text);

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);

Interval eval_power(const Interval& x, const Rational& exponent,
                    int bits = kDefaultPrecision);
Interval eval_log(const Interval& x, int bits = kDefaultPrecision);
Interval eval_sqrt(const Interval& x, int bits = kDefaultPrecision);
Interval eval_exp(const Interval& x, int bits = kDefaultPrecision);
// Interval hull.
Interval hull(const Interval& a, const Interval& b);
Interval interval_min(const Interval& a, const Interval& b);
Interval interval_max(const Interval& a, const Interval& b);

bool contains(const Interval& iv, const Rational& value);

enum class Order { kLess, kEqual, kGreater };
const char* to_string(Order order);

// Proves an ordering, refining up to max_bits. Equal only for equal exact
// values. Throws kUndecided when the budget is exhausted.
Order cmp_certified(const Interval& a, const Interval& b,
                    int max_bits = precision_cap());

// Certified strict predicates. Throw kUndecided like cmp_certified, except
// that proven equality answers false.
bool certified_less(const Interval& a, const Interval& b,
                    int max_bits = precision_cap());
bool certified_less_equal(const Interval& a, const Interval& b,
                          int max_bits = precision_cap());

// Largest integer <= v, certified.
BigInt certified_floor(const Interval& v);

}  // namespace dioph

#endif  // DIOPH_NUMERICS_HPP_
