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

// Real inputs, continued fractions, Dirichlet approximation and Farey
// enumeration.

#ifndef DIOPH_APPROX_HPP_
#define DIOPH_APPROX_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dioph/numerics.hpp"

namespace dioph {

// (a + b*sqrt(d)) / c with d > 0 not a square and c != 0.
struct QuadraticSurd {
  BigInt a, b, c, d;
};

// [a0; prefix..., (period...)] with every term after a0 at least 1. An empty
// period makes the expansion finite.
struct PeriodicCF {
  BigInt a0;
  std::vector<BigInt> prefix;
  std::vector<BigInt> period;
};

class RealSpec {
 public:
  using Variant = std::variant<Rational, QuadraticSurd, PeriodicCF>;

  explicit RealSpec(Variant v);
  static RealSpec rational(const Rational& r) { return RealSpec(r); }
  // (sqrt(5) - 1) / 2
  static RealSpec golden_conjugate();

  const Variant& variant() const { return v_; }
  const std::string& label() const { return label_; }

  bool is_rational() const { return rational_.has_value(); }
  const std::optional<Rational>& as_rational() const { return rational_; }

  // Exact sign of x - r.
  int compare(const Rational& r) const;
  Interval enclose(int bits = kDefaultPrecision) const;
  // |x - r|, exact when x is rational.
  Interval abs_diff(const Rational& r, int bits = kDefaultPrecision) const;

  // Partial quotients, at most max_terms of them. Finite for rationals.
  std::vector<BigInt> partial_quotients(std::size_t max_terms) const;

 private:
  Variant v_;
  std::string label_;
  std::optional<Rational> rational_;
  // Normal form (P + sqrt(D)) / Q with Q | D - P^2, for irrationals.
  BigInt P_, D_, Q_;
};

// rat:p/q | surd:a,b,c,d | cf:periodic:[a0;a1,...,(p1,...)]
RealSpec parse_real(std::string_view text);

struct Convergent {
  BigInt p;
  BigInt q;
  long index = 0;
};

struct ConvergentList {
  std::vector<Convergent> items;
  // The expansion ended (x rational) before any denominator exceeded the limit.
  bool exhausted = false;
};

ConvergentList cf_convergents(const RealSpec& x, const BigInt& q_limit);

// p/q with 1 <= q <= Q and |x - p/q| < 1/(qQ), checked exactly.
Rational dirichlet(const RealSpec& x, const BigInt& Q);

struct Fraction {
  std::int64_t p;
  std::int64_t q;
  Rational value() const { return reduce(p, q); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct FareyWindow {
  Rational lo;  // open interval (lo, hi)
  Rational hi;
  std::int64_t q_min = 1;
  std::int64_t q_max = 1;
};

// Ascending stream of reduced p/q in the window, walking consecutive Farey
// neighbours of order q_max.
class FareyStream {
 public:
  explicit FareyStream(const FareyWindow& w);
  // Starts at the first member >= from (or > from when !inclusive).
  FareyStream(const FareyWindow& w, const Rational& from, bool inclusive);

  std::optional<Fraction> next();

 private:
  void start(const Rational& from, bool inclusive);
  std::int64_t n_;
  std::int64_t q_min_;
  Rational hi_;
  bool hi_small_ = false;
  std::int64_t hi_num_ = 0, hi_den_ = 1;
  std::int64_t a_ = 0, b_ = 1, c_ = 0, d_ = 1;  // current pair a/b < c/d
  bool done_ = false;
};

std::vector<Fraction> farey_enumerate(const FareyWindow& w);

// Smallest member of F_n strictly greater than x (or >= x when inclusive).
Fraction farey_successor(const Rational& x, std::int64_t n, bool inclusive);

}  // namespace dioph

#endif  // DIOPH_APPROX_HPP_
