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

#include <doctest.h>

#include <cmath>

#include "dioph/numerics.hpp"

using namespace dioph;

namespace {

bool encloses(const Interval& iv, double lo, double hi) { return iv.lo_double() <= lo && iv.hi_double() >= hi; }

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-1.25e-3") == Rational(-1, 800));
  CHECK(parse_rational("0.7") == Rational(7, 10));
  CHECK(to_string(Rational(3)) == "3/1");
  CHECK(to_short_string(Rational(3)) == "3");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
}

TEST_CASE("floor, ceil, powers and exact roots") {
  CHECK(floor(Rational(-7, 2)) == -4);
  CHECK(ceil(Rational(-7, 2)) == -3);
  CHECK(floor(Rational(6, 3)) == 2);
  CHECK(pow(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(exact_root(Rational(8, 27), 3) == Rational(2, 3));
  CHECK_FALSE(exact_root(Rational(2), 2).has_value());
  CHECK(log2_rational(Rational(1, 1024)) == doctest::Approx(-10.0));
}

TEST_CASE("interval arithmetic encloses the true result") {
  const Interval a = Interval::exact(Rational(1, 3));
  const Interval b = Interval::exact(Rational(2, 7));
  const Interval sum = a + b;
  CHECK(contains(sum, Rational(13, 21)));
  CHECK(contains(a * b, Rational(2, 21)));
  CHECK(contains(a / b, Rational(7, 6)));
  CHECK(contains(a - b, Rational(1, 21)));
  const Interval r = eval_sqrt(Interval::exact(2));
  CHECK(encloses(r, 1.4142135623730950, 1.4142135623730951));
  CHECK(encloses(eval_log(Interval::exact(2)), 0.6931471805599453, 0.6931471805599453));
  CHECK(contains(eval_power(Interval::exact(Rational(1, 8)), Rational(2, 3)), Rational(1, 4)));
}

TEST_CASE("certified comparisons refine or report undecided") {
  const Interval third = Interval::exact(Rational(1, 3));
  CHECK(cmp_certified(third, Interval::exact(Rational(1, 3))) == Order::kEqual);
  const Interval s2 = eval_sqrt(Interval::exact(2));
  CHECK(cmp_certified(s2, Interval::exact(Rational(141421356, 100000000))) == Order::kGreater);
  // sqrt(2)^2 vs 2 can never be separated.
  CHECK_THROWS_AS(cmp_certified(s2 * s2, Interval::exact(2), 512), Error);
  CHECK(certified_less(third, Interval::exact(Rational(1, 2))));
  CHECK_FALSE(certified_less(third, third));
  CHECK(certified_less_equal(third, third));
}

TEST_CASE("certified_floor") {
  CHECK(certified_floor(Interval::exact(Rational(7, 2))) == 3);
  CHECK(certified_floor(eval_log(Interval::exact(1000))) == 6);
}

TEST_CASE("interval text round trip is exact") {
  const Interval s2 = eval_sqrt(Interval::exact(2), 200);
  const Interval back = parse_interval(s2.to_string());
  CHECK(back.to_string() == s2.to_string());
  CHECK(mpfr_equal_p(back.lo().get(), s2.lo().get()));
  CHECK(parse_interval("5/7").exact_value() == Rational(5, 7));
  CHECK_THROWS_AS(parse_interval("0.1..0.2"), Error);
}

TEST_CASE("hull, min and max") {
  const Interval a = Interval::exact(1), b = Interval::exact(3);
  const Interval h = hull(a, b);
  CHECK(h.lo_double() <= 1.0);
  CHECK(h.hi_double() >= 3.0);
  CHECK(interval_max(a, b).lo_double() >= 3.0);
  CHECK(interval_min(a, b).hi_double() <= 1.0);
}
