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

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cstdio>
#include <fstream>

#include "dioph/psi.hpp"

using namespace dioph;
using Big = boost::multiprecision::cpp_bin_float_50;

TEST_CASE("evaluate: closed forms") {
  const PsiSpec p3 = parse_psi("pow:c=1,tau=3");
  CHECK(p3.evaluate(2).exact_value() == Rational(1, 8));
  CHECK(p3.label() == "pow:c=1,tau=3");

  const Interval v = parse_psi("pow:c=1,tau=5/2").evaluate(10);
  const double oracle = static_cast<double>(boost::multiprecision::pow(Big(10), Big(-2.5)));
  CHECK(v.lo_double() <= oracle);
  CHECK(oracle <= v.hi_double());
  CHECK(v.hi_double() - v.lo_double() < 1e-18);

  const Interval pl = parse_psi("powlog:c=1,tau=2,beta=1").evaluate(5);
  const double pl_oracle = static_cast<double>(Big(1) / (Big(25) * boost::multiprecision::log(Big(7))));
  CHECK(pl.lo_double() <= pl_oracle);
  CHECK(pl_oracle <= pl.hi_double());
}

TEST_CASE("evaluate: tables are right-continuous steps") {
  const char* path = "psi_table_test.txt";
  {
    std::ofstream out(path);
    out << "# q value\n1 1/2\n2 1/9\n";
  }
  const PsiSpec t = parse_psi(std::string("table:") + path);
  CHECK(t.evaluate(2).exact_value() == Rational(1, 9));
  CHECK(t.evaluate(Rational(3, 2)).exact_value() == Rational(1, 2));
  CHECK_THROWS_AS(t.evaluate(Rational(1, 2)), Error);
  CHECK_FALSE(t.closed_form());
  std::remove(path);
}

TEST_CASE("parse_psi rejects malformed specs") {
  CHECK_THROWS_AS(parse_psi("pow:c=1"), Error);
  CHECK_THROWS_AS(parse_psi("pow:c=-1,tau=3"), Error);
  CHECK_THROWS_AS(parse_psi("nonsense"), Error);
}

TEST_CASE("lambda_of") {
  CHECK(lambda_of(parse_psi("pow:c=1,tau=3")).exact == Rational(3));
  CHECK(lambda_of(parse_psi("pow:c=7/2,tau=9/4")).exact == Rational(9, 4));
  CHECK(lambda_of(parse_psi("powlog:c=1,tau=2,beta=1")).exact == Rational(2));
  CHECK(lambda_of(parse_psi("exp:c=1,base=2")).infinite);
}

TEST_CASE("check_hypotheses") {
  const PsiSpec p3 = parse_psi("pow:c=1,tau=3");
  const HypothesisReport h = check_hypotheses(p3, Rational(2, 3));
  CHECK(h.non_increasing.kind == VerdictKind::kProvedSymbolically);
  CHECK(h.x2_psi_s_non_increasing.holds());
  REQUIRE(h.q0.has_value());
  CHECK(*h.q0 == 1001);

  CHECK_FALSE(check_hypotheses(p3, Rational(3, 5)).x2_psi_s_non_increasing.holds());
  CHECK_FALSE(check_hypotheses(parse_psi("pow:c=1,tau=2"), Rational(1)).little_o_x2.holds());
}

TEST_CASE("x^2 psi^s monotone exactly when tau s >= 2") {
  for (int t8 = 17; t8 <= 48; t8 += 3) {
    const Rational tau = reduce(t8, 8);
    const PsiSpec p = PsiSpec::power(Rational(1), tau);
    for (int s10 = 1; s10 <= 10; ++s10) {
      const Rational s = reduce(s10, 10);
      CHECK(check_hypotheses(p, s).x2_psi_s_non_increasing.holds() == (tau * s >= 2));
    }
  }
}

TEST_CASE("first_true finds the threshold of a monotone predicate") {
  const auto pred = [](const BigInt& q) { return q * q >= 1000000; };
  CHECK(first_true(1, pred, BigInt(1) << 40) == 1000);
  CHECK_THROWS_AS(first_true(1, [](const BigInt&) { return false; }, BigInt(100)), Error);
}
