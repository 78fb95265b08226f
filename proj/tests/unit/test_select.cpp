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

#include <cmath>
#include <doctest.h>

#include <numeric>

#include "dioph/select.hpp"

using namespace dioph;

namespace {

// Independent greedy: every reduced p/q in (c - r/2, c + r/2) with
// ceil(Q/9) <= q <= Q, ascending, accepted when 1/Q^2 from the last accepted.
std::vector<Rational> brute_select(const RBall& b, long Q) {
  const Rational lo = b.center - b.radius / 2, hi = b.center + b.radius / 2;
  std::vector<Rational> cands;
  for (long q = (Q + 8) / 9; q <= Q; ++q) {
    for (long p = floor(Rational(lo * q)).get_si(); p <= ceil(Rational(hi * q)).get_si(); ++p) {
      if (std::gcd(p, q) == 1 && Rational(p, q) > lo && Rational(p, q) < hi) cands.emplace_back(p, q);
    }
  }
  std::sort(cands.begin(), cands.end());
  std::vector<Rational> out;
  for (const auto& c : cands) {
    if (out.empty() || c - out.back() >= Rational(1, Q * Q)) out.push_back(c);
  }
  return out;
}

std::vector<Rational> values(const SelectionResult& r) {
  std::vector<Rational> out;
  for (const auto& f : r.rationals) out.push_back(f.value());
  return out;
}

SelectionConfig exploratory(const RBall& b, long Q) {
  SelectionConfig cfg;
  cfg.Q = Q;
  cfg.ball = b;
  cfg.psis = {PsiSpec::power(Rational(1), Rational(3))};
  return cfg;
}

}  // namespace

TEST_CASE("exploratory selection equals the brute-force greedy") {
  for (long Q : {30L, 100L, 257L}) {
    const RBall b{Rational(1, 2), Rational(1, 4)};
    const SelectionResult res = select_rationals(exploratory(b, Q));
    CHECK(values(res) == brute_select(b, Q));
    CHECK(res.q_min == (Q + 8) / 9);
    CHECK(verify_selection(res, exploratory(b, Q)).ok());
  }
}

TEST_CASE("maximality: every rejected candidate is within 1/Q^2 of a selected one") {
  const long Q = 120;
  const RBall b{Rational(3, 10), Rational(1, 5)};
  const auto sel = values(select_rationals(exploratory(b, Q)));
  const Rational lo = b.center - b.radius / 2, hi = b.center + b.radius / 2;
  for (long q = (Q + 8) / 9; q <= Q; ++q) {
    for (long p = 0; p <= q; ++p) {
      const Rational v(p, q);
      if (std::gcd(p, q) != 1 || v <= lo || v >= hi) continue;
      bool near = false;
      for (const auto& s : sel) near = near || abs(v - s) < Rational(1, Q * Q) || v == s;
      CHECK(near);
    }
  }
}

TEST_CASE("strict mode gates Q and certifies the count") {
  SelectionConfig cfg = exploratory({Rational(1, 2), Rational(1, 2)}, 5000);
  cfg.mode = SelectMode::kStrict;
  CHECK_THROWS_AS(select_rationals(cfg), Error);
  try {
    select_rationals(cfg);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kHypothesisViolation);
  }
}

TEST_CASE("verify_selection flags tampering and empty results") {
  const long Q = 100;
  SelectionConfig cfg = exploratory({Rational(1, 2), Rational(1, 4)}, Q);
  SelectionResult res = select_rationals(cfg);
  REQUIRE(res.rationals.size() > 3);
  // Replace the second rational by a reduced fraction within 1/(2Q^2) of the first.
  const Fraction a = res.rationals[0];
  res.rationals[1] = Fraction{a.p * 2 * Q * Q + 1, a.q * 2 * Q * Q};
  const SelectionReport bad = verify_selection(res, cfg);
  CHECK_FALSE(bad.ok());
  SelectionResult empty;
  empty.q_min = res.q_min;
  empty.q_max = res.q_max;
  const SelectionReport e = verify_selection(empty, cfg);
  CHECK(e.ok());
  CHECK(e.empty);
}

TEST_CASE("scaling law on (0,1)") {
  // Reduced fractions in (1/4, 3/4) with q in [Q/9, Q]: about (3/(2 pi^2)) (80/81) Q^2.
  const double limit = 3.0 / (2.0 * M_PI * M_PI) * 80.0 / 81.0;
  for (long Q : {2000L, 4000L, 8000L}) {
    const auto res = select_rationals(exploratory({Rational(1, 2), Rational(1, 2)}, Q));
    const double ratio = static_cast<double>(res.achieved_count()) / (static_cast<double>(Q) * Q);
    CHECK(ratio > 1.0 / 160);
    CHECK(ratio == doctest::Approx(limit).epsilon(0.005));
  }
}

TEST_CASE("window_q_min is ceil(Q/9)") {
  CHECK(window_q_min(9) == 1);
  CHECK(window_q_min(10) == 2);
  CHECK(window_q_min(13870) == 1542);
}
