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

#include <numeric>

#include "dioph/approx.hpp"

using namespace dioph;

namespace {

std::vector<std::string> strs(const ConvergentList& cl) {
  std::vector<std::string> out;
  for (const auto& c : cl.items) out.push_back(c.p.get_str() + "/" + c.q.get_str());
  return out;
}

// Brute force: every reduced p/q in (lo, hi) with q_min <= q <= q_max, sorted.
std::vector<Rational> brute_farey(const Rational& lo, const Rational& hi, long q_min, long q_max) {
  std::vector<Rational> out;
  for (long q = q_min; q <= q_max; ++q) {
    for (long p = floor(Rational(lo * q)).get_si(); p <= ceil(Rational(hi * q)).get_si(); ++p) {
      if (std::gcd(p, q) != 1) continue;
      const Rational v(p, q);
      if (v > lo && v < hi) out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("continued fraction convergents") {
  CHECK(strs(cf_convergents(parse_real("rat:17/120"), 10)) == std::vector<std::string>{"0/1", "1/7"});
  CHECK(strs(cf_convergents(parse_real("rat:1/2"), 5)) == std::vector<std::string>{"0/1", "1/2"});
  const auto gold = cf_convergents(RealSpec::golden_conjugate(), 100);
  REQUIRE(gold.items.size() >= 2);
  CHECK(strs(gold).back() == "55/89");
  for (std::size_t i = 2; i < gold.items.size(); ++i) {
    CHECK(gold.items[i].q == gold.items[i - 1].q + gold.items[i - 2].q);
  }
  CHECK(cf_convergents(parse_real("rat:1/2"), 5).exhausted);
}

TEST_CASE("real specs compare exactly") {
  const RealSpec g = RealSpec::golden_conjugate();
  CHECK(g.compare(Rational(618, 1000)) > 0);
  CHECK(g.compare(Rational(619, 1000)) < 0);
  const RealSpec surd = parse_real("surd:-1,1,2,5");
  CHECK(surd.compare(Rational(55, 89)) == g.compare(Rational(55, 89)));
  const RealSpec cf = parse_real("cf:periodic:[0;(1)]");
  CHECK(cf.compare(Rational(34, 55)) == g.compare(Rational(34, 55)));
  CHECK(parse_real("rat:3/4").compare(Rational(3, 4)) == 0);
}

TEST_CASE("dirichlet") {
  CHECK(dirichlet(parse_real("rat:17/120"), 10) == Rational(1, 7));
  CHECK(dirichlet(parse_real("rat:1/2"), 5) == Rational(1, 2));
  const RealSpec g = RealSpec::golden_conjugate();
  const Rational d = dirichlet(g, 100);
  CHECK(d == Rational(55, 89));
  CHECK(g.abs_diff(d).hi_double() < 1.0 / 8900);
  // Brute force confirms a valid approximant exists for every Q.
  for (long Q = 1; Q <= 60; ++Q) {
    const Rational r = dirichlet(parse_real("rat:17/120"), Q);
    CHECK(r.get_den() <= Q);
    CHECK(abs(Rational(17, 120) - r) < Rational(1, r.get_den() * BigInt(Q)));
  }
}

TEST_CASE("farey enumeration matches brute force") {
  auto vals = [](const std::vector<Fraction>& fs) {
    std::vector<Rational> out;
    for (const auto& f : fs) out.push_back(f.value());
    return out;
  };
  CHECK(vals(farey_enumerate({Rational(1, 3), Rational(1, 2), 1, 5})) == std::vector<Rational>{Rational(2, 5)});
  CHECK(vals(farey_enumerate({Rational(0), Rational(1), 1, 3})) ==
        std::vector<Rational>{Rational(1, 3), Rational(1, 2), Rational(2, 3)});
  CHECK(farey_enumerate({Rational(1, 4), Rational(1, 4), 1, 9}).empty());
  for (long q_min : {1L, 3L, 7L}) {
    const Rational lo(3, 17), hi(5, 11);
    CHECK(vals(farey_enumerate({lo, hi, q_min, 40})) == brute_farey(lo, hi, q_min, 40));
  }
}

TEST_CASE("farey count on (0,1) equals the totient sum") {
  for (long n : {1L, 10L, 100L, 2000L}) {
    long phi_sum = 0;
    for (long q = 1; q <= n; ++q) {
      long t = 0;
      for (long p = 1; p <= q; ++p) t += std::gcd(p, q) == 1;
      phi_sum += t;
    }
    CHECK(static_cast<long>(farey_enumerate({Rational(0), Rational(1), 1, n}).size()) == phi_sum - 1);
  }
}

TEST_CASE("adjacent farey neighbours are unimodular") {
  const auto fs = farey_enumerate({Rational(0), Rational(1), 1, 200});
  for (std::size_t i = 0; i + 1 < fs.size(); ++i) CHECK(fs[i].q * fs[i + 1].p - fs[i].p * fs[i + 1].q == 1);
}

TEST_CASE("farey stream resumes from an arbitrary point") {
  FareyStream st({Rational(0), Rational(1), 1, 50}, Rational(1, 3), false);
  const auto f = st.next();
  REQUIRE(f.has_value());
  CHECK(f->value() == Rational(17, 50));
  CHECK(farey_successor(Rational(1, 3), 50, true).value() == Rational(1, 3));
}
