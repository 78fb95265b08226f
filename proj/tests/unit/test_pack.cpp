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

#include "dioph/pack.hpp"

using namespace dioph;

namespace {

const RBall kUnit{Rational(1, 2), Rational(1, 2)};

PackConstants desk_q(long q) {
  PackConstants pc = PackConstants::desk_defaults();
  pc.q_override = BigInt(q);
  return pc;
}

}  // namespace

TEST_CASE("strict constants: constant terms give a closed-form N") {
  const PsiSpec psi = PsiSpec::power(Rational(1, 1000000000), Rational(3));
  const PackPlan plan = plan_pack(kUnit, 1, 1, psi, Rational(2, 3), PackConstants::strict());
  CHECK(plan.term_first.exact_value() == Rational(81, 1000000));
  // Smallest m with m * 81e-6 * 2^{-4/3} >= 1/128, i.e. (128 m 81e-6)^3 >= 16.
  long m = 1;
  while (pow(Rational(128 * m * 81, 1000000), 3) < 16) ++m;
  CHECK(plan.N + 1 == m);
  CHECK(plan.window_ok);
  CHECK(plan.window_sum.lo_double() >= 1.0 / 128);
  CHECK(plan.window_sum.hi_double() <= 1.0 / 64);
}

TEST_CASE("convergent series cannot be packed") {
  CHECK_THROWS_AS(plan_pack(kUnit, 1, 1, PsiSpec::power(Rational(1), Rational(3)), Rational(7, 10),
                            PackConstants::desk_defaults()),
                  Error);
}

TEST_CASE("desk pack at Q=40: disjoint triple blowups inside B") {
  const PsiSpec psi = PsiSpec::power(Rational(1), Rational(3));
  const Rational s(2, 3);
  const PackConstants pc = desk_q(40);
  const PackPlan plan = plan_pack(kUnit, 1, 1, psi, s, pc);
  CHECK(plan.Q == 40);
  const PackResult res = materialize_pack(plan, kUnit, 1, 1, psi, s, pc);
  REQUIRE_FALSE(res.kept.empty());
  const PackReport rep = verify_pack(res, kUnit, Rational(0), s);
  CHECK(rep.ok());
  for (std::size_t i = 0; i < res.kept.size(); ++i) {
    const Ball1D a = scale(res.kept[i].cell_s, Rational(3));
    CHECK(contains(kUnit.ball(), a));
    for (std::size_t j = i + 1; j < res.kept.size(); ++j) CHECK(disjoint(a, scale(res.kept[j].cell_s, Rational(3))));
  }
}

TEST_CASE("verify_pack catches a duplicated cell") {
  const PsiSpec psi = PsiSpec::power(Rational(1), Rational(3));
  const Rational s(2, 3);
  const PackConstants pc = desk_q(40);
  const PackPlan plan = plan_pack(kUnit, 1, 1, psi, s, pc);
  PackResult res = materialize_pack(plan, kUnit, 1, 1, psi, s, pc);
  REQUIRE_FALSE(res.kept.empty());
  res.kept.push_back(res.kept.front());
  CHECK_FALSE(verify_pack(res, kUnit, Rational(0), s).ok());
}

TEST_CASE("desk defaults choose a small plan and reach the coverage target") {
  const PsiSpec psi = PsiSpec::power(Rational(1), Rational(3));
  const Rational s(2, 3);
  const PackConstants pc = PackConstants::desk_defaults();
  const PackPlan plan = plan_pack(kUnit, 1, 1, psi, s, pc);
  CHECK(plan.l >= 1);
  CHECK(plan.l <= 4);
  // x^2 psi^s is identically 1 here, so every window term is 81 and the
  // first one already overshoots.
  CHECK_FALSE(plan.window_ok);
  CHECK(plan.N == 0);
  CHECK_FALSE(plan.notes.empty());
  const PackResult res = materialize_pack(plan, kUnit, 1, 1, psi, s, pc);
  const PackReport rep = verify_pack(res, kUnit, pc.coverage_target, s);
  CHECK(rep.ok());
  CHECK(res.coverage_ok);
}
