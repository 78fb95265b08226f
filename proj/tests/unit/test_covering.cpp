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

#include <random>

#include "dioph/covering.hpp"

using namespace dioph;

namespace {

Rational exact_of(const Interval& iv) {
  REQUIRE(iv.is_exact());
  return *iv.exact_value();
}

bool in_open(const Rational& x, const Ball1D& b, const Rational& factor = 1) {
  return abs(x - exact_of(b.center)) < factor * exact_of(b.radius);
}

}  // namespace

TEST_CASE("cells") {
  const PsiSpec p3 = PsiSpec::power(Rational(1), Rational(3));
  const Cell a = make_cell(Rational(1, 2), p3, 1);
  CHECK(exact_of(a.lo) == Rational(9, 16));
  CHECK(exact_of(a.hi) == Rational(5, 8));
  CHECK(exact_of(a.length()) == Rational(1, 16));
  const Cell b = make_cell(Rational(1, 3), p3, 2);
  CHECK(exact_of(b.lo) == Rational(13, 36));
  CHECK(exact_of(b.hi) == Rational(10, 27));
  CHECK(c_k(1) == Rational(1, 2));
  for (int k = 1; k < 20; ++k) CHECK(c_k(k) < c_k(k + 1));
  const Cell t = make_cell(Rational(0), Interval::exact(Rational(1, 2)), 1);
  CHECK(exact_of(t.lo) == Rational(1, 4));
  CHECK(exact_of(t.hi) == Rational(1, 2));
}

TEST_CASE("blowups and scaling") {
  const Ball1D b = Ball1D::exact(Rational(1, 2), Rational(1, 16));
  CHECK(exact_of(blowup_s(b, Rational(1)).radius) == Rational(1, 16));
  CHECK(exact_of(blowup_s(b, Rational(1, 2)).radius) == Rational(1, 4));
  CHECK(exact_of(blowup_s(Ball1D::exact(Rational(1, 2), Rational(1, 8)), Rational(2, 3)).radius) == Rational(1, 4));
  CHECK(exact_of(scale(Ball1D::exact(Rational(1, 2), Rational(1, 10)), Rational(3)).radius) == Rational(3, 10));
  BallND nd{{Interval::exact(Rational(1, 2)), Interval::exact(Rational(1, 2))}, Interval::exact(Rational(1, 4))};
  CHECK(exact_of(scale(nd, Rational(1, 2)).radius) == Rational(1, 8));
  const Ball1D small = Ball1D::exact(Rational(1, 2), Rational(1, 100));
  Rational prev = 0;
  for (int i = 10; i >= 1; --i) {
    const Rational r = blowup_s(small, reduce(i, 10)).radius.mid_rational();
    CHECK(r >= prev);
    prev = r;
  }
}

TEST_CASE("separation and disjointness") {
  const Ball1D a = Ball1D::exact(Rational(0), Rational(1, 10));
  CHECK(separated(a, Ball1D::exact(Rational(1, 2), Rational(1, 10)), Interval::exact(Rational(1, 4))));
  CHECK_FALSE(separated(a, Ball1D::exact(Rational(1, 5), Rational(1, 10)), Interval::exact(Rational(1, 4))));
  CHECK(disjoint(a, Ball1D::exact(Rational(1, 5), Rational(1, 10))));
  CHECK_FALSE(disjoint(a, Ball1D::exact(Rational(1, 6), Rational(1, 10))));
  CHECK(contains(Ball1D::exact(Rational(1, 2), Rational(1, 2)), Ball1D::exact(Rational(1, 10), Rational(1, 10))));
  CHECK_FALSE(contains(Ball1D::exact(Rational(1, 2), Rational(1, 2)), Ball1D::exact(Rational(1, 10), Rational(1, 9))));
}

TEST_CASE("five_r_cover: small cases") {
  const std::vector<Ball1D> two{Ball1D::exact(Rational(0), Rational(1)), Ball1D::exact(Rational(1, 2), Rational(1))};
  CHECK(five_r_cover(two).chosen == std::vector<std::size_t>{0});
  std::vector<Ball1D> apart;
  for (int i = 0; i < 5; ++i) apart.push_back(Ball1D::exact(reduce(i, 5), Rational(1, 20)));
  CHECK(five_r_cover(apart).chosen.size() == 5);
}

TEST_CASE("five_r_cover: random families cover their union with 5-blowups") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> cpos(0, 100000), rad(100, 1000);
  for (int fam = 0; fam < 20; ++fam) {
    std::vector<Ball1D> balls;
    for (int i = 0; i < 200; ++i) balls.push_back(Ball1D::exact(reduce(cpos(rng), 100000), reduce(rad(rng), 100000)));
    const CoverResult cr = five_r_cover(balls);
    for (std::size_t i = 0; i < cr.chosen.size(); ++i) {
      for (std::size_t j = i + 1; j < cr.chosen.size(); ++j) CHECK(disjoint(balls[cr.chosen[i]], balls[cr.chosen[j]]));
    }
    REQUIRE(cr.witness.size() == balls.size());
    for (std::size_t i = 0; i < balls.size(); ++i) {
      const Ball1D& w = balls[cr.witness[i]];
      CHECK_FALSE(disjoint(w, balls[i]));
      CHECK(exact_of(w.radius) >= exact_of(balls[i].radius));
    }
    for (long t = 0; t < 2000; ++t) {
      const Rational x(cpos(rng), 100000);
      bool in_union = false, covered = false;
      for (const auto& b : balls) in_union = in_union || in_open(x, b);
      for (std::size_t c : cr.chosen) covered = covered || in_open(x, balls[c], 5);
      if (in_union) CHECK(covered);
    }
  }
}

TEST_CASE("five_r_cover in two dimensions") {
  std::vector<BallND> balls;
  for (int i = 0; i < 6; ++i) {
    balls.push_back({{Interval::exact(reduce(i, 10)), Interval::exact(Rational(1, 2))}, Interval::exact(Rational(1, 12))});
  }
  const CoverResult cr = five_r_cover(balls);
  for (std::size_t i = 0; i < cr.chosen.size(); ++i) {
    for (std::size_t j = i + 1; j < cr.chosen.size(); ++j) CHECK(disjoint(balls[cr.chosen[i]], balls[cr.chosen[j]]));
  }
  CHECK(cr.chosen.size() == 3);
}

TEST_CASE("grid_cover_runs reproduces the greedy cover on grid candidates") {
  const std::vector<Segment> segs{{Rational(1, 10), Rational(3, 10)}, {Rational(41, 100), Rational(77, 100)}};
  const Rational r(1, 50), origin(0);
  const auto cands = grid_candidates(segs, r, origin);
  std::vector<Ball1D> balls;
  for (const auto& c : cands) balls.push_back(Ball1D::exact(c, r));
  const CoverResult cr = five_r_cover(balls);
  std::vector<Rational> greedy;
  for (std::size_t i : cr.chosen) greedy.push_back(cands[i]);
  std::sort(greedy.begin(), greedy.end());
  std::vector<Rational> closed;
  for (const auto& run : grid_cover_runs(segs, r, origin)) {
    for (long j = 0; j < run.count.get_si(); ++j) closed.push_back(run.start + 2 * r * j);
  }
  CHECK(closed == greedy);
  CHECK(total_count(grid_cover_runs(segs, r, origin)) == static_cast<long>(greedy.size()));
}
