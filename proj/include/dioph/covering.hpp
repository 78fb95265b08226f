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

// Balls, cells, rectangles and the greedy 5r covering.

#ifndef DIOPH_COVERING_HPP_
#define DIOPH_COVERING_HPP_

#include <cstddef>
#include <vector>

#include "dioph/numerics.hpp"
#include "dioph/psi.hpp"

namespace dioph {

// Open interval (center - radius, center + radius).
struct Ball1D {
  Interval center;
  Interval radius;

  static Ball1D exact(const Rational& center, const Rational& radius);
  Interval lo() const { return center - radius; }
  Interval hi() const { return center + radius; }
};

// Ball with exact rational center and radius.
struct RBall {
  Rational center;
  Rational radius;

  Rational lo() const { return center - radius; }
  Rational hi() const { return center + radius; }
  Ball1D ball() const { return Ball1D::exact(center, radius); }
};

// C_k(p/q, psi) = (p/q + c_k psi(q), p/q + psi(q)), c_k = 1 - 2^-k.
struct Cell {
  Rational anchor;
  int k = 1;
  Interval psi_q;
  Interval lo;
  Interval hi;

  Ball1D ball() const;
  Interval length() const { return hi - lo; }
};

Rational c_k(int k);
Cell make_cell(const Rational& pq, const Interval& psi_q, int k);
Cell make_cell(const Rational& pq, const PsiSpec& psi, int k, int bits = kDefaultPrecision);

// Product ball: every direction shares one radius.
struct BallND {
  std::vector<Interval> centers;
  Interval radius;

  std::size_t dim() const { return centers.size(); }
  Ball1D side(std::size_t i) const { return {centers[i], radius}; }
};

// Product of one thin cell (direction `fixed`) and thick balls elsewhere.
struct Rectangle {
  std::size_t fixed = 0;
  Cell thin;
  std::vector<Ball1D> sides;  // sides[fixed] is thin.ball()
};

Ball1D blowup_s(const Ball1D& b, const Rational& s);
Ball1D scale(const Ball1D& b, const Rational& c);
BallND scale(const BallND& b, const Rational& c);
Rectangle scale(const Rectangle& r, const Rational& c);

// Certified min over directions of the per-direction gap |x_i - y_i| - r - r'
// exceeds `gap`.
bool separated(const Ball1D& a, const Ball1D& b, const Interval& gap);
bool separated(const BallND& a, const BallND& b, const Interval& gap);

// Open sets do not meet: some direction has |c - c'| >= r + r'.
bool disjoint(const Ball1D& a, const Ball1D& b);
bool disjoint(const BallND& a, const BallND& b);
bool disjoint_sides(const std::vector<Ball1D>& a, const std::vector<Ball1D>& b);

// inner is contained in outer (closure of inner inside closure of outer).
bool contains(const Ball1D& outer, const Ball1D& inner);
bool contains_sides(const std::vector<Ball1D>& outer, const std::vector<Ball1D>& inner);

struct CoverResult {
  std::vector<std::size_t> chosen;   // indices into the input, pairwise disjoint
  std::vector<std::size_t> witness;  // per input: a chosen ball meeting it, radius >= its own
};

// Greedy by decreasing radius; ties by center (lexicographic) then index.
CoverResult five_r_cover(const std::vector<Ball1D>& family);
CoverResult five_r_cover(const std::vector<BallND>& family);

// Closed interval [lo, hi].
struct Segment {
  Rational lo;
  Rational hi;
};

// Candidate centers for covering a union of segments by radius-r balls: each
// segment's endpoints plus every grid point origin + j*r/2 inside it.
std::vector<Rational> grid_candidates(const std::vector<Segment>& segments, const Rational& r,
                                      const Rational& origin);

// Arithmetic run start, start + step, ..., count terms.
struct CenterRun {
  Rational start;
  BigInt count;
};

// The five_r_cover selection over equal-radius balls at grid_candidates(),
// computed in closed form (step 2r). Segments must be sorted and disjoint.
std::vector<CenterRun> grid_cover_runs(const std::vector<Segment>& segments, const Rational& r,
                                       const Rational& origin);
BigInt total_count(const std::vector<CenterRun>& runs);

}  // namespace dioph

#endif  // DIOPH_COVERING_HPP_
