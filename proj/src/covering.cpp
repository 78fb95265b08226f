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

#include "dioph/covering.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace dioph {

namespace {

Interval two_pow(int k) { return Interval::exact(pow(Rational(2), k)); }

bool certify(const Interval& a, const Interval& b, bool strict) {
  const Order o = cmp_certified(a, b);
  return strict ? o == Order::kLess : o != Order::kGreater;
}

Interval abs_diff(const Interval& a, const Interval& b) {
  Interval d = a - b;
  if (cmp_certified(d, Interval::exact(0L)) == Order::kLess) d = -d;
  return d;
}

// Returns 1 if the open intervals are disjoint, 0 if they meet, -1 if
// undecided.
int disjoint_1d(const Ball1D& a, const Ball1D& b) {
  try {
    // Disjoint iff a.hi <= b.lo or b.hi <= a.lo.
    const Interval ahi = a.hi(), blo = b.lo(), bhi = b.hi(), alo = a.lo();
    if (cmp_certified(ahi, blo) != Order::kGreater) return 1;
    if (cmp_certified(bhi, alo) != Order::kGreater) return 1;
    return 0;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kUndecided) throw;
    return -1;
  }
}

}  // namespace

Ball1D Ball1D::exact(const Rational& center, const Rational& radius) {
  if (radius <= 0) throw Error(ErrorKind::kInvalidInput, "ball radius must be positive");
  return {Interval::exact(center), Interval::exact(radius)};
}

Rational c_k(int k) { return 1 - pow(Rational(2), -k); }

Cell make_cell(const Rational& pq, const Interval& psi_q, int k) {
  if (k < 1) throw Error(ErrorKind::kInvalidInput, "cell level k must be >= 1");
  Cell c;
  c.anchor = pq;
  c.k = k;
  c.psi_q = psi_q;
  const Interval a = Interval::exact(pq);
  c.lo = a + Interval::exact(c_k(k)) * psi_q;
  c.hi = a + psi_q;
  if (!certified_less(c.lo, c.hi)) {
    throw Error(ErrorKind::kCertification, "cell endpoints not separated");
  }
  return c;
}

Cell make_cell(const Rational& pq, const PsiSpec& psi, int k, int bits) {
  return make_cell(pq, psi.evaluate(Rational(pq.get_den()), bits), k);
}

Ball1D Cell::ball() const {
  const Interval half = Interval::exact(Rational(1, 2));
  return {(lo + hi) * half, psi_q / two_pow(k + 1)};
}

Ball1D blowup_s(const Ball1D& b, const Rational& s) {
  if (s <= 0 || s > 1) throw Error(ErrorKind::kInvalidInput, "blowup exponent must lie in (0,1]");
  if (s == 1) return b;
  return {b.center, eval_power(b.radius, s, std::max(b.radius.bits(), kDefaultPrecision))};
}

Ball1D scale(const Ball1D& b, const Rational& c) {
  if (c <= 0) throw Error(ErrorKind::kInvalidInput, "scale factor must be positive");
  return {b.center, b.radius * Interval::exact(c)};
}

BallND scale(const BallND& b, const Rational& c) {
  if (c <= 0) throw Error(ErrorKind::kInvalidInput, "scale factor must be positive");
  return {b.centers, b.radius * Interval::exact(c)};
}

Rectangle scale(const Rectangle& r, const Rational& c) {
  Rectangle out = r;
  for (auto& s : out.sides) s = scale(s, c);
  return out;
}

bool separated(const Ball1D& a, const Ball1D& b, const Interval& gap) {
  const Interval d = abs_diff(a.center, b.center) - a.radius - b.radius;
  return cmp_certified(d, gap) == Order::kGreater;
}

bool separated(const BallND& a, const BallND& b, const Interval& gap) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::kInvalidInput, "dimension mismatch");
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (!separated(a.side(i), b.side(i), gap)) return false;
  }
  return true;
}

bool disjoint(const Ball1D& a, const Ball1D& b) {
  const int r = disjoint_1d(a, b);
  if (r < 0) throw Error(ErrorKind::kUndecided, "ball disjointness undecided");
  return r == 1;
}

bool disjoint_sides(const std::vector<Ball1D>& a, const std::vector<Ball1D>& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::kInvalidInput, "dimension mismatch");
  bool undecided = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int r = disjoint_1d(a[i], b[i]);
    if (r == 1) return true;
    if (r < 0) undecided = true;
  }
  if (undecided) throw Error(ErrorKind::kUndecided, "ball disjointness undecided");
  return false;
}

bool disjoint(const BallND& a, const BallND& b) {
  std::vector<Ball1D> sa, sb;
  for (std::size_t i = 0; i < a.dim(); ++i) sa.push_back(a.side(i));
  for (std::size_t i = 0; i < b.dim(); ++i) sb.push_back(b.side(i));
  return disjoint_sides(sa, sb);
}

bool contains(const Ball1D& outer, const Ball1D& inner) {
  return certify(outer.lo(), inner.lo(), false) && certify(inner.hi(), outer.hi(), false);
}

bool contains_sides(const std::vector<Ball1D>& outer, const std::vector<Ball1D>& inner) {
  if (outer.size() != inner.size()) throw Error(ErrorKind::kInvalidInput, "dimension mismatch");
  for (std::size_t i = 0; i < outer.size(); ++i) {
    if (!contains(outer[i], inner[i])) return false;
  }
  return true;
}

namespace {

template <class BallT, class Centers, class Disjoint>
CoverResult greedy_cover(const std::vector<BallT>& family, Centers centers, Disjoint disjoint_fn) {
  std::vector<std::size_t> order(family.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const Order o = cmp_certified(family[i].radius, family[j].radius);
    if (o != Order::kEqual) return o == Order::kGreater;
    const auto ci = centers(family[i]);
    const auto cj = centers(family[j]);
    for (std::size_t d = 0; d < ci.size(); ++d) {
      const Order oc = cmp_certified(ci[d], cj[d]);
      if (oc != Order::kEqual) return oc == Order::kLess;
    }
    return i < j;
  });
  CoverResult res;
  res.witness.assign(family.size(), 0);
  for (std::size_t idx : order) {
    bool free = true;
    for (std::size_t c : res.chosen) {
      if (!disjoint_fn(family[idx], family[c])) {
        free = false;
        res.witness[idx] = c;
        break;
      }
    }
    if (free) {
      res.chosen.push_back(idx);
      res.witness[idx] = idx;
    }
  }
  return res;
}

}  // namespace

CoverResult five_r_cover(const std::vector<Ball1D>& family) {
  return greedy_cover(
      family, [](const Ball1D& b) { return std::vector<Interval>{b.center}; },
      [](const Ball1D& a, const Ball1D& b) { return disjoint(a, b); });
}

CoverResult five_r_cover(const std::vector<BallND>& family) {
  return greedy_cover(
      family, [](const BallND& b) { return b.centers; },
      [](const BallND& a, const BallND& b) { return disjoint(a, b); });
}

namespace {

// Smallest grid point origin + j*pitch that is >= x.
Rational grid_ceil(const Rational& x, const Rational& origin, const Rational& pitch) {
  return origin + Rational(ceil(Rational((x - origin) / pitch))) * pitch;
}

bool on_grid(const Rational& x, const Rational& origin, const Rational& pitch) {
  return Rational((x - origin) / pitch).get_den() == 1;
}

}  // namespace

std::vector<Rational> grid_candidates(const std::vector<Segment>& segments, const Rational& r,
                                      const Rational& origin) {
  const Rational pitch = r / 2;
  std::vector<Rational> out;
  for (const Segment& s : segments) {
    out.push_back(s.lo);
    for (Rational g = grid_ceil(s.lo, origin, pitch); g <= s.hi; g += pitch) {
      if (g != s.lo && g != s.hi) out.push_back(g);
    }
    if (s.hi != s.lo) out.push_back(s.hi);
  }
  return out;
}

std::vector<CenterRun> grid_cover_runs(const std::vector<Segment>& segments, const Rational& r,
                                       const Rational& origin) {
  if (r <= 0) throw Error(ErrorKind::kInvalidInput, "cover radius must be positive");
  const Rational pitch = r / 2;
  const Rational step = 2 * r;
  std::vector<CenterRun> runs;
  std::optional<Rational> last;
  for (const Segment& s : segments) {
    if (s.hi < s.lo) continue;
    for (;;) {
      // Next candidate of this segment at or beyond last + 2r.
      Rational c;
      if (!last || s.lo >= *last + step) {
        c = s.lo;
      } else {
        const Rational t = *last + step;
        if (t > s.hi) break;
        const Rational g = grid_ceil(t, origin, pitch);
        c = g < s.hi ? g : s.hi;
      }
      if (on_grid(c, origin, pitch)) {
        const BigInt extra = floor(Rational((s.hi - c) / step));
        runs.push_back({c, extra + 1});
        last = c + Rational(extra) * step;
      } else {
        runs.push_back({c, 1});
        last = c;
      }
    }
  }
  return runs;
}

BigInt total_count(const std::vector<CenterRun>& runs) {
  BigInt n = 0;
  for (const auto& r : runs) n += r.count;
  return n;
}

}  // namespace dioph
