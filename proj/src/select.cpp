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

#include "dioph/select.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "dioph/kernels.hpp"

namespace dioph {

namespace {

using i128 = __int128;

// Absolute slack for double cell endpoints in [0, 2]; a handful of
// round-to-nearest operations stay far below it.
constexpr double kSlack = 0x1p-48;

// a/b < c/d for positive denominators.
bool frac_less(i128 a, i128 b, i128 c, i128 d) { return a * d < c * b; }

// b - a >= 1/Q^2 for a < b in lowest terms.
bool gap_at_least(const Fraction& a, const Fraction& b, std::int64_t Q) {
  const i128 cross = static_cast<i128>(b.p) * a.q - static_cast<i128>(a.p) * b.q;
  if (cross <= 0) return false;
  const i128 qq = static_cast<i128>(a.q) * b.q;
  const i128 QQ = static_cast<i128>(Q) * Q;
  // cross >= 1 and qq <= Q^2 already settle it for in-window denominators.
  if (qq <= QQ) return true;
  return cross * QQ >= qq;  // only reached for out-of-window input, Q < 2^31
}

Rational frac_gap(const Fraction& a, const Fraction& b) {
  return reduce(BigInt(static_cast<long>(b.p)) * static_cast<long>(a.q) -
                    BigInt(static_cast<long>(a.p)) * static_cast<long>(b.q),
                BigInt(static_cast<long>(a.q)) * static_cast<long>(b.q));
}

struct PsiCache {
  const PsiSpec& psi;
  std::unordered_map<std::int64_t, std::pair<double, double>> doubles;

  std::pair<double, double> get(std::int64_t q) {
    auto it = doubles.find(q);
    if (it != doubles.end()) return it->second;
    const Interval v = psi.evaluate(BigInt(static_cast<long>(q)));
    return doubles[q] = {v.lo_double(), v.hi_double()};
  }
};

}  // namespace

std::int64_t window_q_min(std::int64_t Q) { return (Q + 8) / 9; }

Interval strict_q_gate(const Rational& radius) {
  const Interval r = Interval::exact(radius);
  return Interval::exact(10000L) / r * eval_log(Interval::exact(1L) / r);
}

CellScan scan_cells(const std::vector<Fraction>& rationals, const PsiSpec& psi, int k,
                    const RBall& ball, const Rational& gap) {
  CellScan scan;
  const std::size_t n = rationals.size();
  if (n == 0) return scan;
  PsiCache cache{psi, {}};
  const double ck = c_k(k).get_d();  // exact: k <= 52 bits
  const Interval blo = Interval::exact(ball.lo()), bhi = Interval::exact(ball.hi());
  const double in_lo = blo.hi_double(), in_hi = bhi.lo_double();
  const double out_lo = blo.lo_double(), out_hi = bhi.hi_double();
  const Interval gap_iv = Interval::exact(gap);
  const double gap_up = gap_iv.hi_double();
  double min_gap = INFINITY;
  bool have_gap = false;
  Rational min_exact;
  bool have_exact = false;

  auto exact_cell = [&](std::size_t i) {
    return make_cell(rationals[i].value(), psi, k);
  };

  constexpr std::size_t kChunk = 1 << 20;
  std::vector<double> lo, hi;
  std::vector<std::uint8_t> flags;
  for (std::size_t base = 0; base < n; base += kChunk) {
    // One element of overlap so the pair across the chunk seam is covered.
    const std::size_t end = std::min(n, base + kChunk + 1);
    const std::size_t m = end - base;
    lo.resize(m);
    hi.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
      const Fraction& f = rationals[base + j];
      const auto [plo, phi] = cache.get(f.q);
      const double x = static_cast<double>(f.p) / static_cast<double>(f.q);
      lo[j] = x + ck * plo - kSlack;
      hi[j] = x + phi + kSlack;
    }
    // Containment (skip the overlap element, it belongs to the next chunk).
    const std::size_t own = std::min(m, kChunk);
    flags.resize(m);
    kernels::classify_boxes(lo.data(), hi.data(), own, in_lo, in_hi, out_lo, out_hi, flags.data());
    for (std::size_t j = 0; j < own && scan.first_outside == SIZE_MAX; ++j) {
      if (flags[j] == kernels::kInside) continue;
      const Cell c = exact_cell(base + j);
      if (!(certified_less_equal(blo, c.lo) && certified_less_equal(c.hi, bhi))) {
        scan.first_outside = base + j;
      }
    }
    // Adjacent gaps.
    if (m >= 2) {
      kernels::gap_certify(lo.data(), hi.data(), m, gap_up, flags.data());
      for (std::size_t j = 0; j + 1 < m; ++j) {
        const double g = (lo[j + 1] - hi[j]) - kSlack;
        if (flags[j]) {
          ++scan.pairs_fast;
          if (g < min_gap) min_gap = g;
          have_gap = true;
          continue;
        }
        const Cell a = exact_cell(base + j), b = exact_cell(base + j + 1);
        const Interval d = b.lo - a.hi;
        const Order o = cmp_certified(d, gap_iv);
        ++scan.pairs_exact;
        const Rational dl = d.lo_rational();
        if (!have_exact || dl < min_exact) {
          min_exact = dl;
          have_exact = true;
        }
        if (o != Order::kGreater && scan.first_close == SIZE_MAX) scan.first_close = base + j;
      }
    }
    if (end == n) break;
  }
  if (have_gap || have_exact) {
    Rational best = have_gap ? Rational(min_gap) : min_exact;
    if (have_exact && min_exact < best) best = min_exact;
    scan.min_gap_lower = best;
  }
  return scan;
}

SelectionResult select_rationals(const SelectionConfig& cfg) {
  if (cfg.Q < 1) throw Error(ErrorKind::kInvalidInput, "select: Q must be >= 1");
  if (cfg.k < 1 || cfg.k > 52) throw Error(ErrorKind::kInvalidInput, "select: k must lie in [1,52]");
  if (cfg.ball.radius <= 0 || cfg.ball.lo() < 0 || cfg.ball.hi() > 1) {
    throw Error(ErrorKind::kInvalidInput, "select: ball must be a nonempty subset of [0,1]");
  }
  const bool strict = cfg.mode == SelectMode::kStrict;
  if (strict) {
    const Interval Qi = Interval::exact(BigInt(static_cast<long>(cfg.Q)));
    const Interval gate = strict_q_gate(cfg.ball.radius);
    if (cmp_certified(gate, Qi) == Order::kGreater) {
      throw Error(ErrorKind::kHypothesisViolation,
                  "Q=" + std::to_string(cfg.Q) + " is below 10000|B|^-1 log(1/|B|) = " + gate.to_string());
    }
    for (const PsiSpec& psi : cfg.psis) {
      const HypothesisReport h = check_hypotheses(psi, Rational(1));
      if (!h.q0) {
        throw Error(ErrorKind::kHypothesisViolation, psi.label() + ": no Q0 with q^2 psi(q) < 1/1000");
      }
      if (BigInt(static_cast<long>(cfg.Q)) < 9 * *h.q0) {
        throw Error(ErrorKind::kHypothesisViolation,
                    "Q=" + std::to_string(cfg.Q) + " is below 9*Q0 = " + BigInt(9 * *h.q0).get_str() +
                        " for " + psi.label());
      }
    }
  }
  SelectionResult res;
  res.q_max = cfg.Q;
  res.q_min = window_q_min(cfg.Q);
  const Rational half = cfg.ball.radius / 2;
  FareyStream stream({cfg.ball.center - half, cfg.ball.center + half, res.q_min, res.q_max});
  std::size_t seen = 0;
  while (auto f = stream.next()) {
    if (++seen > cfg.max_candidates) {
      throw Error(ErrorKind::kBudgetExceeded,
                  "select: more than " + std::to_string(cfg.max_candidates) + " candidates");
    }
    if (res.rationals.empty() || gap_at_least(res.rationals.back(), *f, cfg.Q)) {
      res.rationals.push_back(*f);
    }
  }
  if (strict) {
    res.guaranteed_count = floor(Rational(cfg.ball.radius * cfg.Q * cfg.Q / 80));
    if (BigInt(static_cast<unsigned long>(res.achieved_count())) < res.guaranteed_count) {
      throw Error(ErrorKind::kCardinalityShortfall,
                  "selected " + std::to_string(res.achieved_count()) + " < " +
                      res.guaranteed_count.get_str());
    }
  }
  // Exact minimum adjacent gap.
  if (res.rationals.size() >= 2) {
    std::size_t best = 0;
    for (std::size_t i = 1; i + 1 < res.rationals.size(); ++i) {
      const Fraction &a = res.rationals[i], &b = res.rationals[i + 1];
      const Fraction &c = res.rationals[best], &d = res.rationals[best + 1];
      const i128 n1 = static_cast<i128>(b.p) * a.q - static_cast<i128>(a.p) * b.q;
      const i128 n2 = static_cast<i128>(d.p) * c.q - static_cast<i128>(c.p) * d.q;
      if (frac_less(n1, static_cast<i128>(a.q) * b.q, n2, static_cast<i128>(c.q) * d.q)) best = i;
    }
    res.min_pair_gap = frac_gap(res.rationals[best], res.rationals[best + 1]);
  }
  const Rational cell_gap = strict ? Rational(1, 2) / (Rational(cfg.Q) * cfg.Q) : Rational(0);
  for (const PsiSpec& psi : cfg.psis) {
    const CellScan scan = scan_cells(res.rationals, psi, cfg.k, cfg.ball, cell_gap);
    if (strict && scan.first_outside != SIZE_MAX) {
      throw Error(ErrorKind::kCertification,
                  "cell of " + to_string(res.rationals[scan.first_outside].value()) + " leaves B");
    }
    if (strict && scan.first_close != SIZE_MAX) {
      throw Error(ErrorKind::kCertification,
                  "cells of " + to_string(res.rationals[scan.first_close].value()) +
                      " and its successor are within 1/(2Q^2)");
    }
    res.min_cell_gap.push_back(scan.min_gap_lower);
  }
  return res;
}

SelectionReport verify_selection(const SelectionResult& res, const SelectionConfig& cfg) {
  SelectionReport rep;
  const auto& r = res.rationals;
  rep.empty = r.empty();
  auto add = [&](const std::string& name, const std::string& detail) {
    rep.violations.push_back({name, detail});
  };
  const std::int64_t qmin = window_q_min(cfg.Q);
  for (const Fraction& f : r) {
    if (f.q < qmin || f.q > cfg.Q) {
      add("denominator-window", to_string(f.value()) + " outside [" + std::to_string(qmin) + "," +
                                    std::to_string(cfg.Q) + "]");
      break;
    }
    if (std::gcd(f.p, f.q) != 1) {
      add("not-reduced", std::to_string(f.p) + "/" + std::to_string(f.q));
      break;
    }
  }
  const Rational sep = Rational(1) / (Rational(cfg.Q) * cfg.Q);
  const i128 QQ = static_cast<i128>(cfg.Q) * cfg.Q;
  std::size_t best = SIZE_MAX;
  bool flagged = false;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    const Fraction &a = r[i], &b = r[i + 1];
    const i128 cross = static_cast<i128>(b.p) * a.q - static_cast<i128>(a.p) * b.q;
    const i128 qq = static_cast<i128>(a.q) * b.q;
    if (best == SIZE_MAX) {
      best = i;
    } else {
      const Fraction &c = r[best], &d = r[best + 1];
      const i128 cb = static_cast<i128>(d.p) * c.q - static_cast<i128>(c.p) * d.q;
      if (frac_less(cross, qq, cb, static_cast<i128>(c.q) * d.q)) best = i;
    }
    if (!flagged && cross * QQ < qq) {
      flagged = true;
      add("separation", to_string(a.value()) + " and " + to_string(b.value()) + " are " +
                            to_string(Rational(b.value() - a.value())) + " apart");
    }
  }
  if (best != SIZE_MAX) rep.min_gap = r[best + 1].value() - r[best].value();
  const bool strict = cfg.mode == SelectMode::kStrict;
  const Rational cell_gap = strict ? sep / 2 : Rational(0);
  for (const PsiSpec& psi : cfg.psis) {
    const CellScan scan = scan_cells(r, psi, cfg.k, cfg.ball, cell_gap);
    rep.pairs_fast += scan.pairs_fast;
    rep.pairs_exact += scan.pairs_exact;
    rep.min_cell_gap.push_back(scan.min_gap_lower);
    if (!strict) continue;
    if (scan.first_outside != SIZE_MAX) {
      add("cell-containment", psi.label() + ": cell of " + to_string(r[scan.first_outside].value()));
    }
    if (scan.first_close != SIZE_MAX) {
      add("cell-separation", psi.label() + ": cells of " + to_string(r[scan.first_close].value()) +
                                 " and " + to_string(r[scan.first_close + 1].value()));
    }
  }
  return rep;
}

}  // namespace dioph
