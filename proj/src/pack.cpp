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

#include "dioph/pack.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "dioph/analysis.hpp"

namespace dioph {

PackConstants PackConstants::strict() {
  PackConstants c;
  c.small_threshold = Rational(1, 1000000);
  c.window_lo = Rational(1, 128);
  c.window_hi = Rational(1, 64);
  c.coverage_target = Rational(1, 10000000);
  c.q_floor_factor = 20000;
  c.q0_threshold = Rational(1, 1000);
  return c;
}

PackConstants PackConstants::desk_defaults() {
  PackConstants c = strict();
  c.small_threshold = Rational(1, 40);
  c.window_lo = Rational(1, 16);
  c.window_hi = Rational(1, 8);
  c.coverage_target = Rational(1, 200);
  c.q_floor_factor = 16;
  c.q0_threshold = Rational(1, 4);
  c.desk = true;
  return c;
}

std::string PackConstants::describe() const {
  std::ostringstream os;
  os << "threshold=" << to_short_string(small_threshold) << " window=[" << to_short_string(window_lo)
     << "," << to_short_string(window_hi) << "] coverage=" << to_short_string(coverage_target)
     << " q_floor_factor=" << to_short_string(q_floor_factor)
     << " q0_threshold=" << to_short_string(q0_threshold);
  if (q_override) os << " Q=" << q_override->get_str();
  os << " mode=" << (desk ? "desk" : "strict");
  return os.str();
}

namespace {

Interval I(const Rational& r) { return Interval::exact(r); }
Interval I(const BigInt& z) { return Interval::exact(Rational(z)); }

bool ge(const Interval& a, const Interval& b) { return cmp_certified(a, b) != Order::kLess; }
bool le(const Interval& a, const Interval& b) { return cmp_certified(a, b) != Order::kGreater; }

// Smallest integer >= x.
BigInt int_ceil(const Interval& x) {
  BigInt q = ceil(x.lo_rational());
  while (!le(x, I(q))) ++q;
  while (q > 1 && le(x, I(BigInt(q - 1)))) --q;
  return q;
}

Interval two_pow_neg_ks(int k, const Rational& s) {
  return eval_power(I(Rational(2)), -Rational(1 + k) * s);
}

}  // namespace

PackPlan plan_pack(const RBall& B, const BigInt& q_prime, int k, const PsiSpec& psi,
                   const Rational& s, const PackConstants& consts) {
  if (s <= 0 || s > 1) throw Error(ErrorKind::kInvalidInput, "s must lie in (0,1]");
  if (k < 1) throw Error(ErrorKind::kInvalidInput, "k must be >= 1");
  if (B.radius <= 0 || B.lo() < 0 || B.hi() > 1) {
    throw Error(ErrorKind::kInvalidInput, "pack: ball must be a nonempty subset of [0,1]");
  }
  PackPlan plan;
  auto require = [&](bool ok, ErrorKind kind, const std::string& what) {
    if (ok) return;
    if (!consts.desk) throw Error(kind, what);
    plan.notes.push_back(what);
  };
  const HypothesisReport h = check_hypotheses(psi, s);
  const SeriesVerdict series = classify_series(psi, s);
  if (series != SeriesVerdict::kDivergent) {
    throw Error(ErrorKind::kHypothesisViolation,
                std::string("series sum n psi^s(n) is ") + to_string(series) + ", not Divergent");
  }
  require(h.x2_psi_s_non_increasing.holds(), ErrorKind::kHypothesisViolation,
          "x^2 psi^s is not non-increasing: " + to_string(h.x2_psi_s_non_increasing));

  // Q floor.
  const Interval r = I(B.radius);
  const Interval f = I(consts.q_floor_factor);
  Interval gate = interval_max(f / r * eval_log(I(Rational(2)) / r), f / r);
  gate = interval_max(gate, I(Rational(9 * q_prime)));
  std::optional<BigInt> q0;
  if (consts.q0_threshold == Rational(1, 1000)) {
    q0 = h.q0;
  } else {
    const Rational thr = consts.q0_threshold;
    try {
      // q^2 psi(q) non-increasing is assumed through the monotone search.
      q0 = first_true(
          BigInt(1),
          [&](const BigInt& q) {
            return cmp_certified(I(Rational(q * q)) * psi.evaluate(q), I(thr)) == Order::kLess;
          },
          pow(BigInt(10), 40));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kBudgetExceeded) throw;
    }
  }
  require(q0.has_value(), ErrorKind::kHypothesisViolation, "no Q0 with q^2 psi(q) below threshold");
  if (q0) gate = interval_max(gate, I(Rational(9 * *q0)));
  plan.q_gate = gate;
  if (consts.q_override) {
    plan.Q = *consts.q_override;
    require(le(gate, I(plan.Q)), ErrorKind::kHypothesisViolation,
            "Q=" + plan.Q.get_str() + " is below the floor " + gate.to_string());
  } else {
    plan.Q = int_ceil(gate);
  }
  if (plan.Q < 2) throw Error(ErrorKind::kInvalidInput, "pack: Q must be >= 2");

  // Base scale l.
  const Interval scaled_thr = I(consts.small_threshold) / two_pow_neg_ks(k, s);
  std::optional<int> first_small_psi;
  bool found = false;
  for (int l = 1; l <= consts.max_l; ++l) {
    const Rational x = Rational(pow(plan.Q, l)) / 9;
    const bool below_one = le(psi.evaluate(x), I(Rational(1)));
    if (below_one && !first_small_psi) first_small_psi = l;
    const bool small = le(I(x * x) * psi.evaluate_pow(x, s), scaled_thr);
    if (below_one && small) {
      plan.l = l;
      found = true;
      break;
    }
  }
  if (!found) {
    require(false, ErrorKind::kHypothesisViolation,
            "no base scale l <= " + std::to_string(consts.max_l) +
                " with x^2 psi^s(x) <= threshold 2^{(1+k)s} and psi <= 1 beyond Q^l/9");
    plan.l = first_small_psi.value_or(1);
    const Rational x = Rational(pow(plan.Q, plan.l)) / 9;
    plan.psi_below_one = le(psi.evaluate(x), I(Rational(1)));
    plan.small_condition = le(I(x * x) * psi.evaluate_pow(x, s), scaled_thr);
  }

  // Window length N.
  const Interval factor = two_pow_neg_ks(k, s);
  Interval sum = I(Rational(0));
  for (long n = 0;; ++n) {
    if (n >= consts.max_terms) {
      throw Error(ErrorKind::kNoWindow, "partial sums stay below the window after " +
                                            std::to_string(consts.max_terms) + " terms");
    }
    const BigInt Qh = pow(plan.Q, static_cast<unsigned long>(plan.l + n));
    const Interval term = I(Rational(Qh * Qh)) * psi.evaluate_pow(Rational(Qh) / 9, s);
    if (n == 0) plan.term_first = term;
    sum = sum + term;
    const Interval w = factor * sum;
    if (ge(w, I(consts.window_lo))) {
      plan.N = n;
      plan.window_sum = w;
      if (!le(w, I(consts.window_hi))) {
        plan.window_ok = false;
        if (!consts.desk || n > 0) {
          require(false, ErrorKind::kNoWindow,
                  "partial sum jumps over the window at N=" + std::to_string(n) + ": " + w.to_string());
        } else {
          plan.notes.push_back("first term already exceeds the window; N=0");
        }
      }
      break;
    }
  }
  for (long j = 0; j <= plan.N; ++j) {
    const BigInt Qh = pow(plan.Q, static_cast<unsigned long>(plan.l + j));
    plan.per_scale_counts.push_back(floor(Rational(B.radius * Qh * Qh / 160)));
  }
  return plan;
}

PackResult materialize_pack(const PackPlan& plan, const RBall& B, const BigInt& q_prime, int k,
                            const PsiSpec& psi, const Rational& s, const PackConstants& consts,
                            const PackBudget& budget) {
  PackResult res;
  const Ball1D outer = B.ball();
  // Kept 3-blowups keyed by exact midpoint of the center enclosure.
  std::map<Rational, Ball1D> kept3;
  Interval total = I(Rational(0));
  const BigInt limit = BigInt(1) << 62;
  for (long j = 0; j <= plan.N; ++j) {
    const BigInt Qj = pow(plan.Q, static_cast<unsigned long>(plan.l + j));
    if (Qj > limit || plan.per_scale_counts[j] > BigInt(static_cast<unsigned long>(budget.max_candidates_per_scale))) {
      throw Error(ErrorKind::kBudgetExceeded,
                  "scale j=" + std::to_string(j) + " needs about " + plan.per_scale_counts[j].get_str() +
                      " rationals");
    }
    SelectionConfig cfg;
    cfg.mode = SelectMode::kExploratory;
    cfg.Q = Qj.get_si();
    cfg.k = k;
    cfg.ball = {B.center, B.radius / 2};
    cfg.max_candidates = budget.max_candidates_per_scale;
    const SelectionResult sel = select_rationals(cfg);
    std::size_t kept_here = 0, dropped_here = 0;
    for (const Fraction& f : sel.rationals) {
      if (BigInt(static_cast<long>(f.q)) < q_prime) {
        ++res.dropped_small_q;
        continue;
      }
      const Cell c = make_cell(f.value(), psi, k);
      PackCell pc{f, static_cast<int>(j), c.ball(), blowup_s(c.ball(), s)};
      const Ball1D three = scale(pc.cell_s, Rational(3));
      if (!contains(outer, three)) {
        if (!consts.desk) {
          throw Error(ErrorKind::kCertification, "3-blowup of " + to_string(f.value()) + " leaves B");
        }
        ++res.dropped_outside;
        continue;
      }
      const Rational key = three.center.mid_rational();
      auto next = kept3.lower_bound(key);
      bool clash = false;
      if (next != kept3.end() && !disjoint(three, next->second)) clash = true;
      if (!clash && next != kept3.begin() && !disjoint(three, std::prev(next)->second)) clash = true;
      if (clash) {
        ++dropped_here;
        continue;
      }
      kept3.emplace(key, three);
      total = total + pc.cell_s.radius;
      res.kept.push_back(std::move(pc));
      ++kept_here;
    }
    res.kept_per_scale.push_back(kept_here);
    res.dropped_per_scale.push_back(dropped_here);
  }
  // L(cell^s) / L(B) = radius / |B| summed.
  res.coverage_ratio = total / I(B.radius);
  res.coverage_ok = cmp_certified(res.coverage_ratio, I(consts.coverage_target)) != Order::kLess;
  if (!res.coverage_ok && !consts.desk) {
    throw Error(ErrorKind::kCoverageShortfall, "coverage " + res.coverage_ratio.to_string() +
                                                   " below " + to_short_string(consts.coverage_target));
  }
  return res;
}

PackReport verify_pack(const PackResult& res, const RBall& B, const Rational& coverage_target,
                       const Rational& /*s*/) {
  PackReport rep;
  const Ball1D outer = B.ball();
  std::vector<Ball1D> three;
  three.reserve(res.kept.size());
  for (const PackCell& pc : res.kept) {
    three.push_back(scale(pc.cell_s, Rational(3)));
    if (!contains(outer, three.back())) {
      rep.violations.push_back({"containment", "3-blowup of " + to_string(pc.pq.value()) + " leaves B"});
    }
  }
  // Sweep by left endpoint, tracking the interval reaching furthest right.
  std::vector<std::size_t> order(three.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<Rational> keys;
  keys.reserve(three.size());
  for (const auto& b : three) keys.push_back(b.lo().mid_rational());
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  std::optional<std::size_t> reach;
  for (std::size_t idx : order) {
    if (reach && !disjoint(three[*reach], three[idx])) {
      rep.violations.push_back({"disjointness", "3-blowups of " + to_string(res.kept[*reach].pq.value()) +
                                                    " and " + to_string(res.kept[idx].pq.value()) + " meet"});
      break;
    }
    if (!reach || cmp_certified(three[idx].hi(), three[*reach].hi()) == Order::kGreater) reach = idx;
  }
  Interval total = I(Rational(0));
  for (const PackCell& pc : res.kept) total = total + pc.cell_s.radius;
  rep.coverage_ratio = total / I(B.radius);
  if (cmp_certified(rep.coverage_ratio, I(coverage_target)) == Order::kLess) {
    rep.violations.push_back({"coverage", rep.coverage_ratio.to_string() + " < " + to_short_string(coverage_target)});
  }
  return rep;
}

}  // namespace dioph
