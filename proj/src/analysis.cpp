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

#include "dioph/analysis.hpp"

#include <cstdio>
#include <limits>

namespace dioph {

const char* to_string(SeriesVerdict v) {
  switch (v) {
    case SeriesVerdict::kConvergent: return "Convergent";
    case SeriesVerdict::kDivergent: return "Divergent";
    case SeriesVerdict::kUnknown: return "Unknown";
  }
  return "?";
}

const char* to_string(MeasureKind k) {
  switch (k) {
    case MeasureKind::kZero: return "Zero";
    case MeasureKind::kInfiniteHs: return "InfiniteHs";
    case MeasureKind::kFullLebesgue: return "FullLebesgue";
    case MeasureKind::kUndetermined: return "Undetermined";
  }
  return "?";
}

SeriesVerdict classify_series(const PsiSpec& psi, const Rational& s) {
  if (s <= 0 || s > 1) throw Error(ErrorKind::kInvalidInput, "s must lie in (0,1]");
  if (const auto* p = std::get_if<PowerLaw>(&psi.family())) {
    // sum n^{1 - tau s}
    return p->tau * s <= 2 ? SeriesVerdict::kDivergent : SeriesVerdict::kConvergent;
  }
  if (const auto* p = std::get_if<PowerLog>(&psi.family())) {
    // sum n^{1 - tau s} log(n+2)^{-beta s}: Bertrand series.
    const Rational a = p->tau * s, b = p->beta * s;
    if (a < 2) return SeriesVerdict::kDivergent;
    if (a > 2) return SeriesVerdict::kConvergent;
    return b <= 1 ? SeriesVerdict::kDivergent : SeriesVerdict::kConvergent;
  }
  if (std::holds_alternative<Exponential>(psi.family())) return SeriesVerdict::kConvergent;
  return SeriesVerdict::kUnknown;
}

MeasureVerdict classify_hausdorff(const PsiSpec& psi, const Rational& s) {
  MeasureVerdict v;
  v.s = s;
  v.hypotheses = check_hypotheses(psi, s);
  v.series = classify_series(psi, s);
  const HypothesisReport& h = v.hypotheses;
  if (!h.non_increasing.holds()) {
    v.reason = "psi increases: " + to_string(h.non_increasing);
  } else if (!h.x2_psi_s_non_increasing.holds()) {
    v.reason = "x^2 psi^s not non-increasing: " + to_string(h.x2_psi_s_non_increasing);
  } else if (s == 1 && !h.little_o_x2.holds()) {
    v.reason = "psi is not o(x^-2): " + to_string(h.little_o_x2);
  } else if (v.series == SeriesVerdict::kUnknown) {
    v.reason = "series convergence not decidable for this family";
  }
  if (!v.reason.empty()) return v;
  if (v.series == SeriesVerdict::kConvergent) {
    v.kind = MeasureKind::kZero;
  } else {
    v.kind = s == 1 ? MeasureKind::kFullLebesgue : MeasureKind::kInfiniteHs;
  }
  return v;
}

std::string DimValue::to_string() const {
  if (exact) return to_short_string(*exact);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g%s", value, estimate_only ? " (estimate)" : "");
  return buf;
}

DimValue dim_e(const PsiSpec& psi) {
  const HypothesisReport h = check_hypotheses(psi, Rational(1));
  if (!h.non_increasing.holds()) {
    throw Error(ErrorKind::kHypothesisViolation, psi.label() + ": psi is not non-increasing");
  }
  if (!h.little_o_x2.holds()) {
    throw Error(ErrorKind::kHypothesisViolation, psi.label() + ": psi is not o(x^-2)");
  }
  const LambdaInfo lam = lambda_of(psi);
  DimValue d;
  if (lam.infinite) {
    d.exact = Rational(0);
  } else if (lam.exact) {
    d.exact = Rational(2) / *lam.exact;
  } else {
    d.estimate_only = true;
    d.value = lam.estimate > 0 ? 2.0 / lam.estimate : std::numeric_limits<double>::infinity();
  }
  if (d.exact) d.value = d.exact->get_d();
  return d;
}

DimValue dim_product(const std::vector<PsiSpec>& psis) {
  if (psis.empty()) throw Error(ErrorKind::kInvalidInput, "dim_product needs at least one psi");
  const Rational lift(static_cast<long>(psis.size()) - 1);
  std::optional<DimValue> best;
  for (const PsiSpec& psi : psis) {
    DimValue d = dim_e(psi);
    if (d.exact) *d.exact += lift;
    d.value += lift.get_d();
    if (!best || d.value < best->value ||
        (d.exact && best->exact && *d.exact < *best->exact)) {
      best = d;
    }
  }
  return *best;
}

namespace {

enum class Band { kInside, kOutside, kUndecided };

Band band_check(const RealSpec& x, const PsiSpec& psi, const Rational& eps, const BigInt& p,
                const BigInt& q, int bits) {
  const Rational pq = reduce(p, q);
  const Interval psi_q = psi.evaluate(Rational(q), bits);
  try {
    if (psi_q.is_exact() && !x.is_rational()) {
      // Exact: compare x with p/q +- bounds on the correct side.
      const Rational upper = *psi_q.exact_value();
      const Rational lower = (1 - eps) * upper;
      const int side = x.compare(pq);
      if (side == 0) return Band::kOutside;
      const bool below_upper = side > 0 ? x.compare(pq + upper) < 0 : x.compare(pq - upper) > 0;
      const bool above_lower = side > 0 ? x.compare(pq + lower) > 0 : x.compare(pq - lower) < 0;
      return below_upper && above_lower ? Band::kInside : Band::kOutside;
    }
    const Interval d = x.abs_diff(pq, bits);
    const Interval lo = Interval::exact(1 - eps, bits) * psi_q;
    const bool ok = cmp_certified(lo, d) == Order::kLess && cmp_certified(d, psi_q) == Order::kLess;
    return ok ? Band::kInside : Band::kOutside;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kUndecided) throw;
    return Band::kUndecided;
  }
}

}  // namespace

bool verify_witness(const RealSpec& x, const PsiSpec& psi, const Rational& eps, const Witness& w,
                    int bits) {
  return band_check(x, psi, eps, w.p, w.q, bits) == Band::kInside;
}

WitnessSearch witness_search(const RealSpec& x, const PsiSpec& psi, const Rational& eps,
                             const BigInt& q_max) {
  if (eps <= 0 || eps >= 1) throw Error(ErrorKind::kInvalidInput, "eps must lie in (0,1)");
  if (q_max < 1) throw Error(ErrorKind::kInvalidInput, "q_max must be >= 1");
  WitnessSearch out;
  auto consider = [&](const BigInt& p, const BigInt& q, bool convergent) {
    ++out.examined;
    switch (band_check(x, psi, eps, p, q, kDefaultPrecision)) {
      case Band::kInside: out.witnesses.push_back({p, q, convergent}); break;
      case Band::kUndecided: ++out.undecided; break;
      case Band::kOutside: break;
    }
  };
  const ConvergentList cl = cf_convergents(x, q_max);
  const auto quotients = x.partial_quotients(cl.items.size() + 1);
  for (std::size_t k = 0; k < cl.items.size(); ++k) {
    // Intermediate fractions between c_{k-1} and c_{k+1}:
    // (p_{k-1} + m p_k) / (q_{k-1} + m q_k), 0 < m < a_{k+1}.
    const Convergent& c = cl.items[k];
    consider(c.p, c.q, true);
    if (k + 1 >= quotients.size()) continue;
    const BigInt prev_p = k == 0 ? BigInt(1) : cl.items[k - 1].p;
    const BigInt prev_q = k == 0 ? BigInt(0) : cl.items[k - 1].q;
    const BigInt& a_next = quotients[k + 1];
    for (BigInt m = 1; m < a_next; ++m) {
      const BigInt q = prev_q + m * c.q;
      if (q > q_max) break;
      consider(prev_p + m * c.p, q, false);
    }
  }
  return out;
}

}  // namespace dioph
