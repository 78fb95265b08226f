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

// Multi-scale packing of s-blowup cells with pairwise disjoint 3-blowups.

#ifndef DIOPH_PACK_HPP_
#define DIOPH_PACK_HPP_

#include <optional>
#include <string>
#include <vector>

#include "dioph/covering.hpp"
#include "dioph/psi.hpp"
#include "dioph/select.hpp"

namespace dioph {

struct PackConstants {
  Rational small_threshold;       // x^2 psi^s(x) bound on the base scale
  Rational window_lo, window_hi;  // window for the scaled partial sum
  Rational coverage_target;
  Rational q_floor_factor;        // f in max{f|B|^-1 log(2/|B|), f|B|^-1, 9Q0, 9Q'}
  Rational q0_threshold;          // q^2 psi(q) < q0_threshold for q >= Q0
  std::optional<BigInt> q_override;
  bool desk = false;              // report rather than assert the scale conditions
  int max_l = 64;
  long max_terms = 1'000'000;

  static PackConstants strict();
  // threshold 1/40, window [1/16, 1/8], coverage 1/200, Q floor factor 16,
  // Q0 threshold 1/4.
  static PackConstants desk_defaults();
  std::string describe() const;
};

struct PackPlan {
  BigInt Q;
  int l = 1;
  long N = 0;
  Interval q_gate;  // the maximum in the Q floor
  std::vector<BigInt> per_scale_counts;
  Interval term_first;   // Q^{2l} psi^s(Q^l/9)
  Interval window_sum;   // 2^{-(1+k)s} sum_{h=l}^{l+N} Q^{2h} psi^s(Q^h/9)
  bool small_condition = true;  // x^2 psi^s <= threshold 2^{(1+k)s} from Q^l/9 on
  bool psi_below_one = true;    // psi^s >= psi from Q^l/9 on
  bool window_ok = true;
  std::vector<std::string> notes;
};

PackPlan plan_pack(const RBall& B, const BigInt& q_prime, int k, const PsiSpec& psi,
                   const Rational& s, const PackConstants& consts);

struct PackCell {
  Fraction pq;
  int scale = 0;     // j in 0..N
  Ball1D cell;       // C_k(pq, psi)
  Ball1D cell_s;     // its s-blowup
};

struct PackResult {
  std::vector<PackCell> kept;  // scale-major, ascending within a scale
  std::vector<std::size_t> kept_per_scale;
  std::vector<std::size_t> dropped_per_scale;
  std::size_t dropped_outside = 0;
  std::size_t dropped_small_q = 0;
  Interval coverage_ratio;  // sum L(cell^s) / L(B)
  bool coverage_ok = false;
};

struct PackBudget {
  std::size_t max_candidates_per_scale = 5'000'000;
};

PackResult materialize_pack(const PackPlan& plan, const RBall& B, const BigInt& q_prime, int k,
                            const PsiSpec& psi, const Rational& s, const PackConstants& consts,
                            const PackBudget& budget = {});

struct PackReport {
  std::vector<Violation> violations;
  Interval coverage_ratio;
  bool ok() const { return violations.empty(); }
};

PackReport verify_pack(const PackResult& res, const RBall& B, const Rational& coverage_target,
                       const Rational& s);

}  // namespace dioph

#endif  // DIOPH_PACK_HPP_
