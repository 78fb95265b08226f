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

// Measure and dimension classifiers, and band witnesses.

#ifndef DIOPH_ANALYSIS_HPP_
#define DIOPH_ANALYSIS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "dioph/approx.hpp"
#include "dioph/psi.hpp"

namespace dioph {

enum class SeriesVerdict { kConvergent, kDivergent, kUnknown };
const char* to_string(SeriesVerdict v);

// sum over n of n * psi(n)^s.
SeriesVerdict classify_series(const PsiSpec& psi, const Rational& s);

enum class MeasureKind { kZero, kInfiniteHs, kFullLebesgue, kUndetermined };
const char* to_string(MeasureKind k);

struct MeasureVerdict {
  Rational s;
  MeasureKind kind = MeasureKind::kUndetermined;
  std::string reason;
  HypothesisReport hypotheses;
  SeriesVerdict series = SeriesVerdict::kUnknown;
};

MeasureVerdict classify_hausdorff(const PsiSpec& psi, const Rational& s);

struct DimValue {
  std::optional<Rational> exact;
  double value = 0.0;
  bool estimate_only = false;
  std::string to_string() const;
};

DimValue dim_e(const PsiSpec& psi);
DimValue dim_product(const std::vector<PsiSpec>& psis);

struct Witness {
  BigInt p;
  BigInt q;
  bool convergent = true;  // false for an intermediate fraction
};

struct WitnessSearch {
  std::vector<Witness> witnesses;
  std::size_t examined = 0;
  std::size_t undecided = 0;
};

// Scans convergents and intermediate fractions with q <= q_max and keeps the
// certified members of (1 - eps) psi(q) < |x - p/q| < psi(q).
WitnessSearch witness_search(const RealSpec& x, const PsiSpec& psi, const Rational& eps,
                             const BigInt& q_max);

// Re-checks one witness from scratch at the given working precision.
bool verify_witness(const RealSpec& x, const PsiSpec& psi, const Rational& eps, const Witness& w,
                    int bits);

}  // namespace dioph

#endif  // DIOPH_ANALYSIS_HPP_
