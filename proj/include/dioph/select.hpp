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

// Separated rational selection with denominators in [Q/9, Q].

#ifndef DIOPH_SELECT_HPP_
#define DIOPH_SELECT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "dioph/approx.hpp"
#include "dioph/covering.hpp"
#include "dioph/psi.hpp"

namespace dioph {

enum class SelectMode { kStrict, kExploratory };

struct SelectionConfig {
  SelectMode mode = SelectMode::kExploratory;
  std::int64_t Q = 1;
  int k = 1;
  std::vector<PsiSpec> psis;
  RBall ball{Rational(1, 2), Rational(1, 2)};
  std::size_t max_candidates = 100'000'000;
};

struct SelectionResult {
  std::vector<Fraction> rationals;  // ascending
  std::int64_t q_min = 1;
  std::int64_t q_max = 1;
  BigInt guaranteed_count = 0;
  Rational min_pair_gap = 0;  // exact minimum over adjacent pairs
  // Per psi: certified lower bound on adjacent cell gaps (0 when < 2 cells).
  std::vector<Rational> min_cell_gap;
  std::size_t achieved_count() const { return rationals.size(); }
};

struct Violation {
  std::string name;
  std::string detail;
};

struct SelectionReport {
  bool empty = false;
  std::vector<Violation> violations;
  Rational min_gap = 0;
  std::vector<Rational> min_cell_gap;
  std::size_t pairs_fast = 0;   // certified by the double prefilter
  std::size_t pairs_exact = 0;  // certified by interval arithmetic
  bool ok() const { return violations.empty(); }
};

std::int64_t window_q_min(std::int64_t Q);

// 10000 |B|^-1 log(1/|B|) for radius |B|.
Interval strict_q_gate(const Rational& radius);

SelectionResult select_rationals(const SelectionConfig& cfg);
SelectionReport verify_selection(const SelectionResult& res, const SelectionConfig& cfg);

// Cell checks shared with verification: every cell inside `ball` and adjacent
// cells more than `gap` apart.
struct CellScan {
  std::size_t first_outside = SIZE_MAX;
  std::size_t first_close = SIZE_MAX;  // pair (i, i+1)
  Rational min_gap_lower = 0;
  std::size_t pairs_fast = 0;
  std::size_t pairs_exact = 0;
};

CellScan scan_cells(const std::vector<Fraction>& rationals, const PsiSpec& psi, int k,
                    const RBall& ball, const Rational& gap);

}  // namespace dioph

#endif  // DIOPH_SELECT_HPP_
