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

// Product Cantor set inside E(psi_1) x ... x E(psi_n): the Q_k schedule,
// rectangle lifting and division, the measure mu and a local dimension fit.

#ifndef DIOPH_CANTOR_PRODUCT_HPP_
#define DIOPH_CANTOR_PRODUCT_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dioph/approx.hpp"
#include "dioph/cantor_e.hpp"
#include "dioph/psi.hpp"
#include "dioph/select.hpp"

namespace dioph {

struct ScheduleConfig {
  BuildMode mode = BuildMode::kDesk;
  BigInt q1 = 20;  // desk only
  // Desk factor kappa_k replacing 2^{17+t} log(...) for k >= 2; the last entry
  // repeats.
  std::vector<Rational> kappa{Rational(1), Rational(1, 1000000)};
  std::size_t max_bits = 1 << 20;
};

struct QSchedule {
  std::vector<PsiSpec> psis;
  Rational epsilon;
  BigInt Q0;
  std::vector<BigInt> Q;  // Q[0] = Q_1
  BuildMode mode = BuildMode::kDesk;
  std::vector<Rational> kappa;
  std::vector<std::string> notes;

  std::size_t dim() const { return psis.size(); }
  // Level k = t n + l with 1 <= l <= n.
  int direction(int k) const { return (k - 1) % static_cast<int>(dim()) + 1; }
  int t_of(int k) const { return (k - 1) / static_cast<int>(dim()); }
};

QSchedule make_q_schedule(const std::vector<PsiSpec>& psis, const Rational& epsilon, int length,
                          const ScheduleConfig& cfg = {});

enum class PKind { kBall, kRect };
const char* to_string(PKind k);

struct PNode {
  std::int64_t id = 0;
  std::int64_t parent = -1;
  int level = 0;
  PKind kind = PKind::kBall;
  int dir = 0;  // rectangles and their balls: the thin direction (1-based)
  std::vector<Rational> centers;
  std::vector<Rational> radii;  // per direction; equal for balls
  Fraction source{0, 1};        // p_{k,i}/q_{k,i} for rectangles and their balls
  Rational mass = 0;
  BigInt declared = 0;  // full child count of the construction
  std::size_t first_child = 0;
  std::size_t child_count = 0;
};

struct PBudget {
  std::size_t rects_per_ball = 4;
  std::size_t balls_per_rect = 4;
  std::size_t max_candidates = 20'000'000;
  std::size_t max_nodes = 2'000'000;
};

struct ProductConfig {
  std::vector<PsiSpec> psis;
  Rational epsilon{1, 10};
  int depth = 3;
  ScheduleConfig schedule;
  PBudget budget;
  std::vector<std::string> describe() const;
};

struct PTree {
  std::vector<std::string> header;
  QSchedule schedule;
  int depth = 0;
  std::vector<PNode> nodes;
  bool truncated = false;
  std::vector<std::string> notes;
};

PTree build_product_tree(const ProductConfig& cfg);

struct PTreeReport {
  std::vector<Violation> violations;
  std::size_t nodes = 0;
  // Declared balls per rectangle over (|B_{k-1}| / r_{k,i})^{n-1}.
  double count_ratio_min = 0, count_ratio_max = 0;
  bool ok() const { return violations.empty(); }
};
PTreeReport verify_product_tree(const PTree& tree);

struct FitPoint {
  std::size_t sample = 0;
  int log2_delta = 0;  // delta = 2^-log2_delta
  Rational lower;
  Rational upper;
};

struct DimensionFit {
  double slope = 0;
  double stderr_ = 0;
  double intercept = 0;
  double target = 0;  // n - 1 + min 2/lambda_i
  std::vector<FitPoint> points;
};

// Upper and lower mu mass of the sup-norm ball B(x, delta), expanding the
// construction lazily below the materialized nodes.
MassBracket query_mass_mu(const PTree& tree, const std::vector<Rational>& x, const Rational& delta);

// Same query, keeping the expanded rational lists between calls. The tree must
// outlive the oracle.
class MuOracle {
 public:
  explicit MuOracle(const PTree& tree);
  ~MuOracle();
  MassBracket operator()(const std::vector<Rational>& x, const Rational& delta);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Samples leaf centers and fits log(upper mass) against log delta over dyadic
// delta = 2^-j, j in [j_min, j_max] (0: derived from the materialized radii).
DimensionFit local_dimension_fit(const PTree& tree, std::size_t sample_count, int j_min = 0, int j_max = 0);

}  // namespace dioph

#endif  // DIOPH_CANTOR_PRODUCT_HPP_
