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

// Finite-depth Cantor subset of E(psi) in one dimension with its mass
// distribution.

#ifndef DIOPH_CANTOR_E_HPP_
#define DIOPH_CANTOR_E_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "dioph/covering.hpp"
#include "dioph/pack.hpp"
#include "dioph/psi.hpp"
#include "dioph/select.hpp"

namespace dioph {

enum class BuildMode { kStrict, kDesk };

struct EBudget {
  std::size_t max_nodes_per_level = 200'000;
  int max_sublevels = 2;                // 0: no cap
  std::size_t residual_samples = 8;     // covering balls packed per sub-level >= 2
  std::int64_t q_limit = std::int64_t{1} << 40;
  std::size_t max_candidates_per_ball = 2'000'000;
};

struct EConfig {
  PsiSpec psi = PsiSpec::power(Rational(1), Rational(3));
  Rational s{2, 3};
  Rational eta{1};
  PackConstants constants = PackConstants::desk_defaults();
  // Desk Q floor: Q >= sqrt(80 target / |B|) per packed ball.
  Rational target_per_ball{1};
  int depth = 2;
  EBudget budget;
  BuildMode mode = BuildMode::kDesk;

  static EConfig desk_defaults() { return {}; }
  std::vector<std::string> describe() const;
};

enum class NodeKind { kBall, kCell };
const char* to_string(NodeKind k);

struct ENode {
  std::int64_t id = 0;
  std::int64_t parent = -1;
  int level = 0;
  int sublevel = 0;
  NodeKind kind = NodeKind::kBall;
  Fraction pq{0, 1};  // cells only
  Ball1D ball;
  BigInt G = 0;
  Rational mass = 0;
  std::size_t first_child = 0;
  std::size_t child_count = 0;
};

struct ETree {
  std::vector<std::string> header;  // config echo
  std::vector<ENode> nodes;         // breadth-first; id == index
  bool renormalized = true;
  bool truncated = false;
  std::vector<std::string> notes;
};

// l_B; `capped` reports whether the budget cap was applied.
long sublevel_count(const ENode& node, const EConfig& cfg, bool* capped = nullptr);

// Smallest G > floor with C_n(p/q)/C_n^s(p/q) length ratio <= 1/(4 6^l),
// psi(q) < psi(q)^s and, when min_prev_s_radius is set, the s-radius of C_n at
// q at most a fifth of it, all for every q >= G.
BigInt choose_G(int level, int l, const BigInt& floor, const std::optional<Interval>& min_prev_s_radius,
                const EConfig& cfg);

ETree build_e_tree(const EConfig& cfg);

struct MassBracket {
  Rational lower;
  Rational upper;
};
MassBracket query_mass_nu(const ETree& tree, const Ball1D& ball);

struct ETreeReport {
  std::vector<Violation> violations;
  Interval scaling;  // max over non-root nodes of nu(L) eta / |L|^s
  std::int64_t scaling_node = -1;
  std::size_t nodes = 0;
  bool ok() const { return violations.empty(); }
};
ETreeReport verify_e_tree(const ETree& tree, const Rational& s, const Rational& eta);

}  // namespace dioph

#endif  // DIOPH_CANTOR_E_HPP_
