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

// Empirical mass-distribution checks on built trees, and the seeded
// counter-based generator shared by every sampling routine.

#ifndef DIOPH_MASS_HPP_
#define DIOPH_MASS_HPP_

#include <cstdint>
#include <map>
#include <vector>

#include "dioph/cantor_e.hpp"
#include "dioph/cantor_product.hpp"
#include "dioph/numerics.hpp"

namespace dioph {

// Stateless: draw(stream, i) depends only on (seed, stream, i), so samples can
// be split across workers without changing results.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t draw(std::uint64_t stream, std::uint64_t counter) const;
  // Uniform in [0, 1) on the grid 2^-53.
  double unit(std::uint64_t stream, std::uint64_t counter) const;
  // Uniform in [lo, hi].
  std::int64_t range(std::uint64_t stream, std::uint64_t counter, std::int64_t lo, std::int64_t hi) const;
  // Exact dyadic uniform in [0, 1) with 64 random bits.
  Rational dyadic(std::uint64_t stream, std::uint64_t counter) const;

 private:
  std::uint64_t seed_;
};

struct MdpSample {
  std::vector<Rational> center;
  Rational radius;
  bool on_set = false;  // centered on a materialized node
  MassBracket mass;
  double log2_ratio = 0;  // log2(upper / radius^s); -inf for zero mass
};

struct MdpReport {
  Rational s;
  std::uint64_t seed = 0;
  double max_ratio = 0;  // max upper / radius^s
  std::size_t worst = 0;
  std::size_t zero_mass = 0;
  // floor(log2 ratio) -> count, zero-mass samples excluded.
  std::map<int, std::size_t> histogram;
  std::vector<MdpSample> samples;
};

// Half of the balls are centered on materialized nodes, half uniformly in the
// unit cube. Radii are dyadic between the root radius and the smallest node
// radius.
MdpReport mdp_check(const ETree& tree, const Rational& s, std::size_t samples, std::uint64_t seed);
MdpReport mdp_check(const PTree& tree, const Rational& s, std::size_t samples, std::uint64_t seed);

}  // namespace dioph

#endif  // DIOPH_MASS_HPP_
