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

#include "dioph/mass.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace dioph {

std::uint64_t CounterRng::draw(std::uint64_t stream, std::uint64_t counter) const {
  // splitmix64 finalizer over a keyed counter
  std::uint64_t z = seed_ ^ (stream * 0x9E3779B97F4A7C15ULL) ^ (counter * 0xD1B54A32D192ED03ULL);
  for (int round = 0; round < 2; ++round) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
  }
  return z;
}

double CounterRng::unit(std::uint64_t stream, std::uint64_t counter) const {
  return static_cast<double>(draw(stream, counter) >> 11) * 0x1.0p-53;
}

std::int64_t CounterRng::range(std::uint64_t stream, std::uint64_t counter, std::int64_t lo, std::int64_t hi) const {
  if (hi <= lo) return lo;
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(draw(stream, counter) % span);
}

Rational CounterRng::dyadic(std::uint64_t stream, std::uint64_t counter) const {
  BigInt num;
  const std::uint64_t v = draw(stream, counter);
  mpz_import(num.get_mpz_t(), 1, 1, sizeof v, 0, 0, &v);
  return reduce(num, BigInt(1) << 64);
}

namespace {

struct Site {
  std::vector<Rational> center;
  Rational radius;
};

using Query = std::function<MassBracket(const std::vector<Rational>&, const Rational&)>;

MdpReport run_mdp(const std::vector<Site>& sites, std::size_t dim, const Query& query, const Rational& s,
                  std::size_t samples, std::uint64_t seed) {
  if (s < 0) throw Error(ErrorKind::kInvalidInput, "s must be non-negative");
  MdpReport rep;
  rep.s = s;
  rep.seed = seed;
  if (sites.empty() || samples == 0) return rep;
  Rational r_max = sites.front().radius, r_min = r_max;
  for (const Site& v : sites) {
    r_max = std::max(r_max, v.radius);
    if (v.radius > 0) r_min = std::min(r_min, v.radius);
  }
  const auto j_top = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(-log2_rational(r_max))));
  const auto j_bot = std::max(j_top, static_cast<std::int64_t>(std::ceil(-log2_rational(r_min))));
  const CounterRng rng(seed);
  const double sd = s.get_d();
  rep.max_ratio = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    MdpSample smp;
    const std::int64_t j = rng.range(0, i, j_top, j_bot);
    smp.radius = Rational(1, BigInt(1) << static_cast<unsigned long>(j));
    smp.on_set = i % 2 == 0;
    if (smp.on_set) {
      const auto pick = rng.range(1, i, 0, static_cast<std::int64_t>(sites.size()) - 1);
      smp.center = sites[static_cast<std::size_t>(pick)].center;
    } else {
      for (std::size_t d = 0; d < dim; ++d) smp.center.push_back(rng.dyadic(2 + d, i));
    }
    smp.mass = query(smp.center, smp.radius);
    if (smp.mass.upper > 0) {
      smp.log2_ratio = log2_rational(smp.mass.upper) + sd * static_cast<double>(j);
      const double ratio = std::exp2(smp.log2_ratio);
      if (ratio > rep.max_ratio) {
        rep.max_ratio = ratio;
        rep.worst = i;
      }
      ++rep.histogram[static_cast<int>(std::floor(smp.log2_ratio))];
    } else {
      smp.log2_ratio = -std::numeric_limits<double>::infinity();
      ++rep.zero_mass;
    }
    rep.samples.push_back(std::move(smp));
  }
  return rep;
}

}  // namespace

MdpReport mdp_check(const ETree& tree, const Rational& s, std::size_t samples, std::uint64_t seed) {
  std::vector<Site> sites;
  for (const ENode& v : tree.nodes) {
    sites.push_back({{v.ball.center.mid_rational()}, v.ball.radius.mid_rational()});
  }
  const Query q = [&](const std::vector<Rational>& x, const Rational& r) {
    return query_mass_nu(tree, Ball1D::exact(x.front(), r));
  };
  return run_mdp(sites, 1, q, s, samples, seed);
}

MdpReport mdp_check(const PTree& tree, const Rational& s, std::size_t samples, std::uint64_t seed) {
  std::vector<Site> sites;
  for (const PNode& v : tree.nodes) {
    if (v.kind == PKind::kBall) sites.push_back({v.centers, v.radii.front()});
  }
  MuOracle oracle(tree);
  const Query q = [&](const std::vector<Rational>& x, const Rational& r) { return oracle(x, r); };
  return run_mdp(sites, tree.schedule.dim(), q, s, samples, seed);
}

}  // namespace dioph
