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

#include "dioph/cantor_e.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "dioph/analysis.hpp"

namespace dioph {

namespace {

Interval I(const Rational& r) { return Interval::exact(r); }

// Smallest integer Q with Q^2 >= x.
BigInt ceil_sqrt(const Rational& x) {
  BigInt q = sqrt(ceil(x));
  while (Rational(q * q) < x) ++q;
  return q;
}

// A rational ball inside b.
RBall inner_rball(const Ball1D& b) {
  if (b.center.is_exact() && b.radius.is_exact()) return {*b.center.exact_value(), *b.radius.exact_value()};
  const Rational c = b.center.mid_rational();
  Rational err = c - b.center.lo_rational();
  if (b.center.hi_rational() - c > err) err = b.center.hi_rational() - c;
  return {c, b.radius.lo_rational() - err};
}

Rational weight_of(const Interval& w) { return w.is_exact() ? *w.exact_value() : w.mid_rational(); }

}  // namespace

const char* to_string(NodeKind k) { return k == NodeKind::kBall ? "ball" : "cell"; }

std::vector<std::string> EConfig::describe() const {
  std::vector<std::string> out;
  out.push_back("psi=" + psi.label());
  out.push_back("s=" + to_short_string(s) + " eta=" + to_short_string(eta) + " depth=" + std::to_string(depth));
  out.push_back(std::string("mode=") + (mode == BuildMode::kDesk ? "desk" : "strict"));
  out.push_back("pack " + constants.describe());
  std::ostringstream b;
  b << "budget max_nodes_per_level=" << budget.max_nodes_per_level << " max_sublevels=" << budget.max_sublevels
    << " residual_samples=" << budget.residual_samples << " q_limit=" << budget.q_limit
    << " max_candidates_per_ball=" << budget.max_candidates_per_ball
    << " target_per_ball=" << to_short_string(target_per_ball);
  out.push_back(b.str());
  return out;
}

long sublevel_count(const ENode& node, const EConfig& cfg, bool* capped) {
  const Interval L = I(Rational(2)) * node.ball.radius;
  Interval v;
  if (node.level == 0) {
    v = I(cfg.eta) / L;
  } else {
    v = I(Rational(4)) * eval_power(node.ball.radius, cfg.s) / L;
  }
  BigInt n = certified_floor(v) + 1;
  bool cap = false;
  if (cfg.budget.max_sublevels > 0 && n > cfg.budget.max_sublevels) {
    n = cfg.budget.max_sublevels;
    cap = true;
  }
  if (capped) *capped = cap;
  if (!n.fits_slong_p()) throw Error(ErrorKind::kBudgetExceeded, "sub-level count " + n.get_str());
  return n.get_si();
}

BigInt choose_G(int level, int l, const BigInt& floor_q, const std::optional<Interval>& min_prev_s_radius,
                const EConfig& cfg) {
  if (cfg.s >= 1) throw Error(ErrorKind::kInvalidInput, "the Cantor construction needs s < 1");
  const Interval ratio_bound = I(Rational(1) / (4 * pow(Rational(6), l)));
  std::optional<Interval> small;
  if (min_prev_s_radius) small = *min_prev_s_radius / I(Rational(5));
  auto pred = [&](const BigInt& q) {
    const Interval psi_q = cfg.psi.evaluate(q);
    if (cmp_certified(psi_q, I(Rational(1))) != Order::kLess) return false;
    const Interval r = psi_q / I(Rational(BigInt(1) << (level + 1)));
    if (cmp_certified(eval_power(r, 1 - cfg.s), ratio_bound) == Order::kGreater) return false;
    if (small && cmp_certified(eval_power(r, cfg.s), *small) == Order::kGreater) return false;
    return true;
  };
  try {
    return first_true(floor_q + 1, pred, pow(BigInt(10), 60));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kBudgetExceeded) throw;
    throw Error(ErrorKind::kBudgetExceeded, "no G_{" + std::to_string(level) + "," + std::to_string(l) +
                                                "} below 10^60 for " + cfg.psi.label());
  }
}

namespace {

struct Child {
  Fraction pq;
  int sublevel;
  BigInt G;
  Ball1D ball;
  Interval s_radius;
  Rational weight;
};

struct PackOutcome {
  std::vector<PackCell> kept;
  bool truncated = false;
};

PackOutcome pack_ball(const RBall& B, const BigInt& G, int n, const EConfig& cfg) {
  PackOutcome out;
  PackBudget budget{cfg.budget.max_candidates_per_ball};
  PackConstants consts = cfg.constants;
  PackPlan plan;
  if (cfg.mode == BuildMode::kStrict) {
    plan = plan_pack(B, G, n, cfg.psi, cfg.s, consts);
  } else {
    // One scale, Q >= 9G and large enough for about `target` rationals.
    consts.desk = true;
    BigInt Q = ceil_sqrt(Rational(80) * cfg.target_per_ball / B.radius);
    if (Q < 9 * G) Q = 9 * G;
    if (Q > cfg.budget.q_limit) {
      out.truncated = true;
      return out;
    }
    plan.Q = Q;
    plan.per_scale_counts.push_back(floor(Rational(B.radius * Q * Q / 160)));
  }
  try {
    out.kept = materialize_pack(plan, B, G, n, cfg.psi, cfg.s, consts, budget).kept;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kBudgetExceeded || cfg.mode == BuildMode::kStrict) throw;
    out.truncated = true;
  }
  return out;
}

// (3/5)P minus the given open holes, as closed rational segments.
std::vector<Segment> residual(const RBall& P, std::vector<Segment> holes) {
  const Rational r = P.radius * Rational(3, 5);
  std::vector<Segment> out;
  Rational at = P.center - r;
  const Rational end = P.center + r;
  std::sort(holes.begin(), holes.end(), [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  for (const Segment& h : holes) {
    if (h.hi <= at) continue;
    if (h.lo >= end) break;
    if (h.lo > at) out.push_back({at, h.lo});
    at = h.hi;
  }
  if (at < end) out.push_back({at, end});
  return out;
}

// `count` covering balls spread evenly over the greedy grid cover.
std::vector<RBall> sample_cover(const std::vector<Segment>& segs, const Rational& r, std::size_t count,
                                BigInt* total) {
  std::vector<RBall> out;
  if (segs.empty()) return out;
  const std::vector<CenterRun> runs = grid_cover_runs(segs, r, segs.front().lo);
  *total = total_count(runs);
  if (*total == 0) return out;
  const BigInt S = std::min<BigInt>(*total, BigInt(static_cast<unsigned long>(count)));
  std::size_t run = 0;
  BigInt before = 0;
  for (BigInt j = 0; j < S; ++j) {
    const BigInt idx = ((2 * j + 1) * *total) / (2 * S);
    while (before + runs[run].count <= idx) before += runs[run++].count;
    out.push_back({runs[run].start + Rational(idx - before) * 2 * r, r});
  }
  return out;
}

}  // namespace

ETree build_e_tree(const EConfig& cfg) {
  if (cfg.s <= 0 || cfg.s >= 1) throw Error(ErrorKind::kInvalidInput, "the Cantor construction needs 0 < s < 1");
  if (cfg.eta <= 0) throw Error(ErrorKind::kInvalidInput, "eta must be positive");
  if (cfg.depth < 0) throw Error(ErrorKind::kInvalidInput, "depth must be >= 0");
  ETree tree;
  tree.header = cfg.describe();
  const SeriesVerdict series = classify_series(cfg.psi, cfg.s);
  const HypothesisReport h = check_hypotheses(cfg.psi, cfg.s);
  std::vector<std::string> problems;
  if (series != SeriesVerdict::kDivergent) {
    problems.push_back(std::string("series sum n psi^s(n) is ") + to_string(series));
  }
  if (!h.non_increasing.holds()) problems.push_back("psi not non-increasing: " + to_string(h.non_increasing));
  if (!h.x2_psi_s_non_increasing.holds()) {
    problems.push_back("x^2 psi^s not non-increasing: " + to_string(h.x2_psi_s_non_increasing));
  }
  for (const auto& p : problems) {
    if (cfg.mode == BuildMode::kStrict) throw Error(ErrorKind::kHypothesisViolation, p);
    tree.notes.push_back("warning: " + p);
  }

  ENode root;
  root.ball = Ball1D::exact(Rational(1, 2), Rational(1, 2));
  root.mass = 1;
  tree.nodes.push_back(root);

  std::size_t level_begin = 0;
  std::size_t capped_nodes = 0, sampled_sublevels = 0, truncated_balls = 0;
  for (int n = 1; n <= cfg.depth; ++n) {
    const std::size_t level_end = tree.nodes.size();
    std::size_t level_count = 0;
    for (std::size_t pi = level_begin; pi < level_end; ++pi) {
      if (level_count >= cfg.budget.max_nodes_per_level) {
        tree.truncated = true;
        tree.notes.push_back("level " + std::to_string(n) + " node budget reached at parent " + std::to_string(pi));
        break;
      }
      const ENode parent = tree.nodes[pi];
      const RBall P = inner_rball(parent.ball);
      bool capped = false;
      const long lB = sublevel_count(parent, cfg, &capped);
      if (capped) ++capped_nodes;
      std::vector<Child> kids;
      std::vector<Segment> holes;
      std::optional<Interval> min_s;
      BigInt floor_q = parent.kind == NodeKind::kCell ? BigInt(static_cast<long>(parent.pq.q)) : parent.G;
      for (long l = 1; l <= lB; ++l) {
        const BigInt G = choose_G(n, static_cast<int>(l), floor_q, l > 1 ? min_s : std::nullopt, cfg);
        std::vector<RBall> cover;
        if (l == 1) {
          cover.push_back(P);
        } else if (kids.empty()) {
          cover.push_back({P.center, P.radius * Rational(3, 5)});
        } else {
          // r = min |L| / 5 over earlier cells, rounded down to a rational.
          Interval min_r = kids.front().ball.radius;
          for (const Child& c : kids) min_r = interval_min(min_r, c.ball.radius);
          const Rational r = (min_r / I(Rational(5))).lo_rational();
          BigInt total;
          cover = sample_cover(residual(P, holes), r, cfg.budget.residual_samples, &total);
          if (BigInt(static_cast<unsigned long>(cover.size())) < total) ++sampled_sublevels;
        }
        std::optional<Interval> level_min;
        for (const RBall& B : cover) {
          PackOutcome po = pack_ball(B, G, n, cfg);
          if (po.truncated) {
            ++truncated_balls;
            tree.truncated = true;
          }
          for (PackCell& pc : po.kept) {
            const BigInt q = static_cast<long>(pc.pq.q);
            if (q > floor_q) floor_q = q;
            level_min = level_min ? interval_min(*level_min, pc.cell_s.radius) : pc.cell_s.radius;
            const Ball1D four = scale(pc.cell, Rational(4));
            holes.push_back({four.lo().lo_rational(), four.hi().hi_rational()});
            kids.push_back({pc.pq, static_cast<int>(l), G, pc.cell, pc.cell_s.radius,
                            weight_of(cfg.psi.evaluate_pow(Rational(q), cfg.s))});
          }
        }
        if (level_min) min_s = min_s ? interval_min(*min_s, *level_min) : *level_min;
        if (G > floor_q) floor_q = G;
      }
      if (kids.empty()) continue;
      // Masses: the common 2^{-(n+1)s} factor of L(L^s) cancels.
      Rational W = 0;
      for (const Child& c : kids) W += c.weight;
      std::sort(kids.begin(), kids.end(), [](const Child& a, const Child& b) {
        return a.ball.center.mid_rational() < b.ball.center.mid_rational();
      });
      tree.nodes[pi].first_child = tree.nodes.size();
      tree.nodes[pi].child_count = kids.size();
      for (const Child& c : kids) {
        ENode node;
        node.id = static_cast<std::int64_t>(tree.nodes.size());
        node.parent = parent.id;
        node.level = n;
        node.sublevel = c.sublevel;
        node.kind = NodeKind::kCell;
        node.pq = c.pq;
        node.ball = c.ball;
        node.G = c.G;
        node.mass = c.weight / W * parent.mass;
        tree.nodes.push_back(std::move(node));
      }
      level_count += kids.size();
    }
    level_begin = level_end;
  }
  if (capped_nodes) tree.notes.push_back("sub-level cap applied at " + std::to_string(capped_nodes) + " nodes");
  if (sampled_sublevels) {
    tree.notes.push_back("residual cover sampled at " + std::to_string(sampled_sublevels) + " sub-levels");
  }
  if (truncated_balls) tree.notes.push_back("budget truncated " + std::to_string(truncated_balls) + " packs");
  return tree;
}

MassBracket query_mass_nu(const ETree& tree, const Ball1D& ball) {
  MassBracket mb{0, 0};
  for (const ENode& n : tree.nodes) {
    if (n.child_count != 0) continue;
    try {
      if (contains(ball, n.ball)) {
        mb.lower += n.mass;
        mb.upper += n.mass;
      } else if (!disjoint(ball, n.ball)) {
        mb.upper += n.mass;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kUndecided) throw;
      mb.upper += n.mass;
    }
  }
  return mb;
}

ETreeReport verify_e_tree(const ETree& tree, const Rational& s, const Rational& eta) {
  ETreeReport rep;
  rep.nodes = tree.nodes.size();
  auto fail = [&](const std::string& name, std::int64_t id, const std::string& what) {
    rep.violations.push_back({name, "node " + std::to_string(id) + ": " + what});
  };
  const auto& nodes = tree.nodes;
  std::vector<std::vector<std::size_t>> children(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const ENode& n = nodes[i];
    if (n.id != static_cast<std::int64_t>(i)) fail("ids", n.id, "id does not match position");
    if (n.mass <= 0) fail("mass", n.id, "non-positive mass");
    if (i == 0) continue;
    if (n.parent < 0 || n.parent >= n.id) {
      fail("parent", n.id, "parent must precede the node");
      continue;
    }
    children[n.parent].push_back(i);
    const ENode& p = nodes[n.parent];
    if (n.level != p.level + 1) fail("level", n.id, "level is not parent level + 1");
    if (!contains(p.ball, n.ball)) fail("nesting", n.id, "not inside parent " + std::to_string(p.id));
    if (n.kind == NodeKind::kCell && BigInt(static_cast<long>(n.pq.q)) < n.G) {
      fail("denominator", n.id, "q below G");
    }
    const Interval v = I(n.mass * eta) / eval_power(n.ball.radius, s);
    if (rep.scaling_node < 0) {
      rep.scaling = v;
      rep.scaling_node = n.id;
    } else {
      if (v.hi_double() > rep.scaling.hi_double()) rep.scaling_node = n.id;
      rep.scaling = interval_max(rep.scaling, v);
    }
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& kids = children[i];
    if (kids.empty()) continue;
    Rational sum = 0;
    for (std::size_t c : kids) sum += nodes[c].mass;
    if (sum != nodes[i].mass) {
      fail("additivity", nodes[i].id, "children sum to " + to_string(sum) + ", mass " + to_string(nodes[i].mass));
    }
    // Sibling 3-blowups: sweep by left endpoint.
    std::vector<Ball1D> three;
    std::vector<Rational> keys;
    for (std::size_t c : kids) {
      three.push_back(scale(nodes[c].ball, Rational(3)));
      keys.push_back(three.back().lo().mid_rational());
    }
    std::vector<std::size_t> order(kids.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    std::optional<std::size_t> reach;
    for (std::size_t j : order) {
      if (reach && !disjoint(three[*reach], three[j])) {
        fail("sibling-separation", nodes[kids[j]].id, "3-blowup meets that of node " + std::to_string(nodes[kids[*reach]].id));
        break;
      }
      if (!reach || cmp_certified(three[j].hi(), three[*reach].hi()) == Order::kGreater) reach = j;
    }
    // Sub-level decay and G monotonicity.
    std::map<int, std::pair<Interval, Interval>> srad;  // sublevel -> (min, max) s-radius
    std::map<int, BigInt> gs;
    for (std::size_t c : kids) {
      const ENode& k = nodes[c];
      const Interval sr = eval_power(k.ball.radius, s);
      auto it = srad.find(k.sublevel);
      if (it == srad.end()) {
        srad.emplace(k.sublevel, std::make_pair(sr, sr));
        gs.emplace(k.sublevel, k.G);
      } else {
        it->second.first = interval_min(it->second.first, sr);
        it->second.second = interval_max(it->second.second, sr);
        if (gs[k.sublevel] != k.G) fail("G", k.id, "G differs within a sub-level");
      }
    }
    for (auto it = srad.begin(); it != srad.end(); ++it) {
      auto next = std::next(it);
      if (next == srad.end()) break;
      if (cmp_certified(it->second.first, I(Rational(5)) * next->second.second) == Order::kLess) {
        fail("sublevel-decay", nodes[i].id,
             "sub-level " + std::to_string(next->first) + " s-radius exceeds a fifth of sub-level " +
                 std::to_string(it->first));
      }
      if (!(gs[it->first] < gs[next->first])) {
        fail("G", nodes[i].id, "G does not increase from sub-level " + std::to_string(it->first));
      }
    }
  }
  return rep;
}

}  // namespace dioph
