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

#include "dioph/cantor_product.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>

#include "dioph/analysis.hpp"

namespace dioph {

namespace {

Interval I(const Rational& r) { return Interval::exact(r); }

Rational exact_psi(const PsiSpec& psi, const Rational& q) {
  const Interval v = psi.evaluate(q);
  if (!v.is_exact()) {
    throw Error(ErrorKind::kInvalidInput, "the product construction needs rational values of " + psi.label());
  }
  return *v.exact_value();
}

Rational lambda_rational(const PsiSpec& psi, BuildMode mode, std::vector<std::string>* notes) {
  const LambdaInfo li = lambda_of(psi);
  if (li.infinite) throw Error(ErrorKind::kInvalidInput, psi.label() + ": lambda is infinite");
  if (li.exact) return *li.exact;
  if (mode == BuildMode::kStrict) {
    throw Error(ErrorKind::kHypothesisViolation, psi.label() + ": lambda is only estimated");
  }
  notes->push_back(psi.label() + ": lambda estimated as " + std::to_string(li.estimate));
  return Rational(li.estimate);
}

}  // namespace

const char* to_string(PKind k) { return k == PKind::kBall ? "ball" : "rect"; }

QSchedule make_q_schedule(const std::vector<PsiSpec>& psis, const Rational& epsilon, int length,
                          const ScheduleConfig& cfg) {
  if (psis.empty()) throw Error(ErrorKind::kInvalidInput, "need at least one psi");
  if (epsilon <= 0) throw Error(ErrorKind::kInvalidInput, "epsilon must be positive");
  if (length < 1) throw Error(ErrorKind::kInvalidInput, "schedule length must be >= 1");
  QSchedule sch;
  sch.psis = psis;
  sch.epsilon = epsilon;
  sch.mode = cfg.mode;
  sch.kappa = cfg.kappa;
  const bool strict = cfg.mode == BuildMode::kStrict;
  std::vector<Rational> lambda;
  std::optional<BigInt> q0 = BigInt(1);
  for (const PsiSpec& p : psis) {
    const HypothesisReport h = check_hypotheses(p, Rational(1));
    for (const Verdict* v : {&h.non_increasing, &h.little_o_x2}) {
      if (v->holds()) continue;
      const std::string what = p.label() + ": " + to_string(*v);
      if (strict) throw Error(ErrorKind::kHypothesisViolation, what);
      sch.notes.push_back("warning: " + what);
    }
    if (h.q0 && q0) {
      q0 = std::max(*q0, *h.q0);
    } else {
      q0.reset();
    }
    const Rational lam = lambda_rational(p, cfg.mode, &sch.notes);
    if (2 - epsilon * lam <= 0) {
      throw Error(ErrorKind::kInvalidInput, "epsilon must be below 2/lambda for " + p.label());
    }
    lambda.push_back(lam);
  }
  if (!q0) {
    if (strict) throw Error(ErrorKind::kHypothesisViolation, "no common Q0 with q^2 psi(q) < 1/1000");
    sch.notes.push_back("warning: no common Q0");
  }
  sch.Q0 = q0.value_or(BigInt(0));

  // -log psi_l(Q) <= 2 lambda_l / (2 - eps lambda_l) log Q
  auto ms2 = [&](int l, const BigInt& Q) {
    const Rational& lam = lambda[l - 1];
    const Interval lhs = -eval_log(psis[l - 1].evaluate(Q));
    const Interval rhs = I(2 * lam / (2 - epsilon * lam)) * eval_log(I(Rational(Q)));
    return cmp_certified(lhs, rhs) != Order::kGreater;
  };
  auto settle = [&](int l, const BigInt& from) {
    if (ms2(l, from)) return from;
    if (!strict) sch.notes.push_back("ms2 fails at Q=" + from.get_str() + "; searching upward");
    return first_true(from, [&](const BigInt& q) { return ms2(l, q); }, from << 64);
  };

  const int n = static_cast<int>(psis.size());
  BigInt prev;
  for (int k = 1; k <= length; ++k) {
    const int l = (k - 1) % n + 1;
    const int t = (k - 1) / n;
    BigInt floor_q;
    if (k == 1) {
      if (strict) {
        const Interval bound = interval_max(I(Rational(20000)) * eval_log(I(Rational(2))), I(Rational(9 * sch.Q0)));
        floor_q = certified_floor(bound) + 1;
      } else {
        floor_q = cfg.q1;
      }
    } else {
      const int lm1 = l == 1 ? n : l - 1;
      const Rational u = 1 / exact_psi(psis[lm1 - 1], Rational(prev));
      Interval bound;
      if (strict) {
        const Rational two_t = Rational(BigInt(1) << (t + 2));
        bound = I(Rational(BigInt(1) << (17 + t)) * u) * eval_log(I(two_t * u));
      } else {
        Rational kappa = 1;
        if (!cfg.kappa.empty()) {
          kappa = cfg.kappa[std::min<std::size_t>(static_cast<std::size_t>(k - 2), cfg.kappa.size() - 1)];
        }
        bound = I(kappa * u);
      }
      floor_q = certified_floor(bound) + 1;
      if (floor_q <= prev) floor_q = prev + 1;
    }
    if (floor_q < 2) floor_q = 2;
    const BigInt Q = settle(l, floor_q);
    if (mpz_sizeinbase(Q.get_mpz_t(), 2) > cfg.max_bits) {
      throw Error(ErrorKind::kBudgetExceeded, "Q_" + std::to_string(k) + " exceeds the bit budget");
    }
    sch.Q.push_back(Q);
    prev = Q;
  }
  return sch;
}

namespace {

// Sup-norm ball: every side has radius R.
struct Box {
  std::vector<Rational> c;
  Rational R;
};

struct CellGeo {
  Rational center;
  Rational r;
};

struct Lattice {
  BigInt m;      // balls per thick direction
  Rational off;  // first center = x_j - R + off
  Rational step;
};

// Generates the construction below a ball, deterministically.
class Engine {
 public:
  Engine(const QSchedule& sch, std::size_t max_candidates, std::size_t cache_cap)
      : sch_(sch), max_candidates_(max_candidates), cache_cap_(cache_cap) {}

  int n() const { return static_cast<int>(sch_.dim()); }

  CellGeo cell(const Fraction& f, int k) const {
    const int l = sch_.direction(k), t = sch_.t_of(k);
    const Rational psi = exact_psi(sch_.psis[l - 1], Rational(f.q));
    const Rational ck = 1 - Rational(1, BigInt(1) << (t + 1));
    return {f.value() + (1 + ck) / 2 * psi, psi / Rational(BigInt(1) << (t + 2))};
  }

  Lattice lattice(const Box& b, const Rational& r) const {
    Lattice lat;
    lat.step = 8 * r;
    const Rational span = 2 * b.R - 2 * r;
    lat.m = span < 0 ? BigInt(0) : floor(Rational(span / lat.step)) + 1;
    if (lat.m > 0) lat.off = r + (span - Rational(lat.m - 1) * lat.step) / 2;
    return lat;
  }

  // Kept rationals of the rectangles of b at level k, ascending.
  std::shared_ptr<const std::vector<Fraction>> rects(const Box& b, int k) {
    std::pair<int, std::vector<Rational>> key{k, b.c};
    if (cache_cap_ > 0) {
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    auto out = std::make_shared<std::vector<Fraction>>(compute(b, k));
    if (cache_cap_ > 0) {
      if (cache_.size() >= cache_cap_) cache_.clear();
      cache_.emplace(std::move(key), out);
    }
    return out;
  }

 private:
  std::vector<Fraction> compute(const Box& b, int k) const {
    const BigInt& Qb = sch_.Q.at(static_cast<std::size_t>(k - 1));
    if (Qb > (BigInt(1) << 62)) throw Error(ErrorKind::kBudgetExceeded, "Q_" + std::to_string(k) + " beyond 2^62");
    const int l = sch_.direction(k), t = sch_.t_of(k);
    SelectionConfig sc;
    sc.mode = SelectMode::kExploratory;
    sc.Q = Qb.get_si();
    sc.k = t + 1;
    sc.ball = {b.c[l - 1], b.R};
    sc.max_candidates = max_candidates_;
    SelectionResult sel = select_rationals(sc);
    const Rational QQ = Rational(Qb * Qb);
    const Rational psi_max = exact_psi(sch_.psis[l - 1], Rational(window_q_min(sc.Q)));
    const Rational grow = 1 + Rational(6, BigInt(1) << (t + 2));
    if (psi_max <= 1 / (2 * QQ) && psi_max * grow <= 1 / QQ && psi_max <= b.R / 2) return std::move(sel.rationals);
    // Desk drop pass: cells inside the side, 1/(2Q^2) apart, 3-blowups disjoint.
    std::vector<Fraction> kept;
    std::map<Rational, CellGeo> by_center;
    const Rational lo = b.c[l - 1] - b.R, hi = b.c[l - 1] + b.R;
    const Rational gap = 1 / (2 * QQ);
    auto clash = [&](const CellGeo& a, const CellGeo& o) {
      const Rational d = abs(a.center - o.center);
      return d - a.r - o.r <= gap || d < 3 * (a.r + o.r);
    };
    for (const Fraction& f : sel.rationals) {
      const CellGeo g = cell(f, k);
      if (g.center - g.r < lo || g.center + g.r > hi) continue;
      auto next = by_center.lower_bound(g.center);
      if (next != by_center.end() && clash(g, next->second)) continue;
      if (next != by_center.begin() && clash(g, std::prev(next)->second)) continue;
      by_center.emplace(g.center, g);
      kept.push_back(f);
    }
    return kept;
  }

  const QSchedule& sch_;
  std::size_t max_candidates_;
  std::size_t cache_cap_;
  std::map<std::pair<int, std::vector<Rational>>, std::shared_ptr<const std::vector<Fraction>>> cache_;
};

// `count` indices spread evenly over [0, total).
std::vector<BigInt> spread(const BigInt& total, std::size_t count) {
  std::vector<BigInt> out;
  const BigInt M = std::min(total, BigInt(static_cast<unsigned long>(count)));
  for (BigInt j = 0; j < M; ++j) out.push_back(((2 * j + 1) * total) / (2 * M));
  return out;
}

Box box_of(const PNode& n) { return {n.centers, n.radii.front()}; }

}  // namespace

std::vector<std::string> ProductConfig::describe() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < psis.size(); ++i) out.push_back("psi" + std::to_string(i + 1) + "=" + psis[i].label());
  out.push_back("epsilon=" + to_short_string(epsilon) + " depth=" + std::to_string(depth));
  std::ostringstream s;
  s << "schedule mode=" << (schedule.mode == BuildMode::kDesk ? "desk" : "strict") << " q1=" << schedule.q1.get_str()
    << " kappa=";
  for (std::size_t i = 0; i < schedule.kappa.size(); ++i) s << (i ? "," : "") << to_short_string(schedule.kappa[i]);
  out.push_back(s.str());
  std::ostringstream b;
  b << "budget rects_per_ball=" << budget.rects_per_ball << " balls_per_rect=" << budget.balls_per_rect
    << " max_candidates=" << budget.max_candidates << " max_nodes=" << budget.max_nodes;
  out.push_back(b.str());
  return out;
}

PTree build_product_tree(const ProductConfig& cfg) {
  if (cfg.depth < 0) throw Error(ErrorKind::kInvalidInput, "depth must be >= 0");
  PTree tree;
  tree.header = cfg.describe();
  tree.depth = cfg.depth;
  tree.schedule = make_q_schedule(cfg.psis, cfg.epsilon, std::max(cfg.depth, 1), cfg.schedule);
  for (const auto& note : tree.schedule.notes) tree.notes.push_back(note);
  std::ostringstream qs;
  qs << "Q=";
  for (std::size_t i = 0; i < tree.schedule.Q.size(); ++i) qs << (i ? "," : "") << tree.schedule.Q[i].get_str();
  tree.header.push_back(qs.str());
  tree.header.push_back("masses: equal split by the full child counts (declared=), subsampled materialization");

  const int n = static_cast<int>(cfg.psis.size());
  Engine eng(tree.schedule, cfg.budget.max_candidates, 0);
  PNode root;
  root.centers.assign(n, Rational(1, 2));
  root.radii.assign(n, Rational(1, 2));
  root.mass = 1;
  tree.nodes.push_back(root);
  std::vector<std::size_t> balls{0};
  auto push = [&](PNode node) {
    node.id = static_cast<std::int64_t>(tree.nodes.size());
    tree.nodes.push_back(std::move(node));
  };
  for (int k = 1; k <= cfg.depth && !tree.truncated; ++k) {
    const int l = tree.schedule.direction(k);
    std::vector<std::size_t> rects;
    for (std::size_t bi : balls) {
      if (tree.nodes.size() >= cfg.budget.max_nodes) {
        tree.truncated = true;
        break;
      }
      const PNode parent = tree.nodes[bi];
      const Box box = box_of(parent);
      std::vector<Fraction> kept;
      try {
        kept = *eng.rects(box, k);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kBudgetExceeded) throw;
        tree.truncated = true;
        tree.notes.push_back("level " + std::to_string(k) + ": " + e.what());
        break;
      }
      tree.nodes[bi].declared = static_cast<unsigned long>(kept.size());
      if (kept.empty()) continue;
      tree.nodes[bi].first_child = tree.nodes.size();
      const Rational rect_mass = parent.mass / static_cast<unsigned long>(kept.size());
      for (const BigInt& idx : spread(static_cast<unsigned long>(kept.size()), cfg.budget.rects_per_ball)) {
        const Fraction f = kept[idx.get_ui()];
        const CellGeo g = eng.cell(f, k);
        PNode r;
        r.parent = parent.id;
        r.level = k;
        r.kind = PKind::kRect;
        r.dir = l;
        r.centers = parent.centers;
        r.radii = parent.radii;
        r.centers[l - 1] = g.center;
        r.radii[l - 1] = g.r;
        r.source = f;
        r.mass = rect_mass;
        r.declared = pow(eng.lattice(box, g.r).m, static_cast<unsigned long>(n - 1));
        rects.push_back(tree.nodes.size());
        push(std::move(r));
      }
      tree.nodes[bi].child_count = tree.nodes.size() - tree.nodes[bi].first_child;
    }
    std::vector<std::size_t> next;
    for (std::size_t ri : rects) {
      const PNode rect = tree.nodes[ri];
      const PNode& parent = tree.nodes[rect.parent];
      const Box box = box_of(parent);
      const Rational r = rect.radii[l - 1];
      const Lattice lat = eng.lattice(box, r);
      tree.nodes[ri].first_child = tree.nodes.size();
      const Rational ball_mass = rect.mass / Rational(rect.declared);
      for (BigInt idx : spread(rect.declared, cfg.budget.balls_per_rect)) {
        PNode b;
        b.parent = rect.id;
        b.level = k;
        b.kind = PKind::kBall;
        b.dir = l;
        b.centers = rect.centers;
        b.radii.assign(n, r);
        for (int j = 0; j < n; ++j) {
          if (j == l - 1) continue;
          const BigInt i = idx % lat.m;
          idx /= lat.m;
          b.centers[j] = parent.centers[j] - box.R + lat.off + Rational(i) * lat.step;
        }
        b.source = rect.source;
        b.mass = ball_mass;
        next.push_back(tree.nodes.size());
        push(std::move(b));
      }
      tree.nodes[ri].child_count = tree.nodes.size() - tree.nodes[ri].first_child;
    }
    balls = std::move(next);
  }
  if (tree.truncated) tree.notes.push_back("node budget reached; tree truncated");
  return tree;
}

PTreeReport verify_product_tree(const PTree& tree) {
  PTreeReport rep;
  rep.nodes = tree.nodes.size();
  if (tree.nodes.empty()) return rep;
  const QSchedule& sch = tree.schedule;
  const int n = static_cast<int>(sch.dim());
  Engine eng(sch, 0, 0);
  auto fail = [&](const std::string& name, std::int64_t id, const std::string& what) {
    rep.violations.push_back({name, "node " + std::to_string(id) + ": " + what});
  };
  const auto& nodes = tree.nodes;
  bool have_ratio = false;
  std::vector<std::vector<std::size_t>> children(nodes.size());
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const PNode& v = nodes[i];
    if (v.id != static_cast<std::int64_t>(i) || v.parent < 0 || v.parent >= v.id) {
      fail("parent", v.id, "bad id or parent link");
      continue;
    }
    children[v.parent].push_back(i);
    const PNode& p = nodes[v.parent];
    if (static_cast<int>(v.centers.size()) != n || static_cast<int>(v.radii.size()) != n) {
      fail("shape", v.id, "wrong dimension");
      continue;
    }
    const bool rect = v.kind == PKind::kRect;
    if (rect ? (p.kind != PKind::kBall || v.level != p.level + 1) : (p.kind != PKind::kRect || v.level != p.level)) {
      fail("level", v.id, "ball/rectangle alternation broken");
      continue;
    }
    for (int j = 0; j < n; ++j) {
      if (abs(v.centers[j] - p.centers[j]) + v.radii[j] > p.radii[j]) {
        fail("nesting", v.id, "leaves parent " + std::to_string(p.id) + " in direction " + std::to_string(j + 1));
        break;
      }
    }
    const int k = v.level, l = sch.direction(k), t = sch.t_of(k);
    if (v.dir != l) fail("direction", v.id, "thin direction should be " + std::to_string(l));
    if (static_cast<std::size_t>(k) > sch.Q.size()) {
      fail("schedule", v.id, "level beyond the schedule");
      continue;
    }
    const BigInt& Q = sch.Q[k - 1];
    const Rational r = v.radii[l - 1];
    if (rect) {
      const BigInt q = static_cast<long>(v.source.q);
      if (q < BigInt(static_cast<long>(window_q_min(Q.get_si()))) || q > Q) fail("denominator", v.id, "q outside [Q/9, Q]");
      const CellGeo g = eng.cell(v.source, k);
      if (g.center != v.centers[l - 1] || g.r != r) fail("cell", v.id, "thin side is not C_{t+1}(p/q, psi_l)");
      const Rational scale = Rational(BigInt(1) << (t + 2));
      const Rational rlo = exact_psi(sch.psis[l - 1], Rational(Q)) / scale;
      const Rational rhi = exact_psi(sch.psis[l - 1], Rational(Q) / 9) / scale;
      if (r < rlo || r > rhi) fail("radius-window", v.id, "radius outside the level window");
      for (int j = 0; j < n; ++j) {
        if (j != l - 1 && v.radii[j] != p.radii[j]) fail("shape", v.id, "thick side differs from parent");
      }
      if (n > 1 && v.declared > 0) {
        const double ratio = std::log2(v.declared.get_d()) - (n - 1) * log2_rational(p.radii[0] / r);
        const double x = std::exp2(ratio);
        if (!have_ratio || x < rep.count_ratio_min) rep.count_ratio_min = x;
        if (!have_ratio || x > rep.count_ratio_max) rep.count_ratio_max = x;
        have_ratio = true;
      }
    } else {
      for (int j = 0; j < n; ++j) {
        if (v.radii[j] != p.radii[l - 1]) fail("shape", v.id, "ball radius differs from the rectangle's thin side");
      }
      if (v.centers[l - 1] != p.centers[l - 1]) fail("cell", v.id, "thin coordinate differs from the rectangle");
    }
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& kids = children[i];
    if (kids.empty()) continue;
    const PNode& p = nodes[i];
    const Rational m = nodes[kids.front()].mass;
    bool equal = true;
    for (std::size_t c : kids) equal = equal && nodes[c].mass == m;
    if (!equal) fail("equal-mass", p.id, "children carry different masses");
    if (p.declared <= 0 || m * Rational(p.declared) != p.mass) {
      fail("additivity", p.id, "declared " + p.declared.get_str() + " x child mass != mass");
    }
    if (p.kind == PKind::kBall) {
      // Rectangles: thin cells 1/(2Q^2) apart with disjoint 3-blowups.
      const int k = p.level + 1, l = sch.direction(k);
      const Rational gap = 1 / (2 * Rational(sch.Q[k - 1] * sch.Q[k - 1]));
      std::vector<std::size_t> ord(kids);
      std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
        return nodes[a].centers[l - 1] - nodes[a].radii[l - 1] < nodes[b].centers[l - 1] - nodes[b].radii[l - 1];
      });
      for (std::size_t a = 0; a + 1 < ord.size(); ++a) {
        const PNode &u = nodes[ord[a]], &w = nodes[ord[a + 1]];
        const Rational d = w.centers[l - 1] - u.centers[l - 1];
        const Rational ru = u.radii[l - 1], rw = w.radii[l - 1];
        if (d - ru - rw <= gap || d < 3 * (ru + rw)) {
          fail("rect-separation", w.id, "too close to rectangle " + std::to_string(u.id));
        }
      }
    } else {
      for (std::size_t a = 0; a < kids.size(); ++a) {
        for (std::size_t b = a + 1; b < kids.size(); ++b) {
          const PNode &u = nodes[kids[a]], &w = nodes[kids[b]];
          bool apart = false;
          for (int j = 0; j < n && !apart; ++j) apart = abs(u.centers[j] - w.centers[j]) >= 3 * (u.radii[j] + w.radii[j]);
          if (!apart) fail("ball-separation", w.id, "3-blowup meets that of ball " + std::to_string(u.id));
        }
      }
    }
  }
  return rep;
}

namespace {

class MuQuery {
 public:
  explicit MuQuery(const PTree& tree) : tree_(tree), eng_(tree.schedule, 100'000'000, 256) {}

  std::size_t dim() const { return tree_.schedule.dim(); }

  MassBracket run(const std::vector<Rational>& x, const Rational& delta) {
    x_ = x;
    delta_ = delta;
    mb_ = {0, 0};
    const Box root{std::vector<Rational>(x.size(), Rational(1, 2)), Rational(1, 2)};
    visit(root, Rational(1), 0);
    return mb_;
  }

 private:
  void visit(const Box& b, const Rational& mass, int k) {
    const int n = eng_.n();
    bool inside = true;
    for (int j = 0; j < n; ++j) {
      const Rational d = abs(b.c[j] - x_[j]);
      if (d >= b.R + delta_) return;
      if (d > delta_ - b.R) inside = false;
    }
    if (inside) {
      mb_.lower += mass;
      mb_.upper += mass;
      return;
    }
    if (k >= tree_.depth) {
      mb_.upper += mass;
      return;
    }
    const int kk = k + 1, l = tree_.schedule.direction(kk);
    const auto list = eng_.rects(b, kk);
    if (list->empty()) {
      mb_.upper += mass;
      return;
    }
    const Rational rect_mass = mass / static_cast<unsigned long>(list->size());
    const PsiSpec& psi = tree_.schedule.psis[l - 1];
    const Rational psi_max = exact_psi(psi, Rational(window_q_min(tree_.schedule.Q[kk - 1].get_si())));
    const Rational xl = x_[l - 1];
    const Rational from = xl - delta_ - psi_max;
    auto it = std::partition_point(list->begin(), list->end(), [&](const Fraction& f) { return f.value() <= from; });
    for (; it != list->end() && f_less(*it, xl + delta_); ++it) {
      const CellGeo g = eng_.cell(*it, kk);
      const Rational dl = abs(g.center - xl);
      if (dl >= g.r + delta_) continue;
      const bool thin_in = dl <= delta_ - g.r;
      const Lattice lat = eng_.lattice(b, g.r);
      if (lat.m == 0) continue;
      const Rational ball_mass = rect_mass / Rational(pow(lat.m, static_cast<unsigned long>(n - 1)));
      std::vector<std::pair<BigInt, BigInt>> span(n);
      BigInt n_int = 1, n_in = thin_in ? 1 : 0;
      for (int j = 0; j < n; ++j) {
        if (j == l - 1) continue;
        const Rational A = b.c[j] - b.R + lat.off;
        BigInt lo = floor(Rational((x_[j] - g.r - delta_ - A) / lat.step)) + 1;
        BigInt hi = ceil(Rational((x_[j] + g.r + delta_ - A) / lat.step)) - 1;
        lo = std::max(lo, BigInt(0));
        hi = std::min(hi, BigInt(lat.m - 1));
        if (hi < lo) {
          n_int = 0;
          break;
        }
        span[j] = {lo, hi};
        n_int *= hi - lo + 1;
        if (delta_ >= g.r) {
          BigInt a = std::max(ceil(Rational((x_[j] - delta_ + g.r - A) / lat.step)), BigInt(0));
          BigInt c = std::min(floor(Rational((x_[j] + delta_ - g.r - A) / lat.step)), BigInt(lat.m - 1));
          n_in *= c >= a ? BigInt(c - a + 1) : BigInt(0);
        } else {
          n_in = 0;
        }
      }
      if (n_int == 0) continue;
      if (kk >= tree_.depth || 4 * g.r <= delta_ || n_int > 4096) {
        mb_.lower += Rational(n_in) * ball_mass;
        mb_.upper += Rational(n_int) * ball_mass;
        continue;
      }
      // Few balls of radius comparable to delta: descend into each.
      std::vector<BigInt> idx(n);
      for (int j = 0; j < n; ++j) idx[j] = span[j].first;
      for (;;) {
        Box child{b.c, g.r};
        child.c[l - 1] = g.center;
        for (int j = 0; j < n; ++j) {
          if (j != l - 1) child.c[j] = b.c[j] - b.R + lat.off + Rational(idx[j]) * lat.step;
        }
        visit(child, ball_mass, kk);
        int j = 0;
        for (; j < n; ++j) {
          if (j == l - 1) continue;
          if (idx[j] < span[j].second) {
            ++idx[j];
            break;
          }
          idx[j] = span[j].first;
        }
        if (j == n) break;
      }
    }
  }

  static bool f_less(const Fraction& f, const Rational& v) { return f.value() < v; }

  const PTree& tree_;
  Engine eng_;
  std::vector<Rational> x_;
  Rational delta_;
  MassBracket mb_{0, 0};
};

}  // namespace

struct MuOracle::Impl {
  explicit Impl(const PTree& tree) : q(tree) {}
  MuQuery q;
};

MuOracle::MuOracle(const PTree& tree) : impl_(std::make_unique<Impl>(tree)) {}
MuOracle::~MuOracle() = default;

MassBracket MuOracle::operator()(const std::vector<Rational>& x, const Rational& delta) {
  if (x.size() != impl_->q.dim()) throw Error(ErrorKind::kInvalidInput, "point dimension mismatch");
  if (delta <= 0) throw Error(ErrorKind::kInvalidInput, "delta must be positive");
  return impl_->q.run(x, delta);
}

MassBracket query_mass_mu(const PTree& tree, const std::vector<Rational>& x, const Rational& delta) {
  return MuOracle(tree)(x, delta);
}

DimensionFit local_dimension_fit(const PTree& tree, std::size_t sample_count, int j_min, int j_max) {
  if (tree.depth < 3) throw Error(ErrorKind::kInvalidInput, "the fit needs depth >= 3");
  std::vector<std::size_t> leaves;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const PNode& v = tree.nodes[i];
    if (v.kind == PKind::kBall && v.level == tree.depth) leaves.push_back(i);
  }
  if (leaves.empty()) throw Error(ErrorKind::kInvalidInput, "no materialized balls at the tree depth");
  std::vector<std::size_t> picks;
  for (const BigInt& i : spread(static_cast<unsigned long>(leaves.size()), std::max<std::size_t>(sample_count, 1))) {
    picks.push_back(leaves[i.get_ui()]);
  }
  if (j_min <= 0) j_min = 2;
  if (j_max <= 0) {
    Rational r_min = tree.nodes[picks.front()].radii.front();
    for (std::size_t p : picks) r_min = std::min(r_min, tree.nodes[p].radii.front());
    j_max = static_cast<int>(std::floor(-log2_rational(r_min)));
  }
  if (j_max - j_min + 1 < 3) throw Error(ErrorKind::kInvalidInput, "fewer than 3 dyadic scales in range");

  DimensionFit fit;
  const std::size_t n = tree.schedule.dim();
  double smin = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const LambdaInfo li = lambda_of(tree.schedule.psis[i]);
    const double lam = li.exact ? li.exact->get_d() : li.estimate;
    const double s = li.infinite ? 0.0 : 2.0 / lam;
    smin = i == 0 ? s : std::min(smin, s);
  }
  fit.target = static_cast<double>(n) - 1 + smin;

  MuQuery q(tree);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<std::pair<double, double>> xy;
  for (std::size_t s = 0; s < picks.size(); ++s) {
    const PNode& leaf = tree.nodes[picks[s]];
    for (int j = j_min; j <= j_max; ++j) {
      const Rational delta(1, BigInt(1) << j);
      const MassBracket mb = q.run(leaf.centers, delta);
      fit.points.push_back({s, j, mb.lower, mb.upper});
      const double X = -static_cast<double>(j), Y = log2_rational(mb.upper);
      xy.emplace_back(X, Y);
      sx += X;
      sy += Y;
      sxx += X * X;
      sxy += X * Y;
    }
  }
  const double N = static_cast<double>(xy.size());
  const double Sxx = sxx - sx * sx / N, Sxy = sxy - sx * sy / N;
  fit.slope = Sxy / Sxx;
  fit.intercept = (sy - fit.slope * sx) / N;
  double sse = 0;
  for (const auto& [X, Y] : xy) {
    const double e = Y - fit.intercept - fit.slope * X;
    sse += e * e;
  }
  fit.stderr_ = N > 2 ? std::sqrt(sse / (N - 2) / Sxx) : 0.0;
  return fit;
}

}  // namespace dioph
