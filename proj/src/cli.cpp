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

#include "dioph/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

#include "dioph/analysis.hpp"
#include "dioph/cantor_e.hpp"
#include "dioph/cantor_product.hpp"
#include "dioph/csv.hpp"
#include "dioph/mass.hpp"
#include "dioph/pack.hpp"
#include "dioph/select.hpp"
#include "dioph/tree_io.hpp"

namespace dioph {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUndecided:
    case ErrorKind::kCertification:
    case ErrorKind::kCoverageShortfall:
      return kExitCertification;
    case ErrorKind::kBudgetExceeded:
      return kExitBudget;
    default:
      return kExitPrecondition;
  }
}

namespace {

struct Io {
  std::ostream& out;
  std::ostream& err;
  void kv(const std::string& key, const std::string& value) const { out << key << '=' << value << '\n'; }
};

BuildMode parse_mode(const std::string& m) {
  if (m == "desk") return BuildMode::kDesk;
  if (m == "strict") return BuildMode::kStrict;
  throw Error(ErrorKind::kUsage, "--mode must be desk or strict, got '" + m + "'");
}

Rational s_in_unit(const std::string& text) {
  const Rational s = parse_rational(text);
  if (s <= 0 || s > 1) throw Error(ErrorKind::kUsage, "--s " + text + " out of range (0, 1]");
  return s;
}

std::vector<PsiSpec> parse_psis(const std::vector<std::string>& texts) {
  std::vector<PsiSpec> out;
  for (const auto& t : texts) out.push_back(parse_psi(t));
  return out;
}

std::string fmt(double v) {
  std::ostringstream o;
  o.precision(10);
  o << v;
  return o.str();
}

std::string yesno(bool b) { return b ? "1" : "0"; }

void echo_violations(const Io& io, const std::vector<Violation>& vs) {
  io.kv("violations", std::to_string(vs.size()));
  for (const auto& v : vs) io.kv("violation", v.name + ": " + v.detail);
}

// ---------------------------------------------------------------------------

struct ClassifyArgs {
  std::string psi, s;
};

int run_classify(const Io& io, const ClassifyArgs& a) {
  const PsiSpec psi = parse_psi(a.psi);
  const Rational s = s_in_unit(a.s);
  const MeasureVerdict v = classify_hausdorff(psi, s);
  io.kv("psi", psi.label());
  io.kv("s", to_short_string(s));
  io.kv("series", to_string(v.series));
  io.kv("verdict", to_string(v.kind));
  if (!v.reason.empty()) io.kv("reason", v.reason);
  io.kv("hyp_non_increasing", to_string(v.hypotheses.non_increasing));
  io.kv("hyp_little_o_x2", to_string(v.hypotheses.little_o_x2));
  io.kv("hyp_x2_psi_s_non_increasing", to_string(v.hypotheses.x2_psi_s_non_increasing));
  if (v.hypotheses.q0) io.kv("q0", v.hypotheses.q0->get_str());
  return kExitOk;
}

int run_dim(const Io& io, const std::vector<std::string>& psi_texts) {
  const auto psis = parse_psis(psi_texts);
  const DimValue d = psis.size() == 1 ? dim_e(psis.front()) : dim_product(psis);
  io.kv("n", std::to_string(psis.size()));
  io.kv("dim", d.to_string());
  io.kv("exact", yesno(d.exact.has_value()));
  io.kv("estimate_only", yesno(d.estimate_only));
  return kExitOk;
}

struct SelectArgs {
  std::vector<std::string> psis;
  std::int64_t Q = 0;
  int k = 1;
  std::string center = "1/2", radius = "1/2", mode = "exploratory", csv;
  std::size_t max_candidates = 100'000'000;
};

int run_select(const Io& io, const SelectArgs& a) {
  SelectionConfig cfg;
  if (a.mode == "strict") {
    cfg.mode = SelectMode::kStrict;
  } else if (a.mode != "exploratory") {
    throw Error(ErrorKind::kUsage, "--mode must be strict or exploratory");
  }
  cfg.Q = a.Q;
  cfg.k = a.k;
  cfg.psis = parse_psis(a.psis);
  cfg.ball = {parse_rational(a.center), parse_rational(a.radius)};
  cfg.max_candidates = a.max_candidates;
  const SelectionResult res = select_rationals(cfg);
  const SelectionReport rep = verify_selection(res, cfg);
  io.kv("Q", std::to_string(cfg.Q));
  io.kv("q_window", std::to_string(res.q_min) + ".." + std::to_string(res.q_max));
  io.kv("achieved_count", std::to_string(res.achieved_count()));
  io.kv("guaranteed_count", res.guaranteed_count.get_str());
  io.kv("min_pair_gap", to_string(res.min_pair_gap));
  for (std::size_t i = 0; i < res.min_cell_gap.size(); ++i) {
    io.kv("min_cell_gap_" + std::to_string(i + 1), to_string(res.min_cell_gap[i]));
  }
  io.kv("verify", rep.ok() ? "pass" : "fail");
  echo_violations(io, rep.violations);
  if (!a.csv.empty()) {
    CsvTable t;
    t.comments = {"select Q=" + std::to_string(cfg.Q) + " k=" + std::to_string(cfg.k)};
    t.digits = 12;
    t.columns = {{"p", {}}, {"q", {}}, {"value", {}}};
    for (const Fraction& f : res.rationals) {
      t.columns[0].cells.emplace_back(std::to_string(f.p));
      t.columns[1].cells.emplace_back(std::to_string(f.q));
      t.columns[2].cells.emplace_back(f.value());
    }
    emit_csv(a.csv, t);
  }
  return rep.ok() ? kExitOk : kExitCertification;
}

struct PackArgs {
  std::string psi, s, center = "1/2", radius = "1/2", qprime = "1", constants = "desk", q, csv;
  int k = 1;
  bool plan_only = false;
};

int run_pack(const Io& io, const PackArgs& a) {
  const PsiSpec psi = parse_psi(a.psi);
  const Rational s = s_in_unit(a.s);
  const RBall B{parse_rational(a.center), parse_rational(a.radius)};
  const BigInt qp(a.qprime);
  PackConstants pc;
  if (a.constants == "desk") {
    pc = PackConstants::desk_defaults();
  } else if (a.constants == "strict") {
    pc = PackConstants::strict();
  } else {
    throw Error(ErrorKind::kUsage, "--constants must be desk or strict");
  }
  if (!a.q.empty()) pc.q_override = BigInt(a.q);
  io.kv("constants", pc.describe());
  const PackPlan plan = plan_pack(B, qp, a.k, psi, s, pc);
  io.kv("Q", plan.Q.get_str());
  io.kv("l", std::to_string(plan.l));
  io.kv("N", std::to_string(plan.N));
  io.kv("q_gate", plan.q_gate.to_string());
  io.kv("term_first", plan.term_first.to_string());
  io.kv("window_sum", plan.window_sum.to_string());
  io.kv("small_condition", yesno(plan.small_condition));
  io.kv("psi_below_one", yesno(plan.psi_below_one));
  io.kv("window_ok", yesno(plan.window_ok));
  std::string counts;
  for (const auto& c : plan.per_scale_counts) counts += (counts.empty() ? "" : ",") + c.get_str();
  io.kv("per_scale_counts", counts);
  for (const auto& n : plan.notes) io.kv("note", n);
  if (a.plan_only) return kExitOk;
  const PackResult res = materialize_pack(plan, B, qp, a.k, psi, s, pc);
  const PackReport rep = verify_pack(res, B, pc.coverage_target, s);
  io.kv("kept", std::to_string(res.kept.size()));
  io.kv("dropped_outside", std::to_string(res.dropped_outside));
  io.kv("dropped_small_q", std::to_string(res.dropped_small_q));
  io.kv("coverage_ratio", res.coverage_ratio.to_string());
  io.kv("coverage_ok", yesno(res.coverage_ok));
  io.kv("verify", rep.ok() ? "pass" : "fail");
  echo_violations(io, rep.violations);
  if (!a.csv.empty()) {
    CsvTable t;
    t.comments = {"pack psi=" + psi.label() + " s=" + to_short_string(s) + " Q=" + plan.Q.get_str()};
    t.digits = 15;
    t.columns = {{"scale", {}}, {"p", {}}, {"q", {}}, {"cell_center", {}}, {"cell_radius", {}}};
    for (const PackCell& c : res.kept) {
      t.columns[0].cells.emplace_back(std::to_string(c.scale));
      t.columns[1].cells.emplace_back(std::to_string(c.pq.p));
      t.columns[2].cells.emplace_back(std::to_string(c.pq.q));
      t.columns[3].cells.emplace_back(c.cell.center.mid_rational());
      t.columns[4].cells.emplace_back(c.cell.radius.mid_rational());
    }
    emit_csv(a.csv, t);
  }
  return rep.ok() ? kExitOk : kExitCertification;
}

struct WitnessArgs {
  std::string x, psi, eps, qmax = "1000000", csv;
};

int run_witness(const Io& io, const WitnessArgs& a) {
  const RealSpec x = parse_real(a.x);
  const PsiSpec psi = parse_psi(a.psi);
  const Rational eps = parse_rational(a.eps);
  const WitnessSearch ws = witness_search(x, psi, eps, BigInt(a.qmax));
  io.kv("x", x.label());
  io.kv("examined", std::to_string(ws.examined));
  io.kv("undecided", std::to_string(ws.undecided));
  io.kv("witnesses", std::to_string(ws.witnesses.size()));
  bool all = true;
  for (const Witness& w : ws.witnesses) {
    const bool again = verify_witness(x, psi, eps, w, 2 * kDefaultPrecision);
    all = all && again;
    io.kv("witness", w.p.get_str() + "/" + w.q.get_str() + (w.convergent ? " convergent" : " intermediate") +
                         (again ? " reverified" : " REVERIFY-FAILED"));
  }
  if (!a.csv.empty()) {
    CsvTable t;
    t.comments = {"witness x=" + x.label() + " psi=" + psi.label() + " eps=" + to_short_string(eps)};
    t.columns = {{"p", {}}, {"q", {}}, {"convergent", {}}};
    for (const Witness& w : ws.witnesses) {
      t.columns[0].cells.emplace_back(w.p.get_str());
      t.columns[1].cells.emplace_back(w.q.get_str());
      t.columns[2].cells.emplace_back(std::string(yesno(w.convergent)));
    }
    emit_csv(a.csv, t);
  }
  return all ? kExitOk : kExitCertification;
}

struct BuildEArgs {
  std::string psi = "pow:c=1,tau=3", s = "2/3", eta = "1", mode = "desk", out;
  int depth = 2;
  int max_sublevels = 2;
  std::size_t residual_samples = 8;
  std::size_t max_nodes_per_level = 200'000;
};

int run_build_e(const Io& io, const BuildEArgs& a) {
  EConfig cfg;
  cfg.psi = parse_psi(a.psi);
  cfg.s = s_in_unit(a.s);
  cfg.eta = parse_rational(a.eta);
  cfg.depth = a.depth;
  cfg.mode = parse_mode(a.mode);
  if (cfg.mode == BuildMode::kStrict) cfg.constants = PackConstants::strict();
  cfg.budget.max_sublevels = a.max_sublevels;
  cfg.budget.residual_samples = a.residual_samples;
  cfg.budget.max_nodes_per_level = a.max_nodes_per_level;
  const ETree tree = build_e_tree(cfg);
  save_tree(a.out, tree);
  for (const auto& h : tree.header) io.kv("config", h);
  io.kv("nodes", std::to_string(tree.nodes.size()));
  io.kv("renormalized", yesno(tree.renormalized));
  io.kv("truncated", yesno(tree.truncated));
  for (const auto& n : tree.notes) io.kv("note", n);
  io.kv("tree", a.out);
  return tree.truncated ? kExitBudget : kExitOk;
}

struct BuildProductArgs {
  std::vector<std::string> psis, kappa;
  std::string epsilon = "1/10", mode = "desk", q1 = "20", out;
  int depth = 3;
  std::size_t rects_per_ball = 4, balls_per_rect = 4;
};

int run_build_product(const Io& io, const BuildProductArgs& a) {
  ProductConfig cfg;
  cfg.psis = parse_psis(a.psis);
  cfg.epsilon = parse_rational(a.epsilon);
  cfg.depth = a.depth;
  cfg.schedule.mode = parse_mode(a.mode);
  cfg.schedule.q1 = BigInt(a.q1);
  if (!a.kappa.empty()) {
    cfg.schedule.kappa.clear();
    for (const auto& k : a.kappa) cfg.schedule.kappa.push_back(parse_rational(k));
  }
  cfg.budget.rects_per_ball = a.rects_per_ball;
  cfg.budget.balls_per_rect = a.balls_per_rect;
  const PTree tree = build_product_tree(cfg);
  save_tree(a.out, tree);
  for (const auto& h : tree.header) io.kv("config", h);
  io.kv("nodes", std::to_string(tree.nodes.size()));
  io.kv("truncated", yesno(tree.truncated));
  for (const auto& n : tree.notes) io.kv("note", n);
  io.kv("tree", a.out);
  return tree.truncated ? kExitBudget : kExitOk;
}

// Looks up `key=` among the echoed config tokens.
std::optional<std::string> config_value(const std::vector<std::string>& header, const std::string& key) {
  for (const auto& line : header) {
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
      if (tok.rfind(key + "=", 0) == 0) return tok.substr(key.size() + 1);
    }
  }
  return std::nullopt;
}

struct VerifyArgs {
  std::string tree, s, eta;
};

int run_verify(const Io& io, const VerifyArgs& a) {
  const AnyTree any = load_tree(a.tree);
  if (const auto* et = std::get_if<ETree>(&any)) {
    const auto s_text = a.s.empty() ? config_value(et->header, "s") : std::optional<std::string>(a.s);
    const auto eta_text = a.eta.empty() ? config_value(et->header, "eta") : std::optional<std::string>(a.eta);
    if (!s_text || !eta_text) throw Error(ErrorKind::kUsage, "tree header lacks s/eta; pass --s and --eta");
    const ETreeReport rep = verify_e_tree(*et, s_in_unit(*s_text), parse_rational(*eta_text));
    io.kv("kind", "e");
    io.kv("nodes", std::to_string(rep.nodes));
    io.kv("scaling", rep.scaling.to_string());
    io.kv("scaling_node", std::to_string(rep.scaling_node));
    io.kv("verify", rep.ok() ? "pass" : "fail");
    echo_violations(io, rep.violations);
    return rep.ok() ? kExitOk : kExitCertification;
  }
  const PTree& pt = std::get<PTree>(any);
  const PTreeReport rep = verify_product_tree(pt);
  io.kv("kind", "product");
  io.kv("nodes", std::to_string(rep.nodes));
  io.kv("count_ratio", fmt(rep.count_ratio_min) + ".." + fmt(rep.count_ratio_max));
  io.kv("verify", rep.ok() ? "pass" : "fail");
  echo_violations(io, rep.violations);
  return rep.ok() ? kExitOk : kExitCertification;
}

struct MdpArgs {
  std::string tree, s, csv;
  std::size_t samples = 64;
};

int run_mdp(const Io& io, const MdpArgs& a, std::uint64_t seed) {
  const AnyTree any = load_tree(a.tree);
  const Rational s = parse_rational(a.s);
  if (s < 0) throw Error(ErrorKind::kUsage, "--s must be non-negative");
  const MdpReport rep = std::visit([&](const auto& t) { return mdp_check(t, s, a.samples, seed); }, any);
  io.kv("s", to_short_string(s));
  io.kv("seed", std::to_string(seed));
  io.kv("samples", std::to_string(rep.samples.size()));
  io.kv("zero_mass", std::to_string(rep.zero_mass));
  io.kv("max_ratio", fmt(rep.max_ratio));
  if (!rep.samples.empty() && rep.max_ratio > 0) {
    const MdpSample& w = rep.samples[rep.worst];
    std::string c;
    for (const auto& x : w.center) c += (c.empty() ? "" : ",") + to_string(x);
    io.kv("worst_center", c);
    io.kv("worst_radius", to_string(w.radius));
  }
  for (const auto& [bin, count] : rep.histogram) io.kv("hist_log2_" + std::to_string(bin), std::to_string(count));
  if (!a.csv.empty()) {
    CsvTable t;
    t.comments = {"mdp tree=" + a.tree + " s=" + to_short_string(s) + " samples=" + std::to_string(a.samples) +
                  " seed=" + std::to_string(seed)};
    t.digits = 0;
    t.columns = {{"log2_ratio_bin", {}}, {"count", {}}};
    for (const auto& [bin, count] : rep.histogram) {
      t.columns[0].cells.emplace_back(Rational(bin));
      t.columns[1].cells.emplace_back(Rational(static_cast<long>(count)));
    }
    emit_csv(a.csv, t);
  }
  return kExitOk;
}

struct FitArgs {
  std::string tree, csv;
  std::size_t samples = 8;
  int j_min = 0, j_max = 0;
};

int run_fit(const Io& io, const FitArgs& a) {
  const AnyTree any = load_tree(a.tree);
  const auto* pt = std::get_if<PTree>(&any);
  if (!pt) throw Error(ErrorKind::kUsage, "fit-dimension needs a product tree");
  const DimensionFit fit = local_dimension_fit(*pt, a.samples, a.j_min, a.j_max);
  io.kv("slope", fmt(fit.slope));
  io.kv("stderr", fmt(fit.stderr_));
  io.kv("intercept", fmt(fit.intercept));
  io.kv("target", fmt(fit.target));
  io.kv("target_minus_2eps", fmt(fit.target - 2 * pt->schedule.epsilon.get_d()));
  io.kv("points", std::to_string(fit.points.size()));
  if (!a.csv.empty()) {
    CsvTable t;
    t.comments = {"fit-dimension tree=" + a.tree + " samples=" + std::to_string(a.samples),
                  "slope=" + fmt(fit.slope) + " stderr=" + fmt(fit.stderr_) + " target=" + fmt(fit.target)};
    t.digits = 6;
    t.columns = {{"sample", {}}, {"log_delta", {}}, {"log_mass", {}}, {"log_mass_lower", {}}};
    for (const FitPoint& p : fit.points) {
      t.columns[0].cells.emplace_back(std::to_string(p.sample));
      t.columns[1].cells.emplace_back(Rational(-p.log2_delta));
      t.columns[2].cells.push_back(csv_number(log2_rational(p.upper)));
      t.columns[3].cells.push_back(p.lower > 0 ? csv_number(log2_rational(p.lower)) : CsvCell(std::string("-inf")));
    }
    emit_csv(a.csv, t);
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const Io io{out, err};
  CLI::App app{"Exact Diophantine approximation and Cantor-set constructions"};
  app.require_subcommand(1, 1);
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Seed for sampling (mdp)");

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "Hausdorff measure verdict for psi at s");
  classify->add_option("--psi", ca.psi, "psi grammar, e.g. pow:c=1,tau=3")->required();
  classify->add_option("--s", ca.s, "exponent in (0,1]")->required();

  std::vector<std::string> dim_psis;
  auto* dim = app.add_subcommand("dim", "Hausdorff dimension of E(psi) or of the product set");
  dim->add_option("--psi", dim_psis, "psi (repeat for products)")->required();

  SelectArgs sa;
  auto* select = app.add_subcommand("select", "Separated rational selection in a ball");
  select->add_option("--psi", sa.psis)->required();
  select->add_option("--Q", sa.Q)->required();
  select->add_option("--k", sa.k);
  select->add_option("--center", sa.center);
  select->add_option("--radius", sa.radius);
  select->add_option("--mode", sa.mode, "strict or exploratory");
  select->add_option("--max-candidates", sa.max_candidates);
  select->add_option("--csv", sa.csv);

  PackArgs pa;
  auto* pack = app.add_subcommand("pack", "Plan and materialize an s-blowup packing");
  pack->add_option("--psi", pa.psi)->required();
  pack->add_option("--s", pa.s)->required();
  pack->add_option("--k", pa.k);
  pack->add_option("--center", pa.center);
  pack->add_option("--radius", pa.radius);
  pack->add_option("--qprime", pa.qprime);
  pack->add_option("--constants", pa.constants, "desk or strict");
  pack->add_option("--q", pa.q, "override the base scale Q");
  pack->add_flag("--plan-only", pa.plan_only);
  pack->add_option("--csv", pa.csv);

  BuildEArgs ea;
  auto* build_e = app.add_subcommand("build-e", "Build the one-dimensional Cantor tree");
  build_e->add_option("--psi", ea.psi);
  build_e->add_option("--s", ea.s);
  build_e->add_option("--eta", ea.eta);
  build_e->add_option("--depth", ea.depth);
  build_e->add_option("--mode", ea.mode, "desk or strict");
  build_e->add_option("--max-sublevels", ea.max_sublevels);
  build_e->add_option("--residual-samples", ea.residual_samples);
  build_e->add_option("--max-nodes-per-level", ea.max_nodes_per_level);
  build_e->add_option("--out", ea.out)->required();

  BuildProductArgs ba;
  auto* build_p = app.add_subcommand("build-product", "Build the n-dimensional product tree");
  build_p->add_option("--psi", ba.psis)->required();
  build_p->add_option("--epsilon", ba.epsilon);
  build_p->add_option("--depth", ba.depth);
  build_p->add_option("--mode", ba.mode, "desk or strict");
  build_p->add_option("--kappa", ba.kappa, "desk scale factors (repeat; last repeats)");
  build_p->add_option("--q1", ba.q1);
  build_p->add_option("--rects-per-ball", ba.rects_per_ball);
  build_p->add_option("--balls-per-rect", ba.balls_per_rect);
  build_p->add_option("--out", ba.out)->required();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Re-certify a saved tree");
  verify->add_option("--tree", va.tree)->required();
  verify->add_option("--s", va.s);
  verify->add_option("--eta", va.eta);

  MdpArgs ma;
  auto* mdp = app.add_subcommand("mdp", "Empirical mass-distribution constant");
  mdp->add_option("--tree", ma.tree)->required();
  mdp->add_option("--s", ma.s)->required();
  mdp->add_option("--samples", ma.samples);
  mdp->add_option("--seed", seed);
  mdp->add_option("--csv", ma.csv);

  FitArgs fa;
  auto* fitd = app.add_subcommand("fit-dimension", "Local dimension fit on a product tree");
  fitd->add_option("--tree", fa.tree)->required();
  fitd->add_option("--samples", fa.samples);
  fitd->add_option("--jmin", fa.j_min);
  fitd->add_option("--jmax", fa.j_max);
  fitd->add_option("--csv", fa.csv);

  WitnessArgs wa;
  auto* witness = app.add_subcommand("witness", "Search for band witnesses");
  witness->add_option("--x", wa.x, "rat:p/q | surd:a,b,c,d | cf:periodic:[...]")->required();
  witness->add_option("--psi", wa.psi)->required();
  witness->add_option("--eps", wa.eps)->required();
  witness->add_option("--qmax", wa.qmax);
  witness->add_option("--csv", wa.csv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitPrecondition;
  }

  std::string cmd = "dioph";
  for (int i = 1; i < argc; ++i) cmd += std::string(" ") + argv[i];
  io.kv("command", cmd);
  io.kv("precision_cap", std::to_string(precision_cap()));
  try {
    if (*classify) return run_classify(io, ca);
    if (*dim) return run_dim(io, dim_psis);
    if (*select) return run_select(io, sa);
    if (*pack) return run_pack(io, pa);
    if (*build_e) return run_build_e(io, ea);
    if (*build_p) return run_build_product(io, ba);
    if (*verify) return run_verify(io, va);
    if (*mdp) return run_mdp(io, ma, seed);
    if (*fitd) return run_fit(io, fa);
    if (*witness) return run_witness(io, wa);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::invalid_argument& e) {
    err << "error: invalid argument: " << e.what() << '\n';
    return kExitPrecondition;
  }
  return kExitPrecondition;
}

}  // namespace dioph
