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

#include "dioph/tree_io.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace dioph {

namespace {

const char kMagic[] = "#cantor-tree v1";

std::string fraction_str(const Fraction& f) { return std::to_string(f.p) + "/" + std::to_string(f.q); }

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++lineno_;
    return true;
  }
  int lineno() const { return lineno_; }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::kFormat, "line " + std::to_string(lineno_) + ": " + what);
  }

 private:
  std::istream& in_;
  int lineno_ = 0;
};

// Positional tokens followed by key=value fields.
struct Record {
  std::vector<std::string> pos;
  std::map<std::string, std::string> kv;

  static Record parse(const std::string& line, const Reader& r) {
    Record rec;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) {
        if (!rec.kv.empty()) r.fail("positional field after key=value fields");
        rec.pos.push_back(tok);
      } else if (!rec.kv.emplace(tok.substr(0, eq), tok.substr(eq + 1)).second) {
        r.fail("duplicate field '" + tok.substr(0, eq) + "'");
      }
    }
    return rec;
  }

  const std::string& need(const std::string& key, const Reader& r) const {
    const auto it = kv.find(key);
    if (it == kv.end()) r.fail("missing field '" + key + "'");
    return it->second;
  }
};

template <class F>
auto guarded(const Reader& r, const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::exception& e) {
    r.fail("bad " + what + " (" + e.what() + ")");
  }
}

std::int64_t to_i64(const Reader& r, const std::string& what, const std::string& s) {
  return guarded(r, what, [&] {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return static_cast<std::int64_t>(v);
  });
}

Rational to_rat(const Reader& r, const std::string& what, const std::string& s) {
  return guarded(r, what, [&] { return parse_rational(s); });
}

BigInt to_big(const Reader& r, const std::string& what, const std::string& s) {
  return guarded(r, what, [&] { return BigInt(s); });
}

Fraction to_frac(const Reader& r, const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) r.fail("bad src '" + s + "'");
  return {to_i64(r, "src", s.substr(0, slash)), to_i64(r, "src", s.substr(slash + 1))};
}

bool to_flag(const Reader& r, const std::string& what, const std::string& s) {
  if (s != "0" && s != "1") r.fail("bad " + what + " flag '" + s + "'");
  return s == "1";
}

std::string mode_str(BuildMode m) { return m == BuildMode::kDesk ? "desk" : "strict"; }

void write_nodes(std::ostream& out, const ETree& t) {
  for (const ENode& v : t.nodes) {
    out << v.id << ' ' << v.parent << ' ' << v.level << ' ' << v.sublevel << ' ' << to_string(v.kind)
        << " dir=1 center=" << v.ball.center.to_string() << " radius=" << v.ball.radius.to_string()
        << " mass=" << to_string(v.mass) << " G=" << v.G.get_str() << " src=" << fraction_str(v.pq)
        << " first=" << v.first_child << " nchild=" << v.child_count << '\n';
  }
}

}  // namespace

void write_tree(std::ostream& out, const ETree& t) {
  out << kMagic << " kind=e nodes=" << t.nodes.size() << " renormalized=" << t.renormalized
      << " truncated=" << t.truncated << '\n';
  for (const auto& h : t.header) out << "#config " << h << '\n';
  for (const auto& n : t.notes) out << "#note " << n << '\n';
  write_nodes(out, t);
}

void write_tree(std::ostream& out, const PTree& t) {
  const QSchedule& s = t.schedule;
  out << kMagic << " kind=product nodes=" << t.nodes.size() << " dim=" << s.dim() << " depth=" << t.depth
      << " truncated=" << t.truncated << '\n';
  for (const auto& h : t.header) out << "#config " << h << '\n';
  for (const auto& n : t.notes) out << "#note " << n << '\n';
  for (const auto& p : s.psis) out << "#schedule psi=" << p.label() << '\n';
  std::vector<std::string> qs, ks;
  for (const auto& q : s.Q) qs.push_back(q.get_str());
  for (const auto& k : s.kappa) ks.push_back(to_string(k));
  out << "#schedule epsilon=" << to_string(s.epsilon) << " Q0=" << s.Q0.get_str() << " mode=" << mode_str(s.mode)
      << " Q=" << join(qs) << " kappa=" << join(ks) << '\n';
  for (const auto& n : s.notes) out << "#schedule-note " << n << '\n';
  for (const PNode& v : t.nodes) {
    out << v.id << ' ' << v.parent << ' ' << v.level << " 0 " << to_string(v.kind) << " dir=" << v.dir;
    for (std::size_t i = 0; i < v.centers.size(); ++i) out << " center_" << i + 1 << '=' << to_string(v.centers[i]);
    for (std::size_t i = 0; i < v.radii.size(); ++i) out << " radius_" << i + 1 << '=' << to_string(v.radii[i]);
    out << " mass=" << to_string(v.mass) << " G=0 src=" << fraction_str(v.source)
        << " declared=" << v.declared.get_str() << " first=" << v.first_child << " nchild=" << v.child_count << '\n';
  }
}

AnyTree read_tree(std::istream& in) {
  Reader r(in);
  std::string line;
  if (!r.next(line)) throw Error(ErrorKind::kFormat, "line 1: empty file");
  if (line.rfind(kMagic, 0) != 0) {
    if (line.rfind("#cantor-tree", 0) == 0) r.fail("unsupported version: '" + line + "'");
    r.fail("not a cantor-tree file");
  }
  const Record head = Record::parse(line.substr(sizeof kMagic - 1), r);
  const std::string kind = head.need("kind", r);
  if (kind != "e" && kind != "product") r.fail("unknown tree kind '" + kind + "'");
  const bool product = kind == "product";
  const std::int64_t count = to_i64(r, "nodes", head.need("nodes", r));
  if (count < 0) r.fail("negative node count");

  std::vector<std::string> config, notes, sched_notes;
  std::vector<PsiSpec> psis;
  std::optional<Record> sched;
  ETree et;
  PTree pt;
  const std::size_t dim = product ? static_cast<std::size_t>(to_i64(r, "dim", head.need("dim", r))) : 1;
  std::int64_t seen = 0;
  auto take_prefix = [&](const std::string& pfx, std::vector<std::string>& dst) {
    if (line.rfind(pfx, 0) != 0) return false;
    dst.push_back(line.substr(pfx.size()));
    return true;
  };
  while (seen < count && r.next(line)) {
    if (line.empty()) r.fail("empty line");
    if (line.front() == '#') {
      if (seen > 0) r.fail("header line after the first node");
      if (take_prefix("#config ", config) || take_prefix("#note ", notes) ||
          take_prefix("#schedule-note ", sched_notes)) {
        continue;
      }
      if (product && line.rfind("#schedule psi=", 0) == 0) {
        const std::string label = line.substr(14);
        psis.push_back(guarded(r, "psi", [&] { return parse_psi(label); }));
        continue;
      }
      if (product && line.rfind("#schedule ", 0) == 0) {
        sched = Record::parse(line.substr(10), r);
        continue;
      }
      r.fail("unknown header line");
    }
    const Record rec = Record::parse(line, r);
    if (rec.pos.size() != 5) r.fail("expected 5 positional fields, found " + std::to_string(rec.pos.size()));
    const std::int64_t id = to_i64(r, "id", rec.pos[0]);
    if (id != seen) r.fail("node id " + rec.pos[0] + " out of order");
    const std::int64_t parent = to_i64(r, "parent", rec.pos[1]);
    const int level = static_cast<int>(to_i64(r, "level", rec.pos[2]));
    const int sub = static_cast<int>(to_i64(r, "sublevel", rec.pos[3]));
    const Rational mass = to_rat(r, "mass", rec.need("mass", r));
    const Fraction src = to_frac(r, rec.need("src", r));
    const auto first = static_cast<std::size_t>(to_i64(r, "first", rec.need("first", r)));
    const auto nchild = static_cast<std::size_t>(to_i64(r, "nchild", rec.need("nchild", r)));
    const int dir = static_cast<int>(to_i64(r, "dir", rec.need("dir", r)));
    if (!product) {
      ENode v;
      v.id = id;
      v.parent = parent;
      v.level = level;
      v.sublevel = sub;
      if (rec.pos[4] == "ball") {
        v.kind = NodeKind::kBall;
      } else if (rec.pos[4] == "cell") {
        v.kind = NodeKind::kCell;
      } else {
        r.fail("unknown node kind '" + rec.pos[4] + "'");
      }
      if (dir != 1) r.fail("one-dimensional tree with dir=" + std::to_string(dir));
      v.ball.center = guarded(r, "center", [&] { return parse_interval(rec.need("center", r)); });
      v.ball.radius = guarded(r, "radius", [&] { return parse_interval(rec.need("radius", r)); });
      v.mass = mass;
      v.G = to_big(r, "G", rec.need("G", r));
      v.pq = src;
      v.first_child = first;
      v.child_count = nchild;
      et.nodes.push_back(std::move(v));
    } else {
      PNode v;
      v.id = id;
      v.parent = parent;
      v.level = level;
      if (rec.pos[4] == "ball") {
        v.kind = PKind::kBall;
      } else if (rec.pos[4] == "rect") {
        v.kind = PKind::kRect;
      } else {
        r.fail("unknown node kind '" + rec.pos[4] + "'");
      }
      v.dir = dir;
      for (std::size_t i = 1; i <= dim; ++i) {
        v.centers.push_back(to_rat(r, "center", rec.need("center_" + std::to_string(i), r)));
        v.radii.push_back(to_rat(r, "radius", rec.need("radius_" + std::to_string(i), r)));
      }
      v.mass = mass;
      v.source = src;
      v.declared = to_big(r, "declared", rec.need("declared", r));
      v.first_child = first;
      v.child_count = nchild;
      pt.nodes.push_back(std::move(v));
    }
    ++seen;
  }
  if (seen < count) {
    r.fail("file ends after " + std::to_string(seen) + " of " + std::to_string(count) + " nodes");
  }
  if (r.next(line)) r.fail("content after the last node");

  if (!product) {
    et.header = std::move(config);
    et.notes = std::move(notes);
    et.renormalized = to_flag(r, "renormalized", head.need("renormalized", r));
    et.truncated = to_flag(r, "truncated", head.need("truncated", r));
    return et;
  }
  if (!sched) r.fail("missing #schedule parameters");
  if (psis.size() != dim) r.fail("schedule lists " + std::to_string(psis.size()) + " psi for dim " + std::to_string(dim));
  QSchedule& s = pt.schedule;
  s.psis = std::move(psis);
  s.epsilon = to_rat(r, "epsilon", sched->need("epsilon", r));
  s.Q0 = to_big(r, "Q0", sched->need("Q0", r));
  const std::string mode = sched->need("mode", r);
  if (mode != "desk" && mode != "strict") r.fail("bad mode '" + mode + "'");
  s.mode = mode == "desk" ? BuildMode::kDesk : BuildMode::kStrict;
  for (const auto& q : split(sched->need("Q", r), ',')) s.Q.push_back(to_big(r, "Q", q));
  for (const auto& k : split(sched->need("kappa", r), ',')) s.kappa.push_back(to_rat(r, "kappa", k));
  s.notes = std::move(sched_notes);
  pt.header = std::move(config);
  pt.notes = std::move(notes);
  pt.depth = static_cast<int>(to_i64(r, "depth", head.need("depth", r)));
  pt.truncated = to_flag(r, "truncated", head.need("truncated", r));
  return pt;
}

void save_tree(const std::string& path, const AnyTree& tree) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kInvalidInput, "cannot write '" + path + "'");
  std::visit([&](const auto& t) { write_tree(out, t); }, tree);
  if (!out) throw Error(ErrorKind::kInvalidInput, "write failed for '" + path + "'");
}

AnyTree load_tree(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInvalidInput, "cannot open '" + path + "'");
  return read_tree(in);
}

}  // namespace dioph
