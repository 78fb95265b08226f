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

#include "dioph/psi.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace dioph {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string make_label(const PsiSpec::Family& f) {
  return std::visit(
      Overloaded{
          [](const PowerLaw& p) {
            return "pow:c=" + to_short_string(p.c) + ",tau=" + to_short_string(p.tau);
          },
          [](const PowerLog& p) {
            return "powlog:c=" + to_short_string(p.c) + ",tau=" + to_short_string(p.tau) +
                   ",beta=" + to_short_string(p.beta);
          },
          [](const Table& t) { return "table:" + t.source; },
          [](const Exponential& e) {
            return "exp:c=" + to_short_string(e.c) + ",base=" + to_short_string(e.base);
          },
      },
      f);
}

void validate(const PsiSpec::Family& f) {
  auto bad = [](const std::string& why) { throw Error(ErrorKind::kInvalidInput, why); };
  std::visit(Overloaded{
                 [&](const PowerLaw& p) {
                   if (p.c <= 0) bad("pow: c must be positive");
                   if (p.tau <= 0) bad("pow: tau must be positive");
                 },
                 [&](const PowerLog& p) {
                   if (p.c <= 0) bad("powlog: c must be positive");
                   if (p.tau <= 0) bad("powlog: tau must be positive");
                 },
                 [&](const Table& t) {
                   if (t.values.empty()) bad("table: no entries");
                   for (const auto& [q, v] : t.values) {
                     if (q < 1) bad("table: keys must be >= 1");
                     if (v <= 0) bad("table: values must be positive");
                   }
                 },
                 [&](const Exponential& e) {
                   if (e.c <= 0) bad("exp: c must be positive");
                   if (e.base <= 1) bad("exp: base must exceed 1");
                 },
             },
             f);
}

bool less_than(const Interval& a, const Rational& b) {
  return cmp_certified(a, Interval::exact(b)) == Order::kLess;
}

}  // namespace

PsiSpec::PsiSpec(Family family) : family_(std::move(family)) {
  validate(family_);
  label_ = make_label(family_);
}

PsiSpec PsiSpec::power(const Rational& c, const Rational& tau) { return PsiSpec(PowerLaw{c, tau}); }

PsiSpec PsiSpec::power_log(const Rational& c, const Rational& tau, const Rational& beta) {
  return PsiSpec(PowerLog{c, tau, beta});
}

Interval PsiSpec::evaluate(const Rational& x, int bits) const {
  if (x <= 0) throw Error(ErrorKind::kInvalidInput, "psi evaluated at a non-positive argument");
  const Interval xi = Interval::exact(x, bits);
  return std::visit(
      Overloaded{
          [&](const PowerLaw& p) {
            return Interval::exact(p.c, bits) * eval_power(xi, -p.tau, bits);
          },
          [&](const PowerLog& p) {
            Interval v = Interval::exact(p.c, bits) * eval_power(xi, -p.tau, bits);
            if (p.beta != 0) {
              v = v * eval_power(eval_log(xi + Interval::exact(2L, bits), bits), -p.beta, bits);
            }
            return v;
          },
          [&](const Table& t) {
            auto it = t.values.upper_bound(static_cast<long long>(floor(x).get_si()));
            const bool beyond = floor(x) > BigInt(std::to_string(t.values.rbegin()->first));
            if (it == t.values.begin() || beyond) {
              throw Error(ErrorKind::kInvalidInput,
                          "table psi has no value at " + to_short_string(x));
            }
            return Interval::exact(std::prev(it)->second, bits);
          },
          [&](const Exponential& e) {
            if (x <= 64) {
              return Interval::exact(e.c, bits) * eval_power(Interval::exact(e.base, bits), -x, bits);
            }
            const Interval lb = eval_log(Interval::exact(e.base, bits), bits);
            return Interval::exact(e.c, bits) * eval_exp(-(xi * lb), bits);
          },
      },
      family_);
}

Interval PsiSpec::evaluate_pow(const Rational& x, const Rational& s, int bits) const {
  if (s == 1) return evaluate(x, bits);
  if (const auto* p = std::get_if<PowerLaw>(&family_)) {
    if (x <= 0) throw Error(ErrorKind::kInvalidInput, "psi evaluated at a non-positive argument");
    return eval_power(Interval::exact(p->c, bits), s, bits) *
           eval_power(Interval::exact(x, bits), -p->tau * s, bits);
  }
  return eval_power(evaluate(x, bits), s, bits);
}

Table load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kInvalidInput, "cannot open table '" + path + "'");
  Table t;
  t.source = path;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string q, v;
    if (!(ls >> q)) continue;
    if (!(ls >> v)) {
      throw Error(ErrorKind::kFormat, path + ":" + std::to_string(lineno) + ": missing value");
    }
    const Rational key = parse_rational(q);
    if (key.get_den() != 1 || !key.get_num().fits_slong_p()) {
      throw Error(ErrorKind::kFormat, path + ":" + std::to_string(lineno) + ": bad key");
    }
    t.values[key.get_num().get_si()] = parse_rational(v);
  }
  return t;
}

PsiSpec parse_psi(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorKind::kUsage, "psi spec needs a family prefix: '" + std::string(text) + "'");
  }
  const std::string family(text.substr(0, colon));
  const std::string_view rest = text.substr(colon + 1);
  if (family == "table") return PsiSpec(load_table(std::string(rest)));

  std::map<std::string, Rational> args;
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    auto comma = rest.find(',', pos);
    if (comma == std::string_view::npos) comma = rest.size();
    const std::string_view item = rest.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::kUsage, "psi parameter without '=': '" + std::string(item) + "'");
    }
    args[std::string(item.substr(0, eq))] = parse_rational(item.substr(eq + 1));
    pos = comma + 1;
  }
  auto take = [&](const std::string& key, std::optional<Rational> fallback = std::nullopt) {
    auto it = args.find(key);
    if (it == args.end()) {
      if (fallback) return *fallback;
      throw Error(ErrorKind::kUsage, family + ": missing parameter '" + key + "'");
    }
    Rational v = it->second;
    args.erase(it);
    return v;
  };
  std::optional<PsiSpec> out;
  if (family == "pow") {
    const Rational c = take("c", Rational(1));
    out.emplace(PowerLaw{c, take("tau")});
  } else if (family == "powlog") {
    const Rational c = take("c", Rational(1));
    const Rational tau = take("tau");
    out.emplace(PowerLog{c, tau, take("beta")});
  } else if (family == "exp") {
    const Rational c = take("c", Rational(1));
    out.emplace(Exponential{c, take("base")});
  } else {
    throw Error(ErrorKind::kUsage, "unknown psi family '" + family + "'");
  }
  if (!args.empty()) {
    throw Error(ErrorKind::kUsage, family + ": unknown parameter '" + args.begin()->first + "'");
  }
  return *out;
}

LambdaInfo lambda_of(const PsiSpec& psi, int sample_budget) {
  LambdaInfo info;
  std::visit(Overloaded{
                 [&](const PowerLaw& p) { info.exact = p.tau; },
                 [&](const PowerLog& p) { info.exact = p.tau; },
                 [&](const Exponential&) { info.infinite = true; },
                 [&](const Table& t) {
                   info.estimate_only = true;
                   const long long lo = std::max(2LL, t.values.begin()->first);
                   const long long hi = t.values.rbegin()->first;
                   std::vector<double> ratios;
                   for (long long q = 2; q <= hi && static_cast<int>(ratios.size()) < sample_budget;
                        q *= 2) {
                     if (q < lo) continue;
                     const double v = psi.evaluate(static_cast<long>(q)).mid_double();
                     ratios.push_back(-std::log(v) / std::log(static_cast<double>(q)));
                   }
                   if (ratios.empty()) {
                     const double v = psi.evaluate(static_cast<long>(hi)).mid_double();
                     ratios.push_back(hi > 1 ? -std::log(v) / std::log(static_cast<double>(hi)) : 0.0);
                   }
                   double best = ratios.back();
                   for (std::size_t i = ratios.size() / 2; i < ratios.size(); ++i) {
                     best = std::min(best, ratios[i]);
                   }
                   info.estimate = best;
                 },
             },
             psi.family());
  if (info.exact) info.estimate = info.exact->get_d();
  return info;
}

std::string to_string(const Verdict& v) {
  switch (v.kind) {
    case VerdictKind::kProvedSymbolically: return "ProvedSymbolically";
    case VerdictKind::kCheckedOnRange: return "CheckedOnRange([1," + std::to_string(v.range_hi) + "])";
    case VerdictKind::kViolated: return "Violated(q=" + v.witness.get_str() + ")";
  }
  return "?";
}

BigInt first_true(const BigInt& lo, const std::function<bool(const BigInt&)>& pred,
                  const BigInt& limit) {
  if (pred(lo)) return lo;
  BigInt bad = lo;
  BigInt step = 1;
  BigInt good;
  for (;;) {
    BigInt probe = lo + step;
    if (probe > limit) {
      if (bad < limit && pred(limit)) {
        good = limit;
        break;
      }
      throw Error(ErrorKind::kBudgetExceeded, "search exceeded " + limit.get_str());
    }
    if (pred(probe)) {
      good = probe;
      break;
    }
    bad = probe;
    step *= 2;
  }
  while (good - bad > 1) {
    const BigInt mid = (good + bad) / 2;
    if (pred(mid)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  return good;
}

namespace {

Verdict proved() { return {}; }
Verdict violated(const BigInt& q) {
  Verdict v;
  v.kind = VerdictKind::kViolated;
  v.witness = q;
  return v;
}
Verdict checked(long long hi) {
  Verdict v;
  v.kind = VerdictKind::kCheckedOnRange;
  v.range_hi = hi;
  return v;
}

// x^2 psi(x)^s at integer q.
Interval x2_psi_s(const PsiSpec& psi, const Rational& s, const BigInt& q) {
  return Interval::exact(Rational(q * q)) * psi.evaluate_pow(Rational(q), s);
}

// Sign-analysis for x^{2-T} log(x+2)^{-B} on x >= 1: the point from which it is
// non-increasing, when one exists below a modest bound.
std::optional<BigInt> power_log_decreasing_from(const Rational& T, const Rational& B) {
  if (T < 2) return std::nullopt;
  if (T == 2) return B > 0 ? std::optional<BigInt>(1) : std::nullopt;
  if (B >= 0) return BigInt(1);
  const double x = std::exp(Rational(-B).get_d() / Rational(T - 2).get_d());
  if (x > 1e7) return std::nullopt;
  return BigInt(static_cast<long>(std::ceil(x)) + 1);
}

// Smallest Q0 with g(q) < 1/1000 for all q >= Q0, given g non-increasing on
// [mono_from, inf).
std::optional<BigInt> threshold_q0(const std::function<Interval(const BigInt&)>& g,
                                   const BigInt& mono_from) {
  const Rational thr(1, 1000);
  // A tie that no precision separates counts as "not below", which can only
  // move Q0 up.
  auto below = [&](const BigInt& q) {
    try {
      return less_than(g(q), thr);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kUndecided) throw;
      return false;
    }
  };
  BigInt first;
  try {
    first = first_true(mono_from, below, pow(BigInt(10), 60));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kBudgetExceeded) return std::nullopt;
    throw;
  }
  if (first > mono_from) return first;
  for (BigInt q = mono_from - 1; q >= 1; --q) {
    if (!below(q)) return BigInt(q + 1);
  }
  return BigInt(1);
}

std::optional<BigInt> table_q0(const Table& t, const PsiSpec& psi, const Rational& s,
                               long long scan_limit) {
  const long long lo = t.values.begin()->first;
  const long long hi = std::min(t.values.rbegin()->first, scan_limit);
  const Rational thr(1, 1000);
  for (long long q = hi; q >= lo; --q) {
    if (!less_than(x2_psi_s(psi, s, BigInt(static_cast<long>(q))), thr)) {
      if (q + 1 > t.values.rbegin()->first) return std::nullopt;
      return BigInt(static_cast<long>(q + 1));
    }
  }
  return BigInt(static_cast<long>(lo));
}

// Finds an integer q >= 1 where x^2 psi^s(q+1) > x^2 psi^s(q), doubling q.
std::optional<BigInt> find_increase(const PsiSpec& psi, const Rational& s, int max_doublings) {
  BigInt q = 1;
  for (int i = 0; i < max_doublings; ++i, q *= 2) {
    try {
      if (cmp_certified(x2_psi_s(psi, s, q + 1), x2_psi_s(psi, s, q)) == Order::kGreater) {
        return q;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kUndecided) throw;
    }
  }
  return std::nullopt;
}

}  // namespace

HypothesisReport check_hypotheses(const PsiSpec& psi, const Rational& s, long long scan_limit) {
  if (s <= 0 || s > 1) throw Error(ErrorKind::kInvalidInput, "s must lie in (0,1]");
  HypothesisReport r;
  auto g = [&](const Rational& exponent) {
    return [&psi, exponent](const BigInt& q) { return x2_psi_s(psi, exponent, q); };
  };
  std::visit(
      Overloaded{
          [&](const PowerLaw& p) {
            r.non_increasing = proved();
            r.little_o_x2 = p.tau > 2 ? proved() : violated(BigInt(1));
            r.x2_psi_s_non_increasing = p.tau * s >= 2 ? proved() : violated(BigInt(1));
            if (p.tau > 2 || (p.tau == 2 && p.c < Rational(1, 1000))) {
              r.q0 = threshold_q0(g(Rational(1)), BigInt(1));
            }
            if (p.tau * s >= 2) r.q0_s = threshold_q0(g(s), BigInt(1));
          },
          [&](const PowerLog& p) {
            if (p.beta >= 0 || -p.beta <= 2 * p.tau) {
              r.non_increasing = proved();
            } else {
              r.non_increasing = checked(scan_limit);
              for (long long q = 1; q < scan_limit; ++q) {
                if (cmp_certified(psi.evaluate(static_cast<long>(q + 1)),
                                  psi.evaluate(static_cast<long>(q))) == Order::kGreater) {
                  r.non_increasing = violated(BigInt(static_cast<long>(q)));
                  break;
                }
              }
            }
            const bool tends = p.tau > 2 || (p.tau == 2 && p.beta > 0);
            r.little_o_x2 = tends ? proved() : violated(BigInt(1));
            const Rational T = p.tau * s, B = p.beta * s;
            const bool mono = (T > 2 && (B >= 0 || -B <= 2 * (T - 2))) || (T == 2 && B >= 0);
            if (mono) {
              r.x2_psi_s_non_increasing = proved();
            } else if (auto q = find_increase(psi, s, 64)) {
              r.x2_psi_s_non_increasing = violated(*q);
            } else {
              r.x2_psi_s_non_increasing = checked(scan_limit);
            }
            if (auto from = power_log_decreasing_from(p.tau, p.beta)) {
              r.q0 = threshold_q0(g(Rational(1)), *from);
            }
            if (auto from = power_log_decreasing_from(T, B)) r.q0_s = threshold_q0(g(s), *from);
          },
          [&](const Exponential& e) {
            r.non_increasing = proved();
            r.little_o_x2 = proved();
            // x^2 b^{-sx} decreases from x = 2/(s log b) on.
            const double turn = 2.0 / (s.get_d() * std::log(e.base.get_d()));
            if (turn < 1.0) {
              r.x2_psi_s_non_increasing = proved();
            } else {
              r.x2_psi_s_non_increasing = violated(BigInt(1));
            }
            const BigInt from1(static_cast<long>(std::ceil(2.0 / std::log(e.base.get_d()))) + 1);
            r.q0 = threshold_q0(g(Rational(1)), from1);
            r.q0_s = threshold_q0(g(s), BigInt(static_cast<long>(std::ceil(turn)) + 1));
          },
          [&](const Table& t) {
            const long long lo = t.values.begin()->first;
            const long long hi = std::min(t.values.rbegin()->first, scan_limit);
            r.non_increasing = checked(hi);
            const Rational* prev = nullptr;
            for (const auto& [q, v] : t.values) {
              if (q > hi) break;
              if (prev && v > *prev) {
                r.non_increasing = violated(BigInt(static_cast<long>(q)));
                break;
              }
              prev = &v;
            }
            r.x2_psi_s_non_increasing = checked(hi);
            for (long long q = lo; q < hi; ++q) {
              const BigInt a(static_cast<long>(q)), b(static_cast<long>(q + 1));
              if (cmp_certified(x2_psi_s(psi, s, b), x2_psi_s(psi, s, a)) == Order::kGreater) {
                r.x2_psi_s_non_increasing = violated(a);
                break;
              }
            }
            // Finite data cannot show a limit; require the scanned tail to
            // decrease and end below where it started.
            r.little_o_x2 = checked(hi);
            for (long long q = lo; q < hi; ++q) {
              const BigInt a(static_cast<long>(q)), b(static_cast<long>(q + 1));
              if (cmp_certified(x2_psi_s(psi, 1, b), x2_psi_s(psi, 1, a)) == Order::kGreater) {
                r.little_o_x2 = violated(a);
                break;
              }
            }
            r.q0 = table_q0(t, psi, Rational(1), scan_limit);
            r.q0_s = table_q0(t, psi, s, scan_limit);
          },
      },
      psi.family());
  return r;
}

}  // namespace dioph
