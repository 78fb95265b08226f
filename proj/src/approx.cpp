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

#include "dioph/approx.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace dioph {

namespace {

using i128 = __int128;

BigInt isqrt(const BigInt& n) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const BigInt& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

int sign(const BigInt& z) { return sgn(z); }

// Sign of u + v*sqrt(D), D > 0 not a square.
int surd_sign(const BigInt& u, const BigInt& v, const BigInt& D) {
  const int su = sign(u), sv = sign(v);
  if (sv == 0) return su;
  if (su == 0 || su == sv) return sv;
  // Opposite signs: compare magnitudes.
  const int c = cmp(BigInt(v * v * D), BigInt(u * u));
  return c > 0 ? sv : su;
}

// Convergents of a finite list [a0; a1, ..., ak] as p/q pairs (last two).
void fold(const BigInt& a0, const std::vector<BigInt>& tail, BigInt& p1, BigInt& q1, BigInt& p0,
          BigInt& q0) {
  p0 = 1;
  q0 = 0;
  p1 = a0;
  q1 = 1;
  for (const BigInt& a : tail) {
    BigInt p = a * p1 + p0, q = a * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p;
    q1 = q;
  }
}

std::string surd_label(const QuadraticSurd& s) {
  return "surd:" + s.a.get_str() + "," + s.b.get_str() + "," + s.c.get_str() + "," + s.d.get_str();
}

std::string cf_label(const PeriodicCF& cf) {
  std::ostringstream os;
  os << "cf:periodic:[" << cf.a0.get_str() << ";";
  bool first = true;
  for (const auto& a : cf.prefix) {
    os << (first ? "" : ",") << a.get_str();
    first = false;
  }
  if (!cf.period.empty()) {
    os << (first ? "" : ",") << "(";
    for (std::size_t i = 0; i < cf.period.size(); ++i) os << (i ? "," : "") << cf.period[i].get_str();
    os << ")";
  }
  os << "]";
  return os.str();
}

}  // namespace

RealSpec::RealSpec(Variant v) : v_(std::move(v)) {
  QuadraticSurd surd;
  if (const auto* r = std::get_if<Rational>(&v_)) {
    rational_ = *r;
    label_ = "rat:" + to_string(*r);
    return;
  }
  if (const auto* s = std::get_if<QuadraticSurd>(&v_)) {
    if (s->c == 0) throw Error(ErrorKind::kInvalidInput, "surd: c must be nonzero");
    if (s->d <= 0 || is_square(s->d)) {
      throw Error(ErrorKind::kInvalidInput, "surd: d must be a positive non-square");
    }
    surd = *s;
    label_ = surd_label(*s);
  } else {
    const auto& cf = std::get<PeriodicCF>(v_);
    label_ = cf_label(cf);
    for (const auto& a : cf.prefix) {
      if (a < 1) throw Error(ErrorKind::kInvalidInput, "cf: partial quotients must be >= 1");
    }
    for (const auto& a : cf.period) {
      if (a < 1) throw Error(ErrorKind::kInvalidInput, "cf: partial quotients must be >= 1");
    }
    BigInt p1, q1, p0, q0;
    fold(cf.a0, cf.prefix, p1, q1, p0, q0);
    if (cf.period.empty()) {
      rational_ = reduce(p1, q1);
      return;
    }
    // y = [period..., y] solves C y^2 + (D - A) y - B = 0 for M = [[A,B],[C,D]].
    BigInt A, C, B, Dm;
    fold(cf.period.front(), std::vector<BigInt>(cf.period.begin() + 1, cf.period.end()), A, C, B, Dm);
    const BigInt disc = (A - Dm) * (A - Dm) + 4 * B * C;
    const BigInt u = A - Dm, w = 2 * C;  // y = (u + sqrt(disc)) / w
    // x = (p1 y + p0) / (q1 y + q0) = (alpha + beta r) / (gamma + delta r).
    const BigInt alpha = p1 * u + p0 * w, beta = p1;
    const BigInt gamma = q1 * u + q0 * w, delta = q1;
    surd.a = alpha * gamma - beta * delta * disc;
    surd.b = beta * gamma - alpha * delta;
    surd.c = gamma * gamma - delta * delta * disc;
    surd.d = disc;
  }
  if (surd.b == 0) {
    rational_ = reduce(surd.a, surd.c);
    return;
  }
  // (a + b sqrt d)/c -> (P + sqrt D)/Q with Q | D - P^2.
  const int sb = sign(surd.b);
  BigInt D = surd.b * surd.b * surd.d;
  BigInt P = sb * surd.a, Q = sb * surd.c;
  BigInt absQ = abs(Q);
  P *= absQ;
  D *= absQ * absQ;
  Q *= absQ;
  P_ = P;
  D_ = D;
  Q_ = Q;
}

RealSpec RealSpec::golden_conjugate() { return RealSpec(QuadraticSurd{-1, 1, 2, 5}); }

int RealSpec::compare(const Rational& r) const {
  if (rational_) return cmp(*rational_, r);
  // x - p/q = (qP - pQ + q sqrt D) / (qQ)
  const BigInt& p = r.get_num();
  const BigInt& q = r.get_den();
  const BigInt u = q * P_ - p * Q_;
  return surd_sign(u, q, D_) * sign(Q_);
}

Interval RealSpec::enclose(int bits) const {
  if (rational_) return Interval::exact(*rational_, bits);
  return (Interval::exact(Rational(P_), bits) + eval_sqrt(Interval::exact(Rational(D_), bits), bits)) /
         Interval::exact(Rational(Q_), bits);
}

Interval RealSpec::abs_diff(const Rational& r, int bits) const {
  if (rational_) return Interval::exact(abs(*rational_ - r), bits);
  const BigInt& p = r.get_num();
  const BigInt& q = r.get_den();
  const BigInt u = q * P_ - p * Q_;
  Interval v = (Interval::exact(Rational(u), bits) +
                Interval::exact(Rational(q), bits) * eval_sqrt(Interval::exact(Rational(D_), bits), bits)) /
               Interval::exact(Rational(q * Q_), bits);
  return compare(r) < 0 ? -v : v;
}

std::vector<BigInt> RealSpec::partial_quotients(std::size_t max_terms) const {
  std::vector<BigInt> out;
  if (const auto* cf = std::get_if<PeriodicCF>(&v_)) {
    out.push_back(cf->a0);
    for (std::size_t i = 0; out.size() < max_terms && i < cf->prefix.size(); ++i) {
      out.push_back(cf->prefix[i]);
    }
    for (std::size_t i = 0; out.size() < max_terms && !cf->period.empty(); ++i) {
      out.push_back(cf->period[i % cf->period.size()]);
    }
    if (out.size() > max_terms) out.resize(max_terms);
    return out;
  }
  if (rational_) {
    BigInt n = rational_->get_num(), d = rational_->get_den();
    while (d != 0 && out.size() < max_terms) {
      BigInt a;
      mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
      out.push_back(a);
      BigInt r = n - a * d;
      n = d;
      d = r;
    }
    return out;
  }
  BigInt P = P_, Q = Q_;
  const BigInt r = isqrt(D_);
  while (out.size() < max_terms) {
    BigInt a;
    if (Q > 0) {
      mpz_fdiv_q(a.get_mpz_t(), BigInt(P + r).get_mpz_t(), Q.get_mpz_t());
    } else {
      BigInt t;
      BigInt mq = -Q;
      mpz_fdiv_q(t.get_mpz_t(), BigInt(P + r).get_mpz_t(), mq.get_mpz_t());
      a = -(t + 1);
    }
    out.push_back(a);
    P = a * Q - P;
    Q = (D_ - P * P) / Q;
  }
  return out;
}

RealSpec parse_real(std::string_view text) {
  const std::string s(text);
  auto fail = [&]() -> RealSpec {
    throw Error(ErrorKind::kUsage, "malformed real spec '" + s + "'");
  };
  if (s.rfind("rat:", 0) == 0) return RealSpec(parse_rational(s.substr(4)));
  if (s.rfind("surd:", 0) == 0) {
    std::vector<BigInt> parts;
    std::stringstream ss(s.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const Rational v = parse_rational(item);
      if (v.get_den() != 1) fail();
      parts.push_back(v.get_num());
    }
    if (parts.size() != 4) fail();
    return RealSpec(QuadraticSurd{parts[0], parts[1], parts[2], parts[3]});
  }
  if (s.rfind("cf:periodic:[", 0) == 0 && s.back() == ']') {
    std::string body = s.substr(13, s.size() - 14);
    const auto semi = body.find(';');
    PeriodicCF cf;
    auto to_int = [&](std::string t) {
      t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }),
              t.end());
      const Rational v = parse_rational(t);
      if (v.get_den() != 1) fail();
      return v.get_num();
    };
    cf.a0 = to_int(body.substr(0, semi));
    if (semi != std::string::npos) {
      std::string rest = body.substr(semi + 1);
      std::string period;
      if (const auto open = rest.find('('); open != std::string::npos) {
        const auto close = rest.find(')', open);
        if (close == std::string::npos) fail();
        period = rest.substr(open + 1, close - open - 1);
        rest = rest.substr(0, open);
      }
      std::stringstream ps(rest);
      std::string item;
      while (std::getline(ps, item, ',')) {
        if (item.find_first_not_of(" \t") != std::string::npos) cf.prefix.push_back(to_int(item));
      }
      std::stringstream qs(period);
      while (std::getline(qs, item, ',')) {
        if (item.find_first_not_of(" \t") != std::string::npos) cf.period.push_back(to_int(item));
      }
    }
    return RealSpec(cf);
  }
  return fail();
}

ConvergentList cf_convergents(const RealSpec& x, const BigInt& q_limit) {
  ConvergentList out;
  BigInt p2 = 0, q2 = 1, p1 = 1, q1 = 0;
  std::size_t chunk = 32;
  std::size_t used = 0;
  for (;;) {
    const auto quotients = x.partial_quotients(chunk);
    for (; used < quotients.size(); ++used) {
      const BigInt& a = quotients[used];
      BigInt p = a * p1 + p2, q = a * q1 + q2;
      if (q > q_limit) return out;
      out.items.push_back({p, q, static_cast<long>(used)});
      p2 = p1;
      q2 = q1;
      p1 = p;
      q1 = q;
    }
    if (quotients.size() < chunk) {
      out.exhausted = true;
      return out;
    }
    chunk *= 2;
  }
}

Rational dirichlet(const RealSpec& x, const BigInt& Q) {
  if (Q < 1) throw Error(ErrorKind::kInvalidInput, "dirichlet: Q must be >= 1");
  const ConvergentList cl = cf_convergents(x, Q);
  if (cl.items.empty()) throw Error(ErrorKind::kInvalidInput, "dirichlet: no convergent");
  const Convergent& c = cl.items.back();
  const Rational pq = reduce(c.p, c.q);
  const Rational bound(BigInt(1), BigInt(c.q * Q));
  if (!(x.compare(pq + bound) < 0 && x.compare(pq - bound) > 0)) {
    throw Error(ErrorKind::kCertification, "dirichlet: bound failed for " + to_string(pq));
  }
  return pq;
}

// ---------------------------------------------------------------------------
// Farey enumeration

Fraction farey_successor(const Rational& x, std::int64_t n, bool inclusive) {
  if (n < 1) throw Error(ErrorKind::kInvalidInput, "farey order must be >= 1");
  if (x < 0) throw Error(ErrorKind::kInvalidInput, "farey_successor needs x >= 0");
  const BigInt& a = x.get_num();
  const BigInt& b = x.get_den();
  const BigInt fl = floor(x);
  if (inclusive && fl == x) return {fl.get_si(), 1};
  // Stern-Brocot descent keeping left outside and right inside the target
  // region {m > x} (or {m >= x}); runs of equal moves are taken at once.
  BigInt lp = fl, lq = 1, rp = 1, rq = 0;
  const BigInt N(static_cast<long>(n));
  for (;;) {
    bool moved = false;
    BigInt d1 = b * rp - a * rq;  // b*rq*(right - x)
    BigInt n1 = a * lq - b * lp;  // b*lq*(x - left)
    BigInt k;
    if (inclusive && d1 == 0) {
      k = -1;
    } else {
      k = inclusive ? BigInt((n1 - 1) / d1) : BigInt(n1 / d1);
    }
    if (rq > 0) {
      const BigInt cap = (N - lq) / rq;
      if (k < 0 || k > cap) k = cap;
    }
    if (k > 0) {
      lp += k * rp;
      lq += k * rq;
      moved = true;
      d1 = b * rp - a * rq;
      n1 = a * lq - b * lp;
    }
    const BigInt cap = (N - rq) / lq;
    if (n1 == 0) {
      k = cap;
    } else {
      k = inclusive ? BigInt(d1 / n1) : BigInt((d1 - 1) / n1);
      if (k > cap) k = cap;
    }
    if (k > 0) {
      rp += k * lp;
      rq += k * lq;
      moved = true;
    }
    if (!moved) break;
  }
  if (rq == 0 || !rp.fits_slong_p()) throw Error(ErrorKind::kInvalidInput, "no Farey successor");
  return {rp.get_si(), rq.get_si()};
}

namespace {

std::int64_t mod_inverse(std::int64_t c, std::int64_t d) {
  if (d == 1) return 0;
  BigInt inv;
  mpz_invert(inv.get_mpz_t(), BigInt(static_cast<long>(c % d)).get_mpz_t(),
             BigInt(static_cast<long>(d)).get_mpz_t());
  return inv.get_si();
}

}  // namespace

FareyStream::FareyStream(const FareyWindow& w) : FareyStream(w, w.lo, false) {}

FareyStream::FareyStream(const FareyWindow& w, const Rational& from, bool inclusive)
    : n_(w.q_max), q_min_(w.q_min), hi_(w.hi) {
  if (hi_.get_num().fits_slong_p() && hi_.get_den().fits_slong_p()) {
    hi_small_ = true;
    hi_num_ = hi_.get_num().get_si();
    hi_den_ = hi_.get_den().get_si();
  }
  if (w.q_min > w.q_max || w.q_max < 1 || w.hi <= w.lo || from >= w.hi) {
    done_ = true;
    return;
  }
  if (w.lo < 0 || w.hi > 1) throw Error(ErrorKind::kInvalidInput, "Farey window must lie in [0,1]");
  start(from < w.lo ? w.lo : from, from < w.lo ? false : inclusive);
}

void FareyStream::start(const Rational& from, bool inclusive) {
  const Fraction succ = farey_successor(from, n_, inclusive);
  c_ = succ.p;
  d_ = succ.q;
  // Predecessor in F_n: b*c - a*d = 1 with the largest b <= n.
  const std::int64_t inv = mod_inverse(c_, d_);
  std::int64_t b = inv + ((n_ - inv) / d_) * d_;
  if (b == 0) b = d_;
  a_ = static_cast<std::int64_t>((static_cast<i128>(b) * c_ - 1) / d_);
  b_ = b;
}

std::optional<Fraction> FareyStream::next() {
  while (!done_) {
    const bool past =
        hi_small_ ? static_cast<i128>(c_) * hi_den_ >= static_cast<i128>(hi_num_) * d_
                  : cmp(Rational(BigInt(static_cast<long>(c_)), BigInt(static_cast<long>(d_))), hi_) >= 0;
    if (past) {
      done_ = true;
      break;
    }
    const Fraction out{c_, d_};
    const std::int64_t k = (n_ + b_) / d_;
    const std::int64_t e = k * c_ - a_;
    const std::int64_t f = k * d_ - b_;
    a_ = c_;
    b_ = d_;
    c_ = e;
    d_ = f;
    if (out.q >= q_min_) return out;
  }
  return std::nullopt;
}

std::vector<Fraction> farey_enumerate(const FareyWindow& w) {
  std::vector<Fraction> out;
  FareyStream s(w);
  while (auto f = s.next()) out.push_back(*f);
  return out;
}

}  // namespace dioph
