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

#include "dioph/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <utility>

namespace dioph {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "InvalidInput";
    case ErrorKind::kUsage: return "Usage";
    case ErrorKind::kUndecided: return "Undecided";
    case ErrorKind::kHypothesisViolation: return "HypothesisViolation";
    case ErrorKind::kCardinalityShortfall: return "CardinalityShortfall";
    case ErrorKind::kNoWindow: return "NoWindow";
    case ErrorKind::kBudgetExceeded: return "BudgetExceeded";
    case ErrorKind::kCoverageShortfall: return "CoverageShortfall";
    case ErrorKind::kCertification: return "CertificationFailure";
    case ErrorKind::kFormat: return "FormatError";
  }
  return "?";
}

int precision_cap() {
  static const int cap = [] {
    if (const char* env = std::getenv("DIOPH_PRECISION_CAP")) {
      const int v = std::atoi(env);
      if (v >= 64) return v;
    }
    return kDefaultPrecisionCap;
  }();
  return cap;
}

// ---------------------------------------------------------------------------
// Rationals

Rational reduce(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(ErrorKind::kInvalidInput, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational reduce(std::int64_t num, std::int64_t den) {
  return reduce(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
}

std::string to_string(const BigInt& z) { return z.get_str(10); }

std::string to_string(const Rational& r) {
  return r.get_num().get_str(10) + "/" + r.get_den().get_str(10);
}

std::string to_short_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str(10);
  return to_string(r);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

BigInt parse_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw Error(ErrorKind::kInvalidInput, "malformed integer '" + std::string(s) + "'");
  }
  BigInt z(std::string(s), 10);
  return neg ? BigInt(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw Error(ErrorKind::kInvalidInput, "empty rational");
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    return reduce(parse_integer(s.substr(0, slash)), parse_integer(s.substr(slash + 1)));
  }
  // Decimal with optional exponent.
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    exponent = parse_integer(s.substr(e + 1)).get_si();
    s = s.substr(0, e);
  }
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
    frac_digits = static_cast<long>(s.size() - dot - 1);
  } else {
    digits = std::string(s);
  }
  if (!all_digits(digits)) {
    throw Error(ErrorKind::kInvalidInput, "malformed rational '" + std::string(text) + "'");
  }
  BigInt num(digits, 10);
  if (neg) num = -num;
  const long shift = exponent - frac_digits;
  BigInt scale = pow(BigInt(10), static_cast<unsigned long>(shift < 0 ? -shift : shift));
  return shift >= 0 ? reduce(num * scale, BigInt(1)) : reduce(num, scale);
}

BigInt floor(const Rational& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

BigInt ceil(const Rational& r) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational pow(const Rational& base, long exponent) {
  if (exponent == 0) return Rational(1);
  if (exponent < 0) {
    if (base == 0) throw Error(ErrorKind::kInvalidInput, "zero to a negative power");
    const Rational inv = 1 / base;
    return pow(Rational(inv), -exponent);
  }
  const auto e = static_cast<unsigned long>(exponent);
  return reduce(pow(base.get_num(), e), pow(base.get_den(), e));
}

std::optional<Rational> exact_root(const Rational& x, unsigned long b) {
  if (b == 1) return x;
  if (x < 0) return std::nullopt;
  BigInt n, d;
  if (mpz_root(n.get_mpz_t(), x.get_num_mpz_t(), b) == 0) return std::nullopt;
  if (mpz_root(d.get_mpz_t(), x.get_den_mpz_t(), b) == 0) return std::nullopt;
  return reduce(n, d);
}

// ---------------------------------------------------------------------------
// Mpfr

Mpfr::Mpfr(int bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

Mpfr::Mpfr(const Mpfr& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Mpfr::Mpfr(Mpfr&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

Mpfr& Mpfr::operator=(const Mpfr& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Mpfr& Mpfr::operator=(Mpfr&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Mpfr::~Mpfr() { mpfr_clear(value_); }

// ---------------------------------------------------------------------------
// Interval

namespace {

void set_rational(Mpfr& out, const Rational& r, mpfr_rnd_t rnd) {
  mpfr_set_q(out.get(), r.get_mpq_t(), rnd);
}

Interval make_bounds(int bits, const std::function<void(Mpfr&, Mpfr&)>& fill) {
  Mpfr lo(bits), hi(bits);
  fill(lo, hi);
  return Interval::from_bounds(lo, hi);
}

Rational mpfr_to_rational(const Mpfr& v) {
  if (!mpfr_number_p(v.get())) {
    throw Error(ErrorKind::kInvalidInput, "non-finite bound");
  }
  Rational out;
  mpfr_exp_t exp;
  BigInt mant;
  if (mpfr_zero_p(v.get())) return Rational(0);
  exp = mpfr_get_z_2exp(mant.get_mpz_t(), v.get());
  if (exp >= 0) {
    BigInt scaled = mant << static_cast<unsigned long>(exp);
    return Rational(scaled);
  }
  BigInt den = BigInt(1) << static_cast<unsigned long>(-exp);
  return reduce(mant, den);
}

}  // namespace

Interval attach_source(Interval iv, IntervalSource source) {
  if (!iv.is_exact()) {
    iv.source_ = std::make_shared<const IntervalSource>(std::move(source));
  }
  return iv;
}

Interval::Interval() : lo_(kDefaultPrecision), hi_(kDefaultPrecision), exact_(Rational(0)) {}

Interval Interval::exact(const Rational& value, int bits) {
  Interval iv;
  iv.bits_ = bits;
  iv.lo_ = Mpfr(bits);
  iv.hi_ = Mpfr(bits);
  set_rational(iv.lo_, value, MPFR_RNDD);
  set_rational(iv.hi_, value, MPFR_RNDU);
  iv.exact_ = value;
  return iv;
}

Interval Interval::exact(long value, int bits) { return exact(Rational(value), bits); }

Interval Interval::from_bounds(const Mpfr& lo, const Mpfr& hi) {
  if (mpfr_nan_p(lo.get()) || mpfr_nan_p(hi.get()) || mpfr_greater_p(lo.get(), hi.get())) {
    throw Error(ErrorKind::kInvalidInput, "invalid interval bounds");
  }
  Interval iv;
  iv.bits_ = std::min(lo.bits(), hi.bits());
  iv.lo_ = lo;
  iv.hi_ = hi;
  iv.exact_.reset();
  if (mpfr_equal_p(lo.get(), hi.get()) && mpfr_number_p(lo.get())) {
    iv.exact_ = mpfr_to_rational(lo);
  }
  return iv;
}

Interval Interval::from_source(IntervalSource source, int bits) {
  Interval iv = source(bits);
  return attach_source(std::move(iv), std::move(source));
}

Interval Interval::refine(int bits) const {
  if (exact_) return exact(*exact_, bits);
  if (source_) return attach_source((*source_)(bits), *source_);
  return *this;
}

double Interval::lo_double() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }
double Interval::mid_double() const {
  return 0.5 * (mpfr_get_d(lo_.get(), MPFR_RNDN) + mpfr_get_d(hi_.get(), MPFR_RNDN));
}

Rational Interval::lo_rational() const { return exact_ ? *exact_ : mpfr_to_rational(lo_); }
Rational Interval::hi_rational() const { return exact_ ? *exact_ : mpfr_to_rational(hi_); }
Rational Interval::mid_rational() const {
  if (exact_) return *exact_;
  return (mpfr_to_rational(lo_) + mpfr_to_rational(hi_)) / 2;
}

namespace {

std::string mpfr_decimal(const Mpfr& v) {
  if (mpfr_zero_p(v.get())) return "0";
  mpfr_exp_t exp = 0;
  char* raw = mpfr_get_str(nullptr, &exp, 10, 0, v.get(), MPFR_RNDN);
  std::string digits(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!digits.empty() && digits.front() == '-') {
    sign = "-";
    digits.erase(0, 1);
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  std::string out = sign + digits.substr(0, 1);
  if (digits.size() > 1) out += "." + digits.substr(1);
  out += "e" + std::to_string(static_cast<long>(exp) - 1);
  return out;
}

}  // namespace

std::string Interval::to_string() const {
  if (exact_) return dioph::to_string(*exact_);
  return mpfr_decimal(lo_) + ".." + mpfr_decimal(hi_) + "@" + std::to_string(bits_);
}

Interval parse_interval(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) return Interval::exact(parse_rational(text));
  const auto at = text.find('@', dots);
  if (at == std::string_view::npos) {
    throw Error(ErrorKind::kFormat, "interval without precision: '" + std::string(text) + "'");
  }
  const int bits = std::atoi(std::string(text.substr(at + 1)).c_str());
  if (bits < MPFR_PREC_MIN) throw Error(ErrorKind::kFormat, "bad interval precision");
  Mpfr lo(bits), hi(bits);
  const std::string lo_s(text.substr(0, dots));
  const std::string hi_s(text.substr(dots + 2, at - dots - 2));
  if (mpfr_set_str(lo.get(), lo_s.c_str(), 10, MPFR_RNDN) != 0 ||
      mpfr_set_str(hi.get(), hi_s.c_str(), 10, MPFR_RNDN) != 0) {
    throw Error(ErrorKind::kFormat, "malformed interval '" + std::string(text) + "'");
  }
  return Interval::from_bounds(lo, hi);
}

// ---------------------------------------------------------------------------
// Arithmetic

namespace {

int join_bits(const Interval& a, const Interval& b) { return std::max(a.bits(), b.bits()); }

IntervalSource binary_source(const Interval& a, const Interval& b,
                             Interval (*op)(const Interval&, const Interval&)) {
  return [a, b, op](int bits) { return op(a.refine(bits), b.refine(bits)); };
}

Interval with_source(Interval iv, const Interval& a, const Interval& b,
                     Interval (*op)(const Interval&, const Interval&)) {
  if (iv.is_exact() || !a.refinable() || !b.refinable()) return iv;
  return attach_source(std::move(iv), binary_source(a, b, op));
}

Interval add_impl(const Interval& a, const Interval& b) {
  if (a.is_exact() && b.is_exact()) {
    return Interval::exact(*a.exact_value() + *b.exact_value(), join_bits(a, b));
  }
  return make_bounds(join_bits(a, b), [&](Mpfr& lo, Mpfr& hi) {
    mpfr_add(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
    mpfr_add(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  });
}

Interval sub_impl(const Interval& a, const Interval& b) {
  if (a.is_exact() && b.is_exact()) {
    return Interval::exact(*a.exact_value() - *b.exact_value(), join_bits(a, b));
  }
  return make_bounds(join_bits(a, b), [&](Mpfr& lo, Mpfr& hi) {
    mpfr_sub(lo.get(), a.lo().get(), b.hi().get(), MPFR_RNDD);
    mpfr_sub(hi.get(), a.hi().get(), b.lo().get(), MPFR_RNDU);
  });
}

Interval mul_impl(const Interval& a, const Interval& b) {
  if (a.is_exact() && b.is_exact()) {
    return Interval::exact(*a.exact_value() * *b.exact_value(), join_bits(a, b));
  }
  const int bits = join_bits(a, b);
  return make_bounds(bits, [&](Mpfr& lo, Mpfr& hi) {
    const mpfr_srcptr xs[2] = {a.lo().get(), a.hi().get()};
    const mpfr_srcptr ys[2] = {b.lo().get(), b.hi().get()};
    Mpfr t(bits);
    bool first = true;
    for (auto x : xs) {
      for (auto y : ys) {
        mpfr_mul(t.get(), x, y, MPFR_RNDD);
        if (first || mpfr_less_p(t.get(), lo.get())) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), x, y, MPFR_RNDU);
        if (first || mpfr_greater_p(t.get(), hi.get())) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    }
  });
}

Interval div_impl(const Interval& a, const Interval& b) {
  if (b.is_exact() && *b.exact_value() == 0) {
    throw Error(ErrorKind::kInvalidInput, "division by zero");
  }
  if (a.is_exact() && b.is_exact()) {
    return Interval::exact(*a.exact_value() / *b.exact_value(), join_bits(a, b));
  }
  if (mpfr_sgn(b.lo().get()) <= 0 && mpfr_sgn(b.hi().get()) >= 0) {
    throw Error(ErrorKind::kUndecided, "divisor enclosure contains zero");
  }
  const int bits = join_bits(a, b);
  return make_bounds(bits, [&](Mpfr& lo, Mpfr& hi) {
    const mpfr_srcptr xs[2] = {a.lo().get(), a.hi().get()};
    const mpfr_srcptr ys[2] = {b.lo().get(), b.hi().get()};
    Mpfr t(bits);
    bool first = true;
    for (auto x : xs) {
      for (auto y : ys) {
        mpfr_div(t.get(), x, y, MPFR_RNDD);
        if (first || mpfr_less_p(t.get(), lo.get())) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
        mpfr_div(t.get(), x, y, MPFR_RNDU);
        if (first || mpfr_greater_p(t.get(), hi.get())) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    }
  });
}

}  // namespace

Interval operator+(const Interval& a, const Interval& b) {
  return with_source(add_impl(a, b), a, b, &add_impl);
}
Interval operator-(const Interval& a, const Interval& b) {
  return with_source(sub_impl(a, b), a, b, &sub_impl);
}
Interval operator*(const Interval& a, const Interval& b) {
  return with_source(mul_impl(a, b), a, b, &mul_impl);
}
Interval operator/(const Interval& a, const Interval& b) {
  return with_source(div_impl(a, b), a, b, &div_impl);
}
Interval operator-(const Interval& a) { return Interval::exact(0L, a.bits()) - a; }

namespace {

void require_positive(const Interval& x, const char* what) {
  if (mpfr_sgn(x.lo().get()) <= 0) {
    if (x.is_exact() || mpfr_sgn(x.hi().get()) <= 0) {
      throw Error(ErrorKind::kInvalidInput, std::string(what) + ": non-positive base");
    }
    throw Error(ErrorKind::kUndecided, std::string(what) + ": base enclosure touches zero");
  }
}

Interval power_impl(const Interval& x, const Rational& exponent, int bits) {
  require_positive(x, "eval_power");
  const Rational& e = exponent;
  const bool integer = e.get_den() == 1;
  if (x.is_exact()) {
    if (integer && mpz_fits_slong_p(e.get_num_mpz_t())) {
      return Interval::exact(pow(*x.exact_value(), e.get_num().get_si()), bits);
    }
    if (mpz_fits_ulong_p(e.get_den_mpz_t()) && mpz_fits_slong_p(e.get_num_mpz_t())) {
      if (auto root = exact_root(*x.exact_value(), e.get_den().get_ui())) {
        return Interval::exact(pow(*root, e.get_num().get_si()), bits);
      }
    }
  }
  if (!mpz_fits_ulong_p(e.get_den_mpz_t()) || !mpz_fits_slong_p(e.get_num_mpz_t())) {
    throw Error(ErrorKind::kInvalidInput, "exponent too large");
  }
  const unsigned long root = e.get_den().get_ui();
  const long num = e.get_num().get_si();
  const unsigned long mag = static_cast<unsigned long>(num < 0 ? -num : num);
  const int work = bits + 32;
  // Monotone increasing map t -> t^(mag/root) on positive reals.
  auto up_power = [&](Mpfr& out, mpfr_srcptr base, mpfr_rnd_t rnd) {
    Mpfr t(work);
    if (root == 1) {
      mpfr_set(t.get(), base, rnd);
    } else {
      mpfr_rootn_ui(t.get(), base, root, rnd);
    }
    mpfr_pow_ui(out.get(), t.get(), mag, rnd);
  };
  Mpfr xlo(work), xhi(work);
  if (x.is_exact()) {
    set_rational(xlo, *x.exact_value(), MPFR_RNDD);
    set_rational(xhi, *x.exact_value(), MPFR_RNDU);
  } else {
    mpfr_set(xlo.get(), x.lo().get(), MPFR_RNDD);
    mpfr_set(xhi.get(), x.hi().get(), MPFR_RNDU);
  }
  return make_bounds(bits, [&](Mpfr& lo, Mpfr& hi) {
    if (num >= 0) {
      Mpfr a(work), b(work);
      up_power(a, xlo.get(), MPFR_RNDD);
      up_power(b, xhi.get(), MPFR_RNDU);
      mpfr_set(lo.get(), a.get(), MPFR_RNDD);
      mpfr_set(hi.get(), b.get(), MPFR_RNDU);
    } else {
      Mpfr a(work), b(work);
      up_power(a, xhi.get(), MPFR_RNDU);  // largest denominator
      up_power(b, xlo.get(), MPFR_RNDD);  // smallest denominator
      mpfr_ui_div(lo.get(), 1, a.get(), MPFR_RNDD);
      mpfr_ui_div(hi.get(), 1, b.get(), MPFR_RNDU);
    }
  });
}

}  // namespace

Interval eval_power(const Interval& x, const Rational& exponent, int bits) {
  Interval out = power_impl(x, exponent, bits);
  if (out.is_exact() || !x.refinable()) return out;
  return attach_source(std::move(out), [x, exponent](int b) {
    return power_impl(x.refine(b), exponent, b);
  });
}

namespace {

Interval log_impl(const Interval& x, int bits) {
  require_positive(x, "eval_log");
  if (x.is_exact() && *x.exact_value() == 1) return Interval::exact(0L, bits);
  const int work = bits + 16;
  Mpfr xlo(work), xhi(work);
  if (x.is_exact()) {
    set_rational(xlo, *x.exact_value(), MPFR_RNDD);
    set_rational(xhi, *x.exact_value(), MPFR_RNDU);
  } else {
    mpfr_set(xlo.get(), x.lo().get(), MPFR_RNDD);
    mpfr_set(xhi.get(), x.hi().get(), MPFR_RNDU);
  }
  return make_bounds(bits, [&](Mpfr& lo, Mpfr& hi) {
    mpfr_log(lo.get(), xlo.get(), MPFR_RNDD);
    mpfr_log(hi.get(), xhi.get(), MPFR_RNDU);
  });
}

Interval sqrt_impl(const Interval& x, int bits) { return power_impl(x, Rational(1, 2), bits); }

Interval exp_impl(const Interval& x, int bits) {
  if (x.is_exact() && *x.exact_value() == 0) return Interval::exact(1L, bits);
  const int work = bits + 16;
  Mpfr xlo(work), xhi(work);
  if (x.is_exact()) {
    set_rational(xlo, *x.exact_value(), MPFR_RNDD);
    set_rational(xhi, *x.exact_value(), MPFR_RNDU);
  } else {
    mpfr_set(xlo.get(), x.lo().get(), MPFR_RNDD);
    mpfr_set(xhi.get(), x.hi().get(), MPFR_RNDU);
  }
  return make_bounds(bits, [&](Mpfr& lo, Mpfr& hi) {
    mpfr_exp(lo.get(), xlo.get(), MPFR_RNDD);
    mpfr_exp(hi.get(), xhi.get(), MPFR_RNDU);
  });
}

template <Interval (*Impl)(const Interval&, int)>
Interval unary_with_source(const Interval& x, int bits) {
  Interval out = Impl(x, bits);
  if (out.is_exact() || !x.refinable()) return out;
  return attach_source(std::move(out), [x](int b) { return Impl(x.refine(b), b); });
}

}  // namespace

Interval eval_log(const Interval& x, int bits) { return unary_with_source<&log_impl>(x, bits); }
Interval eval_sqrt(const Interval& x, int bits) { return unary_with_source<&sqrt_impl>(x, bits); }
Interval eval_exp(const Interval& x, int bits) { return unary_with_source<&exp_impl>(x, bits); }

Interval hull(const Interval& a, const Interval& b) {
  if (a.is_exact() && b.is_exact() && *a.exact_value() == *b.exact_value()) return a;
  return make_bounds(join_bits(a, b), [&](Mpfr& lo, Mpfr& hi) {
    mpfr_min(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
    mpfr_max(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  });
}

Interval interval_min(const Interval& a, const Interval& b) {
  if (a.is_exact() && b.is_exact()) {
    return *a.exact_value() <= *b.exact_value() ? a : b;
  }
  if (mpfr_lessequal_p(a.hi().get(), b.lo().get())) return a;
  if (mpfr_lessequal_p(b.hi().get(), a.lo().get())) return b;
  return make_bounds(join_bits(a, b), [&](Mpfr& lo, Mpfr& hi) {
    mpfr_min(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
    mpfr_min(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  });
}

Interval interval_max(const Interval& a, const Interval& b) {
  if (a.is_exact() && b.is_exact()) {
    return *a.exact_value() >= *b.exact_value() ? a : b;
  }
  if (mpfr_greaterequal_p(a.lo().get(), b.hi().get())) return a;
  if (mpfr_greaterequal_p(b.lo().get(), a.hi().get())) return b;
  return make_bounds(join_bits(a, b), [&](Mpfr& lo, Mpfr& hi) {
    mpfr_max(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
    mpfr_max(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  });
}

bool contains(const Interval& iv, const Rational& value) {
  if (iv.is_exact()) return *iv.exact_value() == value;
  return mpfr_cmp_q(iv.lo().get(), value.get_mpq_t()) <= 0 &&
         mpfr_cmp_q(iv.hi().get(), value.get_mpq_t()) >= 0;
}

const char* to_string(Order order) {
  switch (order) {
    case Order::kLess: return "Less";
    case Order::kEqual: return "Equal";
    case Order::kGreater: return "Greater";
  }
  return "?";
}

namespace {

std::optional<Order> try_order(const Interval& a, const Interval& b) {
  if (a.is_exact() && b.is_exact()) {
    const int c = cmp(*a.exact_value(), *b.exact_value());
    return c < 0 ? Order::kLess : (c > 0 ? Order::kGreater : Order::kEqual);
  }
  if (a.is_exact() && mpfr_cmp_q(b.lo().get(), a.exact_value()->get_mpq_t()) > 0) return Order::kLess;
  if (a.is_exact() && mpfr_cmp_q(b.hi().get(), a.exact_value()->get_mpq_t()) < 0) return Order::kGreater;
  if (b.is_exact() && mpfr_cmp_q(a.hi().get(), b.exact_value()->get_mpq_t()) < 0) return Order::kLess;
  if (b.is_exact() && mpfr_cmp_q(a.lo().get(), b.exact_value()->get_mpq_t()) > 0) return Order::kGreater;
  if (mpfr_less_p(a.hi().get(), b.lo().get())) return Order::kLess;
  if (mpfr_greater_p(a.lo().get(), b.hi().get())) return Order::kGreater;
  return std::nullopt;
}

}  // namespace

Order cmp_certified(const Interval& a, const Interval& b, int max_bits) {
  if (auto o = try_order(a, b)) return *o;
  int bits = std::max({a.bits(), b.bits(), kDefaultPrecision});
  while (bits < max_bits) {
    bits = std::min(bits * 2, max_bits);
    const bool progress = a.refinable() || b.refinable();
    if (!progress) break;
    if (auto o = try_order(a.refine(bits), b.refine(bits))) return *o;
  }
  throw Error(ErrorKind::kUndecided, "comparison undecided at " + std::to_string(max_bits) +
                                         " bits: " + a.to_string() + " vs " + b.to_string());
}

bool certified_less(const Interval& a, const Interval& b, int max_bits) {
  return cmp_certified(a, b, max_bits) == Order::kLess;
}

bool certified_less_equal(const Interval& a, const Interval& b, int max_bits) {
  return cmp_certified(a, b, max_bits) != Order::kGreater;
}

BigInt certified_floor(const Interval& v) {
  if (v.is_exact()) return floor(*v.exact_value());
  BigInt k = floor(v.lo_rational());
  while (cmp_certified(v, Interval::exact(Rational(k + 1))) != Order::kLess) ++k;
  while (cmp_certified(v, Interval::exact(Rational(k))) == Order::kLess) --k;
  return k;
}

double log2_rational(const Rational& r) {
  if (r <= 0) throw Error(ErrorKind::kInvalidInput, "log2 of a non-positive value");
  long e1 = 0, e2 = 0;
  const double m1 = mpz_get_d_2exp(&e1, r.get_num_mpz_t());
  const double m2 = mpz_get_d_2exp(&e2, r.get_den_mpz_t());
  return std::log2(m1) - std::log2(m2) + static_cast<double>(e1 - e2);
}

}  // namespace dioph
