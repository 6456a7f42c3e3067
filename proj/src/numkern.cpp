#include "constforge/numkern.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <cstring>

namespace constforge {

namespace {

constexpr double kLog2Of10 = 3.3219280948873623;
constexpr double kLog10Of2 = 0.30102999566398120;

// Per-thread working precision; module-level default keeps casual use sane.
thread_local long tl_working_bits = 0;

long working_bits() noexcept {
  if (tl_working_bits == 0) tl_working_bits = bits_for_digits(50);
  return tl_working_bits;
}

}  // namespace

PrecCtx make_context(int digits, int guard, int ladder_step) {
  if (digits < 8)
    throw InvalidArgument("context digits must be >= 8, got " +
                          std::to_string(digits));
  if (guard < 5)
    throw InvalidArgument("context guard must be >= 5, got " +
                          std::to_string(guard));
  if (ladder_step < 5)
    throw InvalidArgument("context ladder_step must be >= 5, got " +
                          std::to_string(ladder_step));
  if (digits > 1000000)
    throw InvalidArgument("context digits must be <= 1000000");
  return PrecCtx{digits, guard, ladder_step};
}

long bits_for_digits(int decimal_digits) noexcept {
  if (decimal_digits < 1) decimal_digits = 1;
  return static_cast<long>(std::ceil(decimal_digits * kLog2Of10)) + 8;
}

int digits_for_bits(long bits) noexcept {
  if (bits < 2) return 0;
  return static_cast<int>(std::floor(bits * kLog10Of2));
}

long current_precision_bits() noexcept { return working_bits(); }

int current_precision_digits() noexcept {
  return digits_for_bits(working_bits());
}

WorkingPrecision::WorkingPrecision(int decimal_digits)
    : saved_bits_(working_bits()) {
  if (decimal_digits < 1 || decimal_digits > 10000000)
    throw InvalidArgument("working precision digits out of range: " +
                          std::to_string(decimal_digits));
  tl_working_bits = bits_for_digits(decimal_digits);
}

WorkingPrecision::~WorkingPrecision() { tl_working_bits = saved_bits_; }

// ---------------------------------------------------------------- Real ----

Real::Real() {
  mpfr_init2(v_, working_bits());
  mpfr_set_zero(v_, 1);
}

Real::Real(long v) {
  // At least 64 bits so machine integers always round-trip exactly.
  mpfr_init2(v_, std::max(working_bits(), 64L));
  mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(const mpz_class& v) {
  long need = static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2)) + 1;
  mpfr_init2(v_, std::max(working_bits(), need));
  mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& v) {
  mpfr_init2(v_, working_bits());
  mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  if (this != &o) mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::from_decimal(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  std::string buf(s);
  if (buf.empty()) throw InvalidArgument("empty decimal literal");
  Real r;
  char* end = nullptr;
  mpfr_strtofr(r.v_, buf.c_str(), &end, 10, MPFR_RNDN);
  if (end != buf.c_str() + buf.size())
    throw InvalidArgument("bad decimal literal: '" + buf + "'");
  if (!mpfr_number_p(r.v_))
    throw InvalidArgument("decimal literal is not finite: '" + buf + "'");
  return r;
}

Real Real::from_ratio(long num, long den) {
  if (den == 0) throw DomainError("ratio with zero denominator");
  Real r;
  mpfr_set_si(r.v_, num, MPFR_RNDN);
  mpfr_div_si(r.v_, r.v_, den, MPFR_RNDN);
  return r;
}

bool Real::is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
bool Real::is_negative() const noexcept {
  return mpfr_sgn(v_) < 0;
}
bool Real::is_integer() const noexcept { return mpfr_integer_p(v_) != 0; }
bool Real::is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
int Real::sgn() const noexcept {
  if (mpfr_zero_p(v_)) return 0;
  return mpfr_sgn(v_) < 0 ? -1 : 1;
}

long Real::precision_bits() const noexcept { return mpfr_get_prec(v_); }

Real Real::at_working_precision() const {
  Real r;
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

long Real::to_long() const {
  if (!is_integer()) throw DomainError("to_long on a non-integer value");
  if (!mpfr_fits_slong_p(v_, MPFR_RNDN))
    throw DomainError("integer value does not fit a long");
  return mpfr_get_si(v_, MPFR_RNDN);
}

double Real::to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }

std::string Real::to_decimal(int digits) const {
  if (digits < 1) throw InvalidArgument("to_decimal needs digits >= 1");
  if (!is_finite()) throw DomainError("to_decimal on a non-finite value");
  if (is_zero()) return "0";

  mpfr_t mag;
  mpfr_init2(mag, mpfr_get_prec(v_));
  mpfr_abs(mag, v_, MPFR_RNDN);
  mpfr_exp_t e10 = 0;
  char* raw = mpfr_get_str(nullptr, &e10, 10, static_cast<size_t>(digits),
                           mag, MPFR_RNDN);
  std::string ds(raw);
  mpfr_free_str(raw);
  mpfr_clear(mag);

  // ds holds `digits` significant digits of 0.ds x 10^e10.
  std::string out;
  if (is_negative()) out += '-';
  long e = static_cast<long>(e10);
  if (e > 0 && e <= digits + 6) {
    if (e >= static_cast<long>(ds.size())) {
      out += ds;
      out.append(e - ds.size(), '0');  // integer wider than its digits
    } else {
      out += ds.substr(0, e);
      out += '.';
      out += ds.substr(e);
    }
  } else if (e <= 0 && e > -6) {
    out += "0.";
    out.append(-e, '0');
    out += ds;
  } else {
    out += ds.substr(0, 1);
    if (ds.size() > 1) {
      out += '.';
      out += ds.substr(1);
    }
    out += 'e';
    long sci = e - 1;
    if (sci >= 0) out += '+';
    out += std::to_string(sci);
  }
  return out;
}

Real& Real::operator+=(const Real& o) { return *this = *this + o; }
Real& Real::operator-=(const Real& o) { return *this = *this - o; }
Real& Real::operator*=(const Real& o) { return *this = *this * o; }
Real& Real::operator/=(const Real& o) { return *this = *this / o; }

Real operator+(const Real& a, const Real& b) {
  Real r;
  mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r;
  mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r;
  mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  Real r;
  mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Real operator-(const Real& a) {
  Real r(a);
  mpfr_neg(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

bool operator==(const Real& a, const Real& b) noexcept {
  return mpfr_equal_p(a.raw(), b.raw()) != 0;
}
bool operator!=(const Real& a, const Real& b) noexcept { return !(a == b); }
bool operator<(const Real& a, const Real& b) noexcept {
  return mpfr_less_p(a.raw(), b.raw()) != 0;
}
bool operator<=(const Real& a, const Real& b) noexcept {
  return mpfr_lessequal_p(a.raw(), b.raw()) != 0;
}
bool operator>(const Real& a, const Real& b) noexcept { return b < a; }
bool operator>=(const Real& a, const Real& b) noexcept { return b <= a; }

Real abs(const Real& a) {
  Real r(a);
  mpfr_abs(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

Real floor(const Real& a) {
  // Widen so the integer part is held exactly even when it needs more bits
  // than the operand carries.
  long need = std::max(a.precision_bits(),
                       static_cast<long>(mpfr_get_exp(a.raw())) + 2);
  Real r(a);
  mpfr_prec_round(r.raw(), std::max(need, static_cast<long>(MPFR_PREC_MIN)),
                  MPFR_RNDN);
  mpfr_floor(r.raw(), r.raw());
  return r;
}

Real sqrt(const Real& a) {
  if (a.is_negative()) throw DomainError("sqrt of a negative value");
  Real r;
  mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real exp(const Real& a) {
  Real r;
  mpfr_exp(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real log(const Real& a) {
  if (a.sgn() <= 0) throw DomainError("log needs a positive argument");
  Real r;
  mpfr_log(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real pow(const Real& base, const Real& expo) {
  Real r;
  mpfr_pow(r.raw(), base.raw(), expo.raw(), MPFR_RNDN);
  if (!r.is_finite())
    throw DomainError("pow out of domain (base " + base.to_decimal(8) +
                      ", exponent " + expo.to_decimal(8) + ")");
  return r;
}

Real pow(const Real& base, long expo) {
  Real r;
  mpfr_pow_si(r.raw(), base.raw(), expo, MPFR_RNDN);
  if (!r.is_finite()) throw DomainError("pow out of domain");
  return r;
}

Real sin(const Real& a) {
  Real r;
  mpfr_sin(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real cos(const Real& a) {
  Real r;
  mpfr_cos(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real sinh(const Real& a) {
  Real r;
  mpfr_sinh(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real cosh(const Real& a) {
  Real r;
  mpfr_cosh(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r;
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r;
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

Real nthroot(const Real& a, long k) {
  if (k < 1) throw DomainError("nthroot needs k >= 1");
  if (k % 2 == 0 && a.is_negative())
    throw DomainError("even root of a negative value");
  Real r;
  mpfr_rootn_ui(r.raw(), a.raw(), static_cast<unsigned long>(k), MPFR_RNDN);
  return r;
}

Real pow10(long e) {
  Real r;
  mpfr_set_si(r.raw(), 10, MPFR_RNDN);
  mpfr_pow_si(r.raw(), r.raw(), e, MPFR_RNDN);
  return r;
}

Real const_pi() {
  Real r;
  mpfr_const_pi(r.raw(), MPFR_RNDN);  // MPFR caches this per thread
  return r;
}

Real const_e() {
  Real one(1L);
  Real r;
  mpfr_exp(r.raw(), one.raw(), MPFR_RNDN);
  return r;
}

// ------------------------------------------------------------------ Cx ----

Cx& Cx::operator+=(const Cx& o) { return *this = *this + o; }
Cx& Cx::operator-=(const Cx& o) { return *this = *this - o; }
Cx& Cx::operator*=(const Cx& o) { return *this = *this * o; }
Cx& Cx::operator/=(const Cx& o) { return *this = *this / o; }

Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }

Cx operator*(const Cx& a, const Cx& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Cx operator/(const Cx& a, const Cx& b) {
  Real n = b.re * b.re + b.im * b.im;
  if (n.is_zero()) throw DomainError("complex division by zero");
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

Cx operator-(const Cx& a) { return {-a.re, -a.im}; }

bool operator==(const Cx& a, const Cx& b) noexcept {
  return a.re == b.re && a.im == b.im;
}
bool operator!=(const Cx& a, const Cx& b) noexcept { return !(a == b); }

Cx conj(const Cx& a) { return {a.re, -a.im}; }

Real abs(const Cx& a) { return hypot(a.re, a.im); }

Cx sqrt(const Cx& a) {
  if (a.is_zero()) return Cx(Real(0L));
  Real r = abs(a);
  Real half = Real::from_ratio(1, 2);
  if (!a.re.is_negative()) {
    Real u = sqrt((r + a.re) * half);
    return {u, a.im / (u + u)};
  }
  Real v = sqrt((r - a.re) * half);
  if (a.im.is_negative()) v = -v;
  return {a.im / (v + v), v};
}

Cx exp(const Cx& a) {
  Real m = exp(a.re);
  return {m * cos(a.im), m * sin(a.im)};
}

Cx log(const Cx& a) {
  if (a.is_zero()) throw DomainError("log of complex zero");
  return {log(abs(a)), atan2(a.im, a.re)};
}

Cx pow(const Cx& base, long expo) {
  if (expo == 0) return Cx(Real(1L));
  if (expo < 0) return Cx(Real(1L)) / pow(base, -expo);
  Cx acc(Real(1L));
  Cx sq = base;
  long n = expo;
  while (n > 0) {
    if (n & 1) acc = acc * sq;
    n >>= 1;
    if (n > 0) sq = sq * sq;
  }
  return acc;
}

Cx pow(const Cx& base, const Cx& expo) {
  if (expo.is_real() && expo.re.is_integer() &&
      mpfr_fits_slong_p(expo.re.raw(), MPFR_RNDN))
    return pow(base, expo.re.to_long());
  if (base.is_zero()) {
    if (expo.is_real() && expo.re.sgn() > 0) return Cx(Real(0L));
    throw DomainError("0 raised to a non-positive or complex power");
  }
  return exp(expo * log(base));
}

// -------------------------------------------------------- agreed digits ----

namespace {

struct Rounded {
  std::string digits;
  long exp;
};

// |x| rounded to n significant decimal digits (x nonzero, finite).
Rounded round_digits(mpfr_srcptr x, int n) {
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(n), x,
                           MPFR_RNDN);
  std::string ds(raw);
  mpfr_free_str(raw);
  if (!ds.empty() && ds[0] == '-') ds.erase(0, 1);
  return {std::move(ds), static_cast<long>(e)};
}

}  // namespace

int agreed_digits(const Real& a, const Real& b) {
  if (!a.is_finite() || !b.is_finite()) return 0;
  long min_bits = std::min(a.precision_bits(), b.precision_bits());
  int cap = digits_for_bits(min_bits);
  if (a.is_zero() && b.is_zero()) return cap;
  if (a.is_zero() || b.is_zero()) return 0;
  if (a.sgn() != b.sgn()) return 0;
  if (a == b) return cap;

  // Upper bound for possible agreement from the magnitude of a - b: two
  // values rounding to the same D-digit decimal differ by at most one unit
  // in the D-th place.
  mpfr_t diff;
  mpfr_init2(diff, std::max(min_bits, 64L));
  mpfr_sub(diff, a.raw(), b.raw(), MPFR_RNDN);
  int start = cap;
  if (!mpfr_zero_p(diff)) {
    Rounded ra = round_digits(a.raw(), 2);
    Rounded rd = round_digits(diff, 2);
    long est = ra.exp - rd.exp + 2;
    if (est < 1) est = 1;
    start = static_cast<int>(std::min<long>(cap, est));
  }
  mpfr_clear(diff);

  for (int d = start; d >= 1; --d) {
    Rounded ra = round_digits(a.raw(), d);
    Rounded rb = round_digits(b.raw(), d);
    if (ra.exp == rb.exp && ra.digits == rb.digits) return d;
  }
  return 0;
}

int agreed_digits(const Cx& a, const Cx& b) {
  return std::min(agreed_digits(a.re, b.re), agreed_digits(a.im, b.im));
}

}  // namespace constforge
