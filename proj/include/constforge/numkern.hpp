// Arbitrary-precision numeric kernel: precision contexts, a real/complex value
// type over MPFR, digit-agreement comparison, and ladder stabilization.
//
// Precision model: every thread carries a current working precision (set via
// the WorkingPrecision scope guard); arithmetic rounds results to that
// precision. A value remembers the precision it was created with, so copies
// are exact and mixed-precision expressions behave predictably.
#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace constforge {

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Bad call-site values: out-of-domain arguments, malformed input.
struct DomainError : NumericError {
  using NumericError::NumericError;
};
// An iteration failed to settle within its caps.
struct ConvergenceError : NumericError {
  using NumericError::NumericError;
};
// Parameter validation failures (contexts, sequences, CLI-level input).
struct InvalidArgument : NumericError {
  using NumericError::NumericError;
};

// Requested precision plus the guard/ladder margins used to certify it.
struct PrecCtx {
  int digits;
  int guard;
  int ladder_step;

  int working_digits() const noexcept { return digits + guard; }
  int confirm_digits() const noexcept { return digits + guard + ladder_step; }
};

// digits >= 8, guard >= 5, ladder_step >= 5; throws InvalidArgument otherwise.
PrecCtx make_context(int digits, int guard = 10, int ladder_step = 10);

// Decimal <-> binary precision conversions. bits_for_digits adds a small
// slack so D decimal digits always survive a round trip through binary.
long bits_for_digits(int decimal_digits) noexcept;
int digits_for_bits(long bits) noexcept;

long current_precision_bits() noexcept;
int current_precision_digits() noexcept;

// Sets the calling thread's working precision for the lifetime of the guard.
class WorkingPrecision {
 public:
  explicit WorkingPrecision(int decimal_digits);
  WorkingPrecision(const WorkingPrecision&) = delete;
  WorkingPrecision& operator=(const WorkingPrecision&) = delete;
  ~WorkingPrecision();

 private:
  long saved_bits_;
};

class Real {
 public:
  Real();                                // 0 at working precision
  Real(long v);                          // exact
  Real(int v) : Real(static_cast<long>(v)) {}
  explicit Real(const mpz_class& v);     // exact
  explicit Real(const mpq_class& v);     // rounded to working precision
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  // Parses a base-10 literal ("3.25", "-1e-7") at working precision.
  static Real from_decimal(std::string_view s);
  // num/den evaluated at working precision; den must be nonzero.
  static Real from_ratio(long num, long den);

  bool is_zero() const noexcept;
  bool is_negative() const noexcept;
  bool is_integer() const noexcept;
  bool is_finite() const noexcept;
  int sgn() const noexcept;  // -1, 0, +1

  long precision_bits() const noexcept;
  // Copy rounded to the current working precision.
  Real at_working_precision() const;

  // Requires an integral value fitting a long.
  long to_long() const;
  double to_double() const noexcept;

  // Correctly rounded base-10 rendering with `digits` significant digits.
  // Fixed-point form when the exponent is moderate, else d.ddd...e±k.
  std::string to_decimal(int digits) const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  mpfr_srcptr raw() const noexcept { return v_; }
  mpfr_ptr raw() noexcept { return v_; }

 private:
  mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);  // throws DomainError on /0
Real operator-(const Real& a);

bool operator==(const Real& a, const Real& b) noexcept;
bool operator!=(const Real& a, const Real& b) noexcept;
bool operator<(const Real& a, const Real& b) noexcept;
bool operator<=(const Real& a, const Real& b) noexcept;
bool operator>(const Real& a, const Real& b) noexcept;
bool operator>=(const Real& a, const Real& b) noexcept;

Real abs(const Real& a);
Real floor(const Real& a);
Real sqrt(const Real& a);            // a >= 0
Real exp(const Real& a);
Real log(const Real& a);             // a > 0
Real pow(const Real& base, const Real& expo);
Real pow(const Real& base, long expo);
Real sin(const Real& a);
Real cos(const Real& a);
Real sinh(const Real& a);
Real cosh(const Real& a);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& x, const Real& y);
Real nthroot(const Real& a, long k); // k >= 1; even k needs a >= 0
Real pow10(long e);                  // 10^e at working precision

// Cached per precision; recomputed when the working precision grows.
Real const_pi();
Real const_e();

// Complex value with principal-branch elementary functions.
struct Cx {
  Real re, im;

  Cx() = default;
  Cx(Real r) : re(std::move(r)), im(0L) {}
  Cx(long r) : re(r), im(0L) {}
  Cx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const noexcept { return re.is_zero() && im.is_zero(); }
  bool is_real() const noexcept { return im.is_zero(); }

  Cx& operator+=(const Cx& o);
  Cx& operator-=(const Cx& o);
  Cx& operator*=(const Cx& o);
  Cx& operator/=(const Cx& o);
};

Cx operator+(const Cx& a, const Cx& b);
Cx operator-(const Cx& a, const Cx& b);
Cx operator*(const Cx& a, const Cx& b);
Cx operator/(const Cx& a, const Cx& b);
Cx operator-(const Cx& a);
bool operator==(const Cx& a, const Cx& b) noexcept;
bool operator!=(const Cx& a, const Cx& b) noexcept;

Cx conj(const Cx& a);
Real abs(const Cx& a);
Cx sqrt(const Cx& a);
Cx exp(const Cx& a);
Cx log(const Cx& a);                 // principal branch, a != 0
Cx pow(const Cx& base, const Cx& expo);
Cx pow(const Cx& base, long expo);

// Number of leading significant decimal digits on which a and b agree: the
// largest D such that both round to the same D-digit decimal (same sign,
// digit string, and exponent), capped at the smaller operand's precision.
// Zero agrees only with zero.
int agreed_digits(const Real& a, const Real& b);
int agreed_digits(const Cx& a, const Cx& b);  // min over components

template <typename T>
struct Stabilized {
  T value;
  int certified_digits;
};

namespace detail {
template <typename Task>
auto run_at(Task&& task, int working_digits) {
  WorkingPrecision scope(working_digits);
  return task(working_digits);
}
}  // namespace detail

// Runs `task` (a callable taking the working digit count) at ctx's working
// precision and once more a ladder step higher; certifies the digits on
// which the two runs agree. Escalation on a shortfall is the caller's call.
template <typename Task>
auto stabilize(Task&& task, const PrecCtx& ctx)
    -> Stabilized<decltype(task(0))> {
  auto lo = detail::run_at(task, ctx.working_digits());
  auto hi = detail::run_at(task, ctx.confirm_digits());
  int agreed = agreed_digits(lo, hi);
  return {std::move(hi), agreed};
}

// stabilize(), retried with widening guards until certified_digits reaches
// ctx.digits. Throws ConvergenceError when max_rounds attempts fall short.
template <typename Task>
auto certify(Task&& task, const PrecCtx& ctx, int max_rounds = 4)
    -> Stabilized<decltype(task(0))> {
  PrecCtx attempt = ctx;
  for (int round = 0;; ++round) {
    auto r = stabilize(task, attempt);
    if (r.certified_digits >= ctx.digits) return r;
    if (round + 1 >= max_rounds)
      throw ConvergenceError(
          "precision ladder stalled: certified " +
          std::to_string(r.certified_digits) + " of " +
          std::to_string(ctx.digits) + " digits after " +
          std::to_string(max_rounds) + " rounds");
    attempt.guard += (ctx.digits - r.certified_digits) + attempt.ladder_step;
  }
}

}  // namespace constforge
