#include "constforge/specfun.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

namespace constforge::specfun {

namespace {

constexpr long kIterCap = 1000000;

// Overload shims so the kernels below read the same for Real and Cx.
inline const Real& re_of(const Real& x) { return x; }
inline const Real& re_of(const Cx& x) { return x.re; }
inline Real abs_of(const Real& x) { return abs(x); }
inline Real abs_of(const Cx& x) { return abs(x); }
inline bool zero_of(const Real& x) { return x.is_zero(); }
inline bool zero_of(const Cx& x) { return x.is_zero(); }

template <typename T>
T from_real(Real v) {
  return T(std::move(v));
}

inline bool is_gamma_pole(const Real& s) {
  return s.is_integer() && s.sgn() <= 0;
}
inline bool is_gamma_pole(const Cx& s) {
  return s.is_real() && s.re.is_integer() && s.re.sgn() <= 0;
}

// sin(pi s) with the argument reduced mod 2 first, so accuracy does not
// decay with |s|.
Real sin_pi(const Real& s) {
  Real n(s);
  mpfr_round(n.raw(), s.raw());
  Real f = s - n;
  Real v = sin(const_pi() * f);
  long parity = n.to_long() & 1L;
  return parity ? -v : v;
}

Cx sin_pi(const Cx& z) {
  Real n(z.re);
  mpfr_round(n.raw(), z.re.raw());
  Real f = z.re - n;
  Real piv = const_pi();
  Real pf = piv * f;
  Real py = piv * z.im;
  Cx v(sin(pf) * cosh(py), cos(pf) * sinh(py));
  long parity = n.to_long() & 1L;
  return parity ? -v : v;
}

// Spouge coefficients for a given parameter a at a given precision:
// c_0 = sqrt(2 pi), c_k = (-1)^{k-1} (a-k)^{k-1/2} e^{a-k} / (k-1)!.
const std::vector<Real>& spouge_coeffs(long a) {
  static std::mutex mu;
  static std::map<std::pair<long, long>, std::unique_ptr<std::vector<Real>>>
      cache;
  long bits = current_precision_bits();
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{bits, a}];
  if (!slot) {
    auto coeffs = std::make_unique<std::vector<Real>>();
    coeffs->reserve(a);
    Real two_pi = Real(2) * const_pi();
    coeffs->push_back(sqrt(two_pi));
    Real half = Real::from_ratio(1, 2);
    Real fact(1);  // (k-1)! running value
    for (long k = 1; k <= a - 1; ++k) {
      Real ak(a - k);
      Real c = pow(ak, Real(k) - half) * exp(ak) / fact;
      if (k % 2 == 0) c = -c;
      coeffs->push_back(c);
      fact *= Real(k);
    }
    slot = std::move(coeffs);
  }
  return *slot;
}

template <typename T>
T gamma_spouge_impl(const T& s) {
  int wd = current_precision_digits();
  long a = static_cast<long>(std::ceil(1.3 * wd)) + 1;
  // The coefficient sum alternates; carry extra digits through it.
  WorkingPrecision inner(wd + wd / 4 + 10);
  const std::vector<Real>& c = spouge_coeffs(a);
  T w = s - from_real<T>(Real(1));
  T sum = from_real<T>(c[0]);
  for (long k = 1; k <= a - 1; ++k)
    sum += from_real<T>(c[k]) / (w + from_real<T>(Real(k)));
  T wa = w + from_real<T>(Real(a));
  T half = from_real<T>(Real::from_ratio(1, 2));
  return pow(wa, w + half) * exp(-wa) * sum;
}

template <typename T>
T gamma_once_impl(const T& s) {
  if (is_gamma_pole(s))
    throw DomainError("gamma pole at s = " + re_of(s).to_decimal(8));
  Real half = Real::from_ratio(1, 2);
  if (s == from_real<T>(half)) return from_real<T>(sqrt(const_pi()));
  if (re_of(s).sgn() > 0) return gamma_spouge_impl(s);
  // Gamma(s) = pi / (sin(pi s) Gamma(1 - s)), and Re(1 - s) >= 1 here.
  T one = from_real<T>(Real(1));
  return from_real<T>(const_pi()) / (sin_pi(s) * gamma_spouge_impl(one - s));
}

// gamma_lower(s, x) = x^s e^{-x} sum_{n>=0} x^n / (s (s+1) ... (s+n)).
template <typename T>
T lower_series_impl(const T& s, const T& x) {
  if (is_gamma_pole(s))
    throw DomainError("lower incomplete gamma pole at s = " +
                      re_of(s).to_decimal(8));
  if (zero_of(x)) return from_real<T>(Real(0));
  int wd = current_precision_digits();
  Real thr = pow10(-(wd + 4));
  Real half = Real::from_ratio(1, 2);
  T term = from_real<T>(Real(1)) / s;
  T sum = term;
  for (long n = 1; n <= kIterCap; ++n) {
    T sn = s + from_real<T>(Real(n));
    term = term * x / sn;
    sum += term;
    Real ratio = abs_of(x) / abs_of(sn);
    Real bound = abs_of(sum) + Real(1);
    if (ratio < half && abs_of(term) < thr * bound)
      return pow(x, s) * exp(-x) * sum;
  }
  throw ConvergenceError("lower incomplete gamma series did not settle");
}

// Gamma(s, x) = x^s e^{-x} / (x+1-s - 1(1-s)/(x+3-s - 2(2-s)/(x+5-s - ...)))
// evaluated by the modified Lentz scheme.
template <typename T>
T upper_cf_impl(const T& s, const T& x) {
  int wd = current_precision_digits();
  Real eps = pow10(-(wd + 1));
  T tiny = from_real<T>(pow10(-2 * wd));
  T one = from_real<T>(Real(1));
  T f = tiny;
  T c = f;
  T d = from_real<T>(Real(0));
  for (long n = 1; n <= kIterCap; ++n) {
    T an = n == 1 ? one
                  : -(from_real<T>(Real(n - 1)) *
                      (from_real<T>(Real(n - 1)) - s));
    T bn = x + from_real<T>(Real(2 * n - 1)) - s;
    d = bn + an * d;
    if (zero_of(d)) d = tiny;
    c = bn + an / c;
    if (zero_of(c)) c = tiny;
    d = one / d;
    T delta = c * d;
    f = f * delta;
    if (abs_of(delta - one) < eps) return pow(x, s) * exp(-x) * f;
  }
  throw ConvergenceError(
      "upper incomplete gamma continued fraction did not settle");
}

template <typename T>
long shift_count(const T& s) {
  const Real& re = re_of(s);
  if (re.sgn() > 0) return 0;
  long m = static_cast<long>(std::floor(-re.to_double())) + 1;
  while (!((re + Real(m)).sgn() > 0)) ++m;
  return m;
}

// Series region |x| < Re(s) + 1, ties resolved toward the series.
template <typename T>
bool in_series_region(const T& s, const T& x) {
  return !(abs_of(x) > re_of(s) + Real(1));
}

template <typename T>
void check_upper_domain(const T& s, const T& x);

template <>
void check_upper_domain<Real>(const Real& s, const Real& x) {
  if (is_gamma_pole(s))
    throw DomainError("upper incomplete gamma unsupported at nonpositive "
                      "integer s = " + s.to_decimal(8));
  if (x.is_negative())
    throw DomainError("upper incomplete gamma needs x >= 0 on the real line");
}

template <>
void check_upper_domain<Cx>(const Cx& s, const Cx& x) {
  if (is_gamma_pole(s))
    throw DomainError("upper incomplete gamma unsupported at nonpositive "
                      "integer s = " + s.re.to_decimal(8));
  long m = shift_count(s);
  Cx s2 = s + Cx(Real(m));
  if (x.re.sgn() <= 0 && !in_series_region(s2, x))
    throw DomainError("upper incomplete gamma needs Re(x) > 0 outside the "
                      "series region");
}

template <typename T>
T gamma_upper_once_impl(const T& s, const T& x) {
  check_upper_domain(s, x);
  if (zero_of(x)) {
    if (re_of(s).sgn() > 0) return gamma_once_impl(s);
    throw DomainError("upper incomplete gamma at x = 0 needs Re(s) > 0");
  }
  long m = shift_count(s);
  T s2 = s + from_real<T>(Real(m));
  T u = in_series_region(s2, x)
            ? gamma_once_impl(s2) - lower_series_impl(s2, x)
            : upper_cf_impl(s2, x);
  if (m == 0) return u;
  // Walk back down: Gamma(s, x) = (Gamma(s+1, x) - x^s e^{-x}) / s.
  T emx = exp(-x);
  for (long j = m - 1; j >= 0; --j) {
    T sj = s + from_real<T>(Real(j));
    u = (u - pow(x, sj) * emx) / sj;
  }
  return u;
}

template <typename T>
T gamma_lower_once_impl(const T& s, const T& x) {
  if (is_gamma_pole(s))
    throw DomainError("lower incomplete gamma pole at s = " +
                      re_of(s).to_decimal(8));
  if (zero_of(x)) {
    if (re_of(s).sgn() > 0) return from_real<T>(Real(0));
    throw DomainError("lower incomplete gamma at x = 0 needs Re(s) > 0");
  }
  if (in_series_region(s, x)) return lower_series_impl(s, x);
  return gamma_once_impl(s) - gamma_upper_once_impl(s, x);
}

// erf by its Maclaurin series; terms alternate, so once they shrink the
// next term bounds the tail.
Real erf_taylor(const Real& z) {
  if (z.is_zero()) return Real(0);
  int wd = current_precision_digits();
  Real thr = pow10(-(wd + 2));
  Real z2 = z * z;
  double z2d = z2.to_double();
  Real t = z;
  Real sum(0);
  for (long n = 0; n <= kIterCap; ++n) {
    Real term = t / Real(2 * n + 1);
    sum = (n % 2 == 0) ? sum + term : sum - term;
    if (static_cast<double>(n) >= z2d && abs(term) < thr) break;
    if (n == kIterCap)
      throw ConvergenceError("erf series did not settle");
    t = t * z2 / Real(n + 1);
  }
  return sum * Real(2) / sqrt(const_pi());
}

// erfc through the upper incomplete gamma: erfc(z) = Gamma(1/2, z^2)/sqrt(pi)
// for z > 0, which sidesteps the 1 - erf cancellation for large z.
Real erfc_via_cf(const Real& z) {
  Real half = Real::from_ratio(1, 2);
  return upper_cf_impl(half, z * z) / sqrt(const_pi());
}

constexpr double kErfTaylorLimit = 6.0;

Real erf_once_impl(const Real& z) {
  double zd = z.to_double();
  if (zd > kErfTaylorLimit) return Real(1) - erfc_via_cf(z);
  if (zd < -kErfTaylorLimit) return erfc_via_cf(-z) - Real(1);
  return erf_taylor(z);
}

Real erfc_once_impl(const Real& z) {
  if (z > Real(1)) return erfc_via_cf(z);
  if (z < Real(-1)) return Real(2) - erfc_via_cf(-z);
  return Real(1) - erf_taylor(z);
}

Real series_dblfact_once_impl(const Real& x) {
  int wd = current_precision_digits();
  Real thr = pow10(-wd);
  Real t(1);
  Real sum(1);
  for (long n = 1; n <= kIterCap; ++n) {
    t = t * x / Real(2 * n + 1);
    sum += t;
    if (abs(t) < thr && abs(x) < Real(2 * n + 3)) return sum;
  }
  throw ConvergenceError("double-factorial series did not settle");
}

// T(nu, x) = sum_k x^k / Gamma(nu+k). The reciprocal gammas walk down from
// an anchor at Re >= 2 through 1/Gamma(w) = w / Gamma(w+1), which lands
// exact zeros on the poles instead of overflow.
template <typename T>
T t_series_once_impl(const T& nu, const T& x) {
  int wd = current_precision_digits();
  Real thr = pow10(-(wd + 2));
  Real half = Real::from_ratio(1, 2);
  const Real& re = re_of(nu);
  long k0 = 0;
  if (re < Real(2)) {
    k0 = static_cast<long>(std::ceil((Real(2) - re).to_double()));
    if (k0 < 0) k0 = 0;
    while (re + Real(k0) < Real(2)) ++k0;
  }
  std::vector<T> rec(static_cast<size_t>(k0) + 1, from_real<T>(Real(0)));
  rec[k0] = from_real<T>(Real(1)) /
            gamma_spouge_impl(nu + from_real<T>(Real(k0)));
  for (long k = k0 - 1; k >= 0; --k)
    rec[k] = (nu + from_real<T>(Real(k))) * rec[k + 1];
  T sum = from_real<T>(Real(0));
  T xp = from_real<T>(Real(1));
  for (long k = 0; k <= k0; ++k) {
    sum += xp * rec[k];
    if (k < k0) xp = xp * x;
  }
  T r = rec[k0];
  long k = k0;
  for (long it = 0; it <= kIterCap; ++it) {
    r = r / (nu + from_real<T>(Real(k)));
    ++k;
    xp = xp * x;
    T term = xp * r;
    sum += term;
    Real ratio = abs_of(x) / abs_of(nu + from_real<T>(Real(k)));
    if (ratio < half && abs_of(term) < thr * (abs_of(sum) + Real(1)))
      return sum;
  }
  throw ConvergenceError("reciprocal-gamma tail series did not settle");
}

}  // namespace

const char* method_name(Method m) noexcept {
  switch (m) {
    case Method::taylor: return "taylor";
    case Method::cf_lentz: return "cf_lentz";
    case Method::spouge: return "spouge";
    case Method::reflection: return "reflection";
    case Method::recurrence_shift: return "recurrence_shift";
    case Method::direct_series: return "direct_series";
  }
  return "unknown";
}

mpz_class double_factorial(long n) {
  if (n < -1)
    throw InvalidArgument("double factorial needs n >= -1, got " +
                          std::to_string(n));
  mpz_class r;
  if (n <= 0) {
    r = 1;
    return r;
  }
  mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

namespace detail {

Real gamma_spouge(const Real& s) { return gamma_spouge_impl(s); }
Cx gamma_spouge(const Cx& s) { return gamma_spouge_impl(s); }
Real gamma_once(const Real& s) { return gamma_once_impl(s); }
Cx gamma_once(const Cx& s) { return gamma_once_impl(s); }
Real lower_series(const Real& s, const Real& x) {
  return lower_series_impl(s, x);
}
Cx lower_series(const Cx& s, const Cx& x) { return lower_series_impl(s, x); }
Real upper_cf(const Real& s, const Real& x) { return upper_cf_impl(s, x); }
Cx upper_cf(const Cx& s, const Cx& x) { return upper_cf_impl(s, x); }
Real gamma_upper_once(const Real& s, const Real& x) {
  return gamma_upper_once_impl(s, x);
}
Cx gamma_upper_once(const Cx& s, const Cx& x) {
  return gamma_upper_once_impl(s, x);
}
Real gamma_lower_once(const Real& s, const Real& x) {
  return gamma_lower_once_impl(s, x);
}
Cx gamma_lower_once(const Cx& s, const Cx& x) {
  return gamma_lower_once_impl(s, x);
}
Real erf_once(const Real& z) { return erf_once_impl(z); }
Real erfc_once(const Real& z) { return erfc_once_impl(z); }
Real series_double_factorial_once(const Real& x) {
  return series_dblfact_once_impl(x);
}
Real t_series_once(const Real& nu, const Real& x) {
  return t_series_once_impl(nu, x);
}
Cx t_series_once(const Cx& nu, const Cx& x) {
  return t_series_once_impl(nu, x);
}

Method gamma_route(const Real& s) {
  if (s == Real::from_ratio(1, 2)) return Method::reflection;
  return s.sgn() > 0 ? Method::spouge : Method::reflection;
}

Method gamma_route(const Cx& s) {
  if (s.is_real()) return gamma_route(s.re);
  return s.re.sgn() > 0 ? Method::spouge : Method::reflection;
}

Method erf_route(const Real& z) {
  return std::abs(z.to_double()) > kErfTaylorLimit ? Method::cf_lentz
                                                   : Method::taylor;
}

Method erfc_route(const Real& z) {
  return abs(z) > Real(1) ? Method::cf_lentz : Method::taylor;
}

template <typename T>
Method upper_route(const T& s, const T& x) {
  if (zero_of(x)) return gamma_route(s);
  long m = shift_count(s);
  if (m > 0) return Method::recurrence_shift;
  return in_series_region(s, x) ? Method::direct_series : Method::cf_lentz;
}

Method gamma_upper_route(const Real& s, const Real& x) {
  return upper_route(s, x);
}
Method gamma_upper_route(const Cx& s, const Cx& x) {
  return upper_route(s, x);
}

template <typename T>
Method lower_route(const T& s, const T& x) {
  if (zero_of(x) || in_series_region(s, x)) return Method::direct_series;
  return upper_route(s, x);
}

Method gamma_lower_route(const Real& s, const Real& x) {
  return lower_route(s, x);
}
Method gamma_lower_route(const Cx& s, const Cx& x) {
  return lower_route(s, x);
}

}  // namespace detail

SpecialValue<Real> erf(const Real& z, const PrecCtx& ctx) {
  Method m = detail::erf_route(z);
  auto st = certify([&](int) { return detail::erf_once(z); }, ctx);
  return {std::move(st.value), st.certified_digits, m};
}

SpecialValue<Real> erfc(const Real& z, const PrecCtx& ctx) {
  Method m = detail::erfc_route(z);
  auto st = certify([&](int) { return detail::erfc_once(z); }, ctx);
  return {std::move(st.value), st.certified_digits, m};
}

SpecialValue<Real> gamma(const Real& s, const PrecCtx& ctx) {
  Method m = detail::gamma_route(s);
  auto st = certify([&](int) { return detail::gamma_once(s); }, ctx);
  return {std::move(st.value), st.certified_digits, m};
}

SpecialValue<Cx> gamma(const Cx& s, const PrecCtx& ctx) {
  Method m = detail::gamma_route(s);
  auto st = certify([&](int) { return detail::gamma_once(s); }, ctx);
  return {std::move(st.value), st.certified_digits, m};
}

SpecialValue<Real> gamma_lower(const Real& s, const Real& x,
                               const PrecCtx& ctx) {
  if (x.is_negative())
    throw DomainError("lower incomplete gamma needs x >= 0 on the real line");
  Method m = detail::gamma_lower_route(s, x);
  auto st = certify([&](int) { return detail::gamma_lower_once(s, x); }, ctx);
  return {std::move(st.value), st.certified_digits, m};
}

SpecialValue<Cx> gamma_lower(const Cx& s, const Cx& x, const PrecCtx& ctx) {
  Method m = detail::gamma_lower_route(s, x);
  auto st = certify([&](int) { return detail::gamma_lower_once(s, x); }, ctx);
  return {std::move(st.value), st.certified_digits, m};
}

SpecialValue<Real> gamma_upper(const Real& s, const Real& x,
                               const PrecCtx& ctx) {
  Method m = detail::gamma_upper_route(s, x);
  auto st = certify([&](int) { return detail::gamma_upper_once(s, x); }, ctx);
  return {std::move(st.value), st.certified_digits, m};
}

SpecialValue<Cx> gamma_upper(const Cx& s, const Cx& x, const PrecCtx& ctx) {
  Method m = detail::gamma_upper_route(s, x);
  auto st = certify([&](int) { return detail::gamma_upper_once(s, x); }, ctx);
  return {std::move(st.value), st.certified_digits, m};
}

SpecialValue<Real> series_double_factorial(const Real& x, const PrecCtx& ctx) {
  auto st = certify(
      [&](int) { return detail::series_double_factorial_once(x); }, ctx);
  return {std::move(st.value), st.certified_digits, Method::direct_series};
}

SpecialValue<Real> t_series(const Real& nu, const Real& x,
                            const PrecCtx& ctx) {
  auto st = certify([&](int) { return detail::t_series_once(nu, x); }, ctx);
  return {std::move(st.value), st.certified_digits, Method::direct_series};
}

SpecialValue<Cx> t_series(const Cx& nu, const Cx& x, const PrecCtx& ctx) {
  auto st = certify([&](int) { return detail::t_series_once(nu, x); }, ctx);
  return {std::move(st.value), st.certified_digits, Method::direct_series};
}

}  // namespace constforge::specfun
