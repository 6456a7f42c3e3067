// Special functions built on the numeric kernel: the gamma family (Spouge's
// series plus reflection and recurrence shifts), the error functions, the
// odd-double-factorial power series, and the reciprocal-gamma tail series.
//
// Public entry points run their kernel under a precision ladder and return
// the value together with the certified digit count and the route taken.
// The single-pass kernels live in specfun::detail so tests can pit
// independent routes against each other at a fixed working precision.
#pragma once

#include <gmpxx.h>

#include "constforge/numkern.hpp"

namespace constforge::specfun {

enum class Method {
  taylor,            // direct Taylor/Maclaurin summation
  cf_lentz,          // modified Lentz continued fraction
  spouge,            // Spouge's gamma series
  reflection,        // gamma reflection through sin
  recurrence_shift,  // argument shifted by the functional equation
  direct_series,     // term-by-term series with a tail bound
};

const char* method_name(Method m) noexcept;

template <typename T>
struct SpecialValue {
  T value;
  int certified_digits;
  Method method;
};

// n!! for n >= -1 ((-1)!! = 0!! = 1), exact.
mpz_class double_factorial(long n);

SpecialValue<Real> erf(const Real& z, const PrecCtx& ctx);
SpecialValue<Real> erfc(const Real& z, const PrecCtx& ctx);

SpecialValue<Real> gamma(const Real& s, const PrecCtx& ctx);
SpecialValue<Cx> gamma(const Cx& s, const PrecCtx& ctx);

// Lower incomplete gamma(s, x): power series inside |x| < Re(s)+1, else the
// complement of the upper function. Real x must be >= 0.
SpecialValue<Real> gamma_lower(const Real& s, const Real& x,
                               const PrecCtx& ctx);
SpecialValue<Cx> gamma_lower(const Cx& s, const Cx& x, const PrecCtx& ctx);

// Upper incomplete gamma(s, x): s is shifted into Re > 0 by the functional
// equation, then the continued fraction (|x| >= Re(s)+1) or the series
// complement takes over. Real nonpositive integer s is rejected.
SpecialValue<Real> gamma_upper(const Real& s, const Real& x,
                               const PrecCtx& ctx);
SpecialValue<Cx> gamma_upper(const Cx& s, const Cx& x, const PrecCtx& ctx);

// S(x) = sum_{n>=0} x^n / (2n+1)!!
SpecialValue<Real> series_double_factorial(const Real& x, const PrecCtx& ctx);

// T(nu, x) = sum_{k>=0} x^k / Gamma(nu + k); reciprocal-gamma poles
// contribute exact zero terms.
SpecialValue<Real> t_series(const Real& nu, const Real& x, const PrecCtx& ctx);
SpecialValue<Cx> t_series(const Cx& nu, const Cx& x, const PrecCtx& ctx);

namespace detail {

// Single-pass evaluations at the current working precision.
Real gamma_spouge(const Real& s);  // Re(s) > 0
Cx gamma_spouge(const Cx& s);
Real gamma_once(const Real& s);    // routed: Spouge / reflection
Cx gamma_once(const Cx& s);
Real lower_series(const Real& s, const Real& x);  // the power series itself
Cx lower_series(const Cx& s, const Cx& x);
Real upper_cf(const Real& s, const Real& x);      // the Lentz CF itself
Cx upper_cf(const Cx& s, const Cx& x);
Real gamma_upper_once(const Real& s, const Real& x);  // routed + shifts
Cx gamma_upper_once(const Cx& s, const Cx& x);
Real gamma_lower_once(const Real& s, const Real& x);
Cx gamma_lower_once(const Cx& s, const Cx& x);
Real erf_once(const Real& z);
Real erfc_once(const Real& z);
Real series_double_factorial_once(const Real& x);
Real t_series_once(const Real& nu, const Real& x);
Cx t_series_once(const Cx& nu, const Cx& x);

// Route predictions (input-determined, no evaluation).
Method gamma_route(const Real& s);
Method gamma_route(const Cx& s);
Method erf_route(const Real& z);
Method erfc_route(const Real& z);
Method gamma_upper_route(const Real& s, const Real& x);
Method gamma_upper_route(const Cx& s, const Cx& x);
Method gamma_lower_route(const Real& s, const Real& x);
Method gamma_lower_route(const Cx& s, const Cx& x);

}  // namespace detail

}  // namespace constforge::specfun
