// Exact-rational reference computations used to cross-check the MPFR-based
// kernels. Everything here is plain GMP rational arithmetic: no rounding,
// no shared code with the library under test.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "constforge/numkern.hpp"

namespace oracles {

// sum_{n=0}^{terms} x^n / (2n+1)!!, exact.
inline mpq_class dblfact_series_partial(const mpq_class& x, int terms) {
  mpq_class sum = 0;
  mpq_class pw = 1;      // x^n
  mpz_class dfac = 1;    // (2n+1)!!
  for (int n = 0; n <= terms; ++n) {
    if (n > 0) {
      pw *= x;
      dfac *= 2 * n + 1;
    }
    sum += pw / mpq_class(dfac);
  }
  return sum;
}

// sum_{n=1}^{N} (s_n - 1) / prod_{i<n} s_i over an explicit term list.
inline mpq_class encode_partial(const std::vector<long>& terms) {
  mpq_class sum = 0;
  mpz_class prod = 1;
  for (long s : terms) {
    sum += mpq_class(s - 1) / mpq_class(prod);
    prod *= s;
  }
  return sum;
}

// sum_{n=0}^{terms} (-1)^n z^(2n+1) / (n! (2n+1)); erf(z) is 2/sqrt(pi)
// times the limit.
inline mpq_class erf_series_partial(const mpq_class& z, int terms) {
  mpq_class sum = 0;
  mpq_class zpow = z;  // z^(2n+1)
  mpq_class z2 = z * z;
  mpz_class fact = 1;  // n!
  for (int n = 0; n <= terms; ++n) {
    if (n > 0) {
      zpow *= z2;
      fact *= n;
    }
    mpq_class term = zpow / (mpq_class(fact) * mpq_class(2 * n + 1));
    if (n % 2)
      sum -= term;
    else
      sum += term;
  }
  return sum;
}

// Gaussian-rational arithmetic for the complex-ramp encoding.
struct QC {
  mpq_class re, im;
};

inline QC qc_mul(const QC& a, const QC& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline QC qc_div(const QC& a, const QC& b) {
  mpq_class m = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / m, (a.im * b.re - a.re * b.im) / m};
}

// sum_{n=1}^{terms} (s_n - 1)/prod_{i<n} s_i with s_n = beta + (n-1) alpha.
inline QC encode_complex_partial(const QC& alpha, const QC& beta, int terms) {
  QC sum{0, 0};
  QC prod{1, 0};
  QC s = beta;
  for (int n = 1; n <= terms; ++n) {
    QC t = qc_div({s.re - 1, s.im}, prod);
    sum.re += t.re;
    sum.im += t.im;
    prod = qc_mul(prod, s);
    s.re += alpha.re;
    s.im += alpha.im;
  }
  return sum;
}

inline std::vector<long> first_primes(int n) {
  std::vector<long> ps;
  for (long c = 2; static_cast<int>(ps.size()) < n; ++c) {
    bool ok = true;
    for (long p : ps) {
      if (p * p > c) break;
      if (c % p == 0) {
        ok = false;
        break;
      }
    }
    if (ok) ps.push_back(c);
  }
  return ps;
}

inline std::vector<long> ramp_terms(long alpha, long beta, int n) {
  std::vector<long> t;
  t.reserve(n);
  for (int k = 0; k < n; ++k) t.push_back(beta + k * alpha);
  return t;
}

// Exact value of the depth-truncated fraction b0 + a1/(b1 + a2/(b2 + ...))
// with a1 = 1, an = n-1, b_odd = x, b_even = 1, b0 = 0, evaluated by the
// classical h/k convergent recurrence.
inline mpq_class ramanujan_cf_convergent(const mpq_class& x, int depth) {
  mpq_class h_prev = 0, h_prev2 = 1;  // h_0 = b0 = 0, h_{-1} = 1
  mpq_class k_prev = 1, k_prev2 = 0;  // k_0 = 1,      k_{-1} = 0
  for (int n = 1; n <= depth; ++n) {
    mpq_class a = (n == 1) ? 1 : (n - 1);
    mpq_class b = (n % 2 == 1) ? x : mpq_class(1);
    mpq_class h = b * h_prev + a * h_prev2;
    mpq_class k = b * k_prev + a * k_prev2;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return h_prev / k_prev;
}

// Agreement between a computed value and an exact rational, in digits.
inline int agreed_with_q(const constforge::Real& v, const mpq_class& q) {
  constforge::WorkingPrecision scope(
      constforge::digits_for_bits(v.precision_bits()) + 10);
  return constforge::agreed_digits(v, constforge::Real(q));
}

// Agreement between a computed value and a frozen decimal string.
inline int agreed_with_str(const constforge::Real& v, const std::string& s) {
  constforge::WorkingPrecision scope(
      std::max<int>(constforge::digits_for_bits(v.precision_bits()),
                    static_cast<int>(s.size())) +
      10);
  return constforge::agreed_digits(v, constforge::Real::from_decimal(s));
}

inline int agreed_with_str(const constforge::Cx& v, const std::string& re,
                           const std::string& im) {
  constforge::WorkingPrecision scope(
      std::max<int>(constforge::digits_for_bits(v.re.precision_bits()),
                    static_cast<int>(re.size())) +
      10);
  constforge::Cx w(constforge::Real::from_decimal(re),
                   constforge::Real::from_decimal(im));
  return constforge::agreed_digits(v, w);
}

}  // namespace oracles
