#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "constforge/numkern.hpp"

using namespace constforge;

TEST_CASE("context validation") {
  CHECK_THROWS_AS(make_context(7), InvalidArgument);
  CHECK_THROWS_AS(make_context(50, 4), InvalidArgument);
  CHECK_THROWS_AS(make_context(50, 10, 4), InvalidArgument);
  CHECK_THROWS_AS(make_context(2000000), InvalidArgument);
  PrecCtx ctx = make_context(40);
  CHECK(ctx.digits == 40);
  CHECK(ctx.working_digits() == 50);
  CHECK(ctx.confirm_digits() == 60);
  PrecCtx wide = make_context(40, 20, 15);
  CHECK(wide.working_digits() == 60);
  CHECK(wide.confirm_digits() == 75);
}

TEST_CASE("bit and digit conversions round trip with slack") {
  for (int d : {8, 17, 50, 200, 1000}) {
    long bits = bits_for_digits(d);
    CHECK(digits_for_bits(bits) >= d);
    CHECK(digits_for_bits(bits) <= d + 4);
  }
  CHECK(bits_for_digits(10) > bits_for_digits(9));
}

TEST_CASE("working precision guard nests and restores") {
  WorkingPrecision outer(50);
  long outer_bits = current_precision_bits();
  CHECK(current_precision_digits() >= 50);
  {
    WorkingPrecision inner(200);
    CHECK(current_precision_bits() > outer_bits);
    CHECK(current_precision_digits() >= 200);
  }
  CHECK(current_precision_bits() == outer_bits);
}

TEST_CASE("Real construction and predicates") {
  WorkingPrecision scope(50);
  Real a(42);
  CHECK(a.is_integer());
  CHECK(a.is_finite());
  CHECK(!a.is_negative());
  CHECK(a.sgn() == 1);
  CHECK(a.to_long() == 42);

  Real z(0);
  CHECK(z.is_zero());
  CHECK(z.sgn() == 0);

  Real n(-17);
  CHECK(n.is_negative());
  CHECK(n.sgn() == -1);

  Real q(mpq_class(1, 3));
  CHECK(!q.is_integer());
  CHECK_THROWS_AS(q.to_long(), DomainError);

  Real big(mpz_class("123456789012345678901234567890"));
  CHECK(big.is_integer());
  CHECK_THROWS_AS(big.to_long(), DomainError);

  CHECK(Real::from_ratio(7, 2).to_decimal(3) == "3.50");
  CHECK_THROWS_AS(Real::from_ratio(1, 0), DomainError);
}

TEST_CASE("from_decimal accepts literals and rejects junk") {
  WorkingPrecision scope(50);
  CHECK(Real::from_decimal("3.25").to_decimal(3) == "3.25");
  CHECK(Real::from_decimal("-1e-3").to_decimal(2) == "-0.0010");
  CHECK(Real::from_decimal("  2.5  ").to_decimal(2) == "2.5");
  CHECK_THROWS_AS(Real::from_decimal("abc"), InvalidArgument);
  CHECK_THROWS_AS(Real::from_decimal("1.2.3"), InvalidArgument);
  CHECK_THROWS_AS(Real::from_decimal(""), InvalidArgument);
}

TEST_CASE("decimal rendering picks fixed or scientific form") {
  WorkingPrecision scope(60);
  CHECK(Real(0).to_decimal(10) == "0");
  CHECK(Real(123).to_decimal(5) == "123.00");
  CHECK(Real(123).to_decimal(2) == "120");
  CHECK(Real::from_ratio(1, 8).to_decimal(3) == "0.125");
  CHECK(Real::from_ratio(1, 800).to_decimal(3) == "0.00125");
  CHECK(Real::from_ratio(-1, 8).to_decimal(3) == "-0.125");
  CHECK(Real::from_decimal("1.25e+12").to_decimal(3) == "1.25e+12");
  CHECK(Real::from_decimal("1.25e-12").to_decimal(3) == "1.25e-12");
  // Rounding carry across the leading digit.
  CHECK(Real::from_decimal("9.96").to_decimal(2) == "10");
  CHECK_THROWS_AS(Real(1).to_decimal(0), InvalidArgument);
}

TEST_CASE("floor and integer checks at high magnitude") {
  WorkingPrecision scope(50);
  CHECK(floor(Real::from_decimal("3.99")).to_long() == 3);
  CHECK(floor(Real::from_decimal("-0.25")).to_long() == -1);
  CHECK(floor(Real(7)).to_long() == 7);
  Real wide = pow10(30) + Real::from_ratio(1, 2);
  CHECK(floor(wide).is_integer());
}

TEST_CASE("elementary functions satisfy inverse identities") {
  WorkingPrecision scope(60);
  Real two(2);
  CHECK(agreed_digits(sqrt(two) * sqrt(two), two) >= 55);
  CHECK(agreed_digits(exp(log(Real(7))), Real(7)) >= 55);
  CHECK(agreed_digits(pow(Real(3), Real::from_ratio(1, 2)) *
                          pow(Real(3), Real::from_ratio(1, 2)),
                      Real(3)) >= 55);
  CHECK(agreed_digits(nthroot(Real(-8), 3), Real(-2)) >= 55);
  CHECK(agreed_digits(nthroot(Real(16), 4), Real(2)) >= 55);
  CHECK_THROWS_AS(nthroot(Real(-16), 4), DomainError);
  CHECK_THROWS_AS(sqrt(Real(-1)), DomainError);
  CHECK_THROWS_AS(log(Real(0)), DomainError);
  CHECK_THROWS_AS(Real(1) / Real(0), DomainError);
  CHECK(agreed_digits(pow(Real(-2), 3L), Real(-8)) >= 55);
  CHECK(agreed_digits(pow10(3), Real(1000)) >= 55);
}

TEST_CASE("pi and e round to the expected prefixes") {
  WorkingPrecision scope(60);
  CHECK(const_pi().to_decimal(20) == "3.1415926535897932385");
  CHECK(const_e().to_decimal(20) == "2.7182818284590452354");
  // hypot and atan2 consistency: atan2(1,1) = pi/4.
  CHECK(agreed_digits(atan2(Real(1), Real(1)) * Real(4), const_pi()) >= 55);
  CHECK(agreed_digits(hypot(Real(3), Real(4)), Real(5)) >= 55);
}

TEST_CASE("agreed_digits counts shared leading digits") {
  WorkingPrecision scope(60);
  Real a = Real::from_decimal("2.0663657");
  Real b = Real::from_decimal("2.0663651");
  CHECK(agreed_digits(a, b) == 6);

  // Agreement is about common rounding, not a digit-by-digit prefix match.
  CHECK(agreed_digits(Real::from_decimal("0.14999"),
                      Real::from_decimal("0.15001")) == 4);
  CHECK(agreed_digits(Real::from_decimal("9.9999"),
                      Real::from_decimal("10.0001")) == 4);

  CHECK(agreed_digits(Real(5), Real(-5)) == 0);
  CHECK(agreed_digits(Real(0), Real(1)) == 0);
  CHECK(agreed_digits(Real(0), Real(0)) >= 55);

  Real x = const_pi();
  CHECK(agreed_digits(x, x) >= 55);
  // Different magnitudes agree on nothing.
  CHECK(agreed_digits(Real(1), Real(10)) == 0);
}

TEST_CASE("agreed_digits is capped by the coarser operand precision") {
  Real coarse = [] {
    WorkingPrecision scope(20);
    return const_pi();
  }();
  WorkingPrecision scope(200);
  Real fine = const_pi();
  int agreed = agreed_digits(coarse, fine);
  CHECK(agreed >= 18);
  CHECK(agreed <= digits_for_bits(coarse.precision_bits()));
}

TEST_CASE("complex arithmetic and principal branches") {
  WorkingPrecision scope(60);
  Cx i(Real(0), Real(1));
  Cx a(Real(1), Real(2));
  Cx b(Real(3), Real(-1));
  Cx prod = a * b;
  CHECK(agreed_digits(prod, Cx(Real(5), Real(5))) >= 55);

  Cx quot = Cx(Real(1)) / i;
  CHECK(agreed_digits(quot, Cx(Real(0), Real(-1))) >= 55);
  CHECK_THROWS_AS(a / Cx(Real(0)), DomainError);

  CHECK(agreed_digits(abs(Cx(Real(3), Real(4))), Real(5)) >= 55);
  CHECK(agreed_digits(sqrt(Cx(Real(-1))), i) >= 55);
  CHECK(agreed_digits(log(Cx(Real(-1))), Cx(Real(0), const_pi())) >= 55);
  CHECK_THROWS_AS(log(Cx(Real(0))), DomainError);

  // exp(i pi) = -1. The imaginary part comes out as rounding noise rather
  // than an exact zero, so compare the components separately.
  Cx eipi = exp(Cx(Real(0), const_pi()));
  CHECK(agreed_digits(eipi.re, Real(-1)) >= 55);
  CHECK(abs(eipi.im) < pow10(-55));
  CHECK(agreed_digits(pow(i, 2L), Cx(Real(-1))) >= 55);

  // Principal cube root of -8 is 1 + sqrt(3) i.
  Cx croot = pow(Cx(Real(-8)), Cx(Real::from_ratio(1, 3)));
  CHECK(agreed_digits(croot, Cx(Real(1), sqrt(Real(3)))) >= 55);

  CHECK(agreed_digits(conj(a), Cx(Real(1), Real(-2))) >= 55);
  CHECK(Cx(Real(2)).is_real());
  CHECK(!a.is_real());
}

TEST_CASE("complex agreement is the component minimum") {
  WorkingPrecision scope(60);
  Cx a(Real::from_decimal("1.234567890"), Real::from_decimal("5.5555555"));
  Cx b(Real::from_decimal("1.234567891"), Real::from_decimal("5.5555550"));
  int re_d = agreed_digits(a.re, b.re);
  int im_d = agreed_digits(a.im, b.im);
  CHECK(agreed_digits(a, b) == std::min(re_d, im_d));
}

TEST_CASE("stabilize certifies a convergent task") {
  PrecCtx ctx = make_context(40);
  auto st = stabilize([](int) { return sqrt(Real(2)); }, ctx);
  CHECK(st.certified_digits >= 40);
  CHECK(agreed_digits(st.value * st.value, Real(2)) >= 40);
}

TEST_CASE("certify escalates and eventually gives up") {
  PrecCtx ctx = make_context(30);
  // A task whose value depends on the working precision never stabilizes.
  auto flaky = [](int wd) { return Real(wd); };
  CHECK_THROWS_AS(certify(flaky, ctx), ConvergenceError);

  // A task that needs more guard digits than the default still certifies,
  // because certify widens the guard on a shortfall.
  auto noisy = [](int wd) {
    Real v = const_pi();
    return v + pow10(-(wd - 25));  // 25 junk digits at the tail
  };
  auto st = certify(noisy, make_context(30, 10, 10));
  CHECK(st.certified_digits >= 30);
}

TEST_CASE("copies preserve precision, working scope rounds on demand") {
  Real wide = [] {
    WorkingPrecision scope(100);
    return const_pi();
  }();
  WorkingPrecision scope(20);
  Real copy = wide;
  CHECK(copy.precision_bits() == wide.precision_bits());
  Real narrowed = wide.at_working_precision();
  CHECK(narrowed.precision_bits() < wide.precision_bits());
  CHECK(agreed_digits(narrowed, wide) >= 18);
}
