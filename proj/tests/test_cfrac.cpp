#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "constforge/cfrac.hpp"
#include "oracles.hpp"

using namespace constforge;
using namespace constforge::cfrac;

namespace {

// Frozen from the exact convergent recurrence pushed past depth 6400.
const char* kCF1 =
    "0.65567954241879847154387123073081128339928233287046202805368616";
const char* kCFHalf = "1.09128272153009408419877565475";
const char* kCF2 = "0.378936078070656053021675619957";
const char* kCF5 = "0.173078517303020459179316788305";

Real ratio(long n, long d) { return Real::from_ratio(n, d); }

}  // namespace

TEST_CASE("the generator yields the documented coefficient pattern") {
  WorkingPrecision scope(30);
  Real x = ratio(7, 3);
  GeneralizedCF cf = ramanujan_cf(x);
  CHECK(cf.b0.is_zero());

  auto [a1, b1] = cf.coeffs(1);
  CHECK(a1 == Real(1));
  CHECK(b1 == x);
  auto [a2, b2] = cf.coeffs(2);
  CHECK(a2 == Real(1));
  CHECK(b2 == Real(1));
  auto [a3, b3] = cf.coeffs(3);
  CHECK(a3 == Real(2));
  CHECK(b3 == x);
  auto [a4, b4] = cf.coeffs(4);
  CHECK(a4 == Real(3));
  CHECK(b4 == Real(1));
  auto [a5, b5] = cf.coeffs(5);
  CHECK(a5 == Real(4));
  CHECK(b5 == x);

  CHECK_THROWS_AS(ramanujan_cf(Real(0)), DomainError);
  CHECK_THROWS_AS(ramanujan_cf(Real(-1)), DomainError);
}

TEST_CASE("convergents match the exact rational recurrence") {
  WorkingPrecision scope(60);
  mpq_class x(1, 2);
  GeneralizedCF cf = ramanujan_cf(ratio(1, 2));
  for (int depth = 1; depth <= 12; ++depth) {
    Real got = cf_convergent(cf, depth);
    mpq_class want = oracles::ramanujan_cf_convergent(x, depth);
    CHECK(oracles::agreed_with_q(got, want) >= 55);
  }
}

TEST_CASE("degenerate fractions are reported, not silently evaluated") {
  WorkingPrecision scope(30);

  // A tail of zero denominators collapses the bottom-up recurrence.
  GeneralizedCF bad{Real(0), [](std::int64_t) {
                      return std::make_pair(Real(1), Real(0));
                    }};
  CHECK_THROWS_AS(cf_convergent(bad, 5), DomainError);

  // All-zero partial numerators leave just b0.
  GeneralizedCF flat{Real(7), [](std::int64_t) {
                       return std::make_pair(Real(0), Real(3));
                     }};
  CHECK(cf_convergent(flat, 8) == Real(7));
}

TEST_CASE("backward evaluation is certified against the frozen value") {
  PrecCtx ctx = make_context(50);
  GeneralizedCF cf = ramanujan_cf(Real(1));
  CFEvaluation ev = cf_eval_backward(cf, ctx);
  CHECK(ev.method == CFMethod::backward);
  CHECK(ev.certified_digits >= 50);
  CHECK(ev.depth > 32);
  CHECK(oracles::agreed_with_str(ev.value, kCF1) >= 48);
}

TEST_CASE("lentz and backward agree wherever both settle") {
  PrecCtx ctx = make_context(40);
  for (auto [n, d] : {std::pair<long, long>{1, 2}, {1, 1}, {2, 1}, {5, 1}}) {
    Real x = ratio(n, d);
    GeneralizedCF cf = ramanujan_cf(x);
    CFEvaluation back = cf_eval_backward(cf, ctx);
    CFEvaluation lz = cf_eval_lentz(cf, ctx);
    CHECK(back.certified_digits >= 40);
    CHECK(lz.certified_digits >= 40);
    WorkingPrecision scope(60);
    int floor_digits = std::min(back.certified_digits, lz.certified_digits) - 3;
    CHECK(agreed_digits(back.value, lz.value) >= floor_digits);
  }

  // Frozen spot checks for the smaller grid points.
  PrecCtx ctx30 = make_context(28);
  CHECK(oracles::agreed_with_str(
            cf_eval_backward(ramanujan_cf(ratio(1, 2)), ctx30).value,
            kCFHalf) >= 27);
  CHECK(oracles::agreed_with_str(
            cf_eval_backward(ramanujan_cf(Real(2)), ctx30).value, kCF2) >= 27);
  CHECK(oracles::agreed_with_str(
            cf_eval_backward(ramanujan_cf(Real(5)), ctx30).value, kCF5) >= 27);
}

TEST_CASE("a divergent fraction exhausts its caps instead of lying") {
  // Partial numerators -1 with constant denominators 2 cos(1) < 2 put the
  // fraction on the oscillatory boundary where convergents never settle.
  PrecCtx ctx = make_context(20);
  WorkingPrecision scope(30);
  Real twocos = Real(2) * cos(Real(1));
  GeneralizedCF wobble{Real(0), [twocos](std::int64_t) {
                         return std::make_pair(Real(-1), twocos);
                       }};
  CHECK_THROWS_AS(cf_eval_lentz(wobble, ctx, 2000), ConvergenceError);
  CHECK_THROWS_AS(cf_eval_backward(wobble, ctx, 32, 4096), ConvergenceError);
}

TEST_CASE("successive convergents bracket the limit") {
  PrecCtx ctx = make_context(45);
  GeneralizedCF cf = ramanujan_cf(Real(1));
  Real limit = cf_eval_backward(cf, ctx).value;
  WorkingPrecision scope(40);
  for (int depth = 4; depth <= 9; ++depth) {
    Real lo = cf_convergent(cf, depth) - limit;
    Real hi = cf_convergent(cf, depth + 1) - limit;
    CHECK((lo * hi).is_negative());
  }
}

TEST_CASE("the gap identity closes on a grid") {
  PrecCtx ctx = make_context(40);
  WorkingPrecision scope(50);
  Real bound = pow10(-38);
  for (auto [n, d] : {std::pair<long, long>{1, 2}, {1, 1}, {2, 1}, {5, 1}}) {
    Real gap = ramanujan_gap(ratio(n, d), ctx);
    CHECK(gap < bound);
  }
}

TEST_CASE("method names render") {
  CHECK(std::string(cf_method_name(CFMethod::backward)) == "cf_backward");
  CHECK(std::string(cf_method_name(CFMethod::lentz)) == "cf_lentz");
}
