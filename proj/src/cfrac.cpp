#include "constforge/cfrac.hpp"

#include <string>

#include "constforge/specfun.hpp"

namespace constforge::cfrac {

const char* cf_method_name(CFMethod m) noexcept {
  return m == CFMethod::backward ? "cf_backward" : "cf_lentz";
}

GeneralizedCF ramanujan_cf(const Real& x) {
  if (x.sgn() <= 0)
    throw DomainError("ramanujan_cf needs x > 0, got " + x.to_decimal(8));
  Real xc = x;
  return GeneralizedCF{
      Real(0),
      [xc](std::int64_t n) {
        Real a = n == 1 ? Real(1) : Real(n - 1);
        Real b = (n % 2 == 1) ? xc : Real(1);
        return std::make_pair(a, b);
      },
  };
}

Real cf_convergent(const GeneralizedCF& cf, std::int64_t depth) {
  if (depth < 1) throw InvalidArgument("cf_convergent needs depth >= 1");
  Real tail(0);
  for (std::int64_t n = depth; n >= 1; --n) {
    auto [a, b] = cf.coeffs(n);
    Real den = b + tail;
    if (den.is_zero())
      throw DomainError("zero denominator in backward recurrence at level " +
                        std::to_string(n));
    tail = a / den;
  }
  return cf.b0 + tail;
}

CFEvaluation cf_eval_backward(const GeneralizedCF& cf, const PrecCtx& ctx,
                              std::int64_t start_depth,
                              std::int64_t depth_cap) {
  if (start_depth < 1) start_depth = 1;
  WorkingPrecision scope(ctx.confirm_digits());
  Real prev = cf_convergent(cf, start_depth);
  std::int64_t depth = start_depth;
  while (depth <= depth_cap / 2) {
    depth *= 2;
    Real cur = cf_convergent(cf, depth);
    int agreed = agreed_digits(prev, cur);
    if (agreed >= ctx.digits)
      return {std::move(cur), depth, CFMethod::backward, agreed};
    prev = std::move(cur);
  }
  throw ConvergenceError(
      "continued fraction not settled at depth cap " +
      std::to_string(depth_cap) + " (reached " + std::to_string(depth) + ")");
}

namespace {

Real lentz_once(const GeneralizedCF& cf, std::int64_t iter_cap,
                std::int64_t* iterations) {
  int wd = current_precision_digits();
  Real eps = pow10(-wd);
  Real tiny = pow10(-2 * wd);
  Real f = cf.b0.is_zero() ? tiny : cf.b0;
  Real c = f;
  Real d(0);
  for (std::int64_t n = 1; n <= iter_cap; ++n) {
    auto [a, b] = cf.coeffs(n);
    d = b + a * d;
    if (d.is_zero()) d = tiny;
    c = b + a / c;
    if (c.is_zero()) c = tiny;
    d = Real(1) / d;
    Real delta = c * d;
    f *= delta;
    if (abs(delta - Real(1)) < eps) {
      if (iterations) *iterations = n;
      return f;
    }
  }
  throw ConvergenceError("Lentz iteration cap " + std::to_string(iter_cap) +
                         " exceeded");
}

}  // namespace

CFEvaluation cf_eval_lentz(const GeneralizedCF& cf, const PrecCtx& ctx,
                           std::int64_t iter_cap) {
  std::int64_t iters = 0;
  auto st = certify(
      [&](int) { return lentz_once(cf, iter_cap, &iters); }, ctx);
  return {std::move(st.value), iters, CFMethod::lentz, st.certified_digits};
}

Real ramanujan_gap(const Real& x, const PrecCtx& ctx) {
  GeneralizedCF cf = ramanujan_cf(x);
  Real cf_value = cf_eval_backward(cf, ctx).value;
  Real series = specfun::series_double_factorial(x, ctx).value;
  WorkingPrecision scope(ctx.confirm_digits());
  Real target = sqrt(const_pi() * exp(x) / (Real(2) * x));
  return abs(cf_value + series - target);
}

}  // namespace constforge::cfrac
