// Generalized continued fractions: the Ramanujan generator for
// sqrt(pi e^x/(2x)) - S(x), a plain bottom-up evaluator, and two certified
// evaluation strategies (depth-doubled backward recurrence, modified Lentz).
#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "constforge/numkern.hpp"

namespace constforge::cfrac {

// b0 + a1/(b1 + a2/(b2 + ...)); coeffs(n) yields (a_n, b_n) for n >= 1.
struct GeneralizedCF {
  Real b0;
  std::function<std::pair<Real, Real>(std::int64_t)> coeffs;
};

enum class CFMethod { backward, lentz };
const char* cf_method_name(CFMethod m) noexcept;

struct CFEvaluation {
  Real value;
  std::int64_t depth;  // final truncation depth (backward) or iterations (lentz)
  CFMethod method;
  int certified_digits;
};

// Partial numerators 1, 1, 2, 3, 4, ...; partial denominators alternate
// x, 1, x, 1, ... Requires x > 0.
GeneralizedCF ramanujan_cf(const Real& x);

// The depth-truncated fraction evaluated bottom-up with tail 0, at the
// current working precision. Throws DomainError on a zero denominator.
Real cf_convergent(const GeneralizedCF& cf, std::int64_t depth);

// Doubles the truncation depth until two successive convergents agree to
// ctx.digits, evaluated at ctx's confirm precision.
CFEvaluation cf_eval_backward(const GeneralizedCF& cf, const PrecCtx& ctx,
                              std::int64_t start_depth = 32,
                              std::int64_t depth_cap = std::int64_t{1} << 20);

// Forward evaluation by the modified Lentz scheme, certified by the ladder.
CFEvaluation cf_eval_lentz(const GeneralizedCF& cf, const PrecCtx& ctx,
                           std::int64_t iter_cap = std::int64_t{1} << 20);

// |CF(x) + S(x) - sqrt(pi e^x / (2x))| with every piece certified to ctx.
Real ramanujan_gap(const Real& x, const PrecCtx& ctx);

}  // namespace constforge::cfrac
