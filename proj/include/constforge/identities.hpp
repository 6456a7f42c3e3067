// Expression language for closed-form identities: a small AST with a parser
// and printer, a certified evaluator over the special-function kernels, the
// built-in identity registry, and a manifest loader for user-defined checks.
#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "constforge/numkern.hpp"

namespace constforge {

// Digit agreement for evaluation results that may be real or complex. A real
// against a complex value compares as if the real had a zero imaginary part.
int agreed_digits(const std::variant<Real, Cx>& a,
                  const std::variant<Real, Cx>& b);

namespace identities {

using Value = std::variant<Real, Cx>;

enum class NodeKind {
  int_lit,     // ival
  rat_lit,     // num / den, den > 0, already canonical
  const_e,
  const_pi,
  const_i,
  neg,         // args[0]
  add,         // args[0] + args[1]
  sub,
  mul,
  div,
  pow_,        // args[0] ^ args[1], right associative
  sqrt_,
  root,        // root(x, k): k-th root, args[1] an integer expression
  exp_,
  ln,
  gamma_fn,         // gamma(s)
  gamma_lower_fn,   // gamma_lower(s, x)
  gamma_upper_fn,   // gamma_upper(s, x); gamma(s, x) parses to this too
  erf_fn,
  erfc_fn,
  dblfact_series_fn,  // sum x^n / (2n+1)!!
  ramanujan_cf_fn,    // the continued fraction paired with that series
  encode_a_fn,        // encode_A(alpha, beta): series over the ramp sequence
  closed_a_fn,        // closed_A(alpha, beta): gamma-form of the same value
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  NodeKind kind;
  mpz_class ival;            // int_lit
  mpz_class num, den;        // rat_lit
  std::vector<ExprPtr> args;
};

// Parse failure; `offset` is the byte position in the source string where
// the parser gave up. what() includes the offset as well.
class ParseError : public NumericError {
 public:
  ParseError(const std::string& msg, std::size_t offset);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Grammar (whitespace-insensitive except inside numbers):
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := '-' factor | primary ('^' factor)?
//   primary := number | 'e' | 'pi' | 'i' | name '(' expr (',' expr)* ')'
//            | '(' expr ')'
//   number  := digits ('/' digits | '.' digits)?
// "3/4" with no spaces lexes as one rational literal; "3 / 4" is a division.
ExprPtr parse_expr(std::string_view src);

// Prints an expression so that parse_expr(to_string(e)) reproduces the same
// tree. Division is always spaced ("a / b") to keep it distinct from
// rational literals.
std::string to_string(const ExprPtr& e);

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

struct EvalOutcome {
  Value value;
  int certified_digits;
  std::vector<std::string> methods;  // sorted, deduplicated route tags
};

// Evaluates the tree under the certification ladder: the whole expression is
// recomputed at two precisions per round and the agreed digits are reported.
EvalOutcome eval_expr(const ExprPtr& e, const PrecCtx& ctx);

struct ClosedFormA {
  Real value;
  int certified_digits;
};

// Gamma-form evaluation of the ramp-series constant for integer parameters
// 2 <= alpha, 1 <= beta <= alpha, entirely independent of the series route.
ClosedFormA closed_form_A(long alpha, long beta, const PrecCtx& ctx);

enum class IdentityKind { real_valued, complex_valued };
const char* identity_kind_name(IdentityKind k) noexcept;

struct Identity {
  std::string name;
  IdentityKind kind;
  std::string lhs_src, rhs_src;
  ExprPtr lhs, rhs;
};

// The shipped identity set; every entry equates a series or continued
// fraction against an independent closed form.
std::vector<Identity> builtin_registry();

struct VerificationReport {
  std::string name;
  int requested_digits = 0;
  std::string lhs_value, rhs_value;
  int matched_digits = 0;
  bool pass = false;
  double elapsed_ms = 0.0;
  std::vector<std::string> methods;
  std::string error;  // nonempty when evaluation threw instead of comparing
};

// Evaluates both sides at `digits` and passes when they agree on at least
// digits - slack of them. Numeric failures are captured into the report
// rather than propagated, so a batch keeps going.
VerificationReport verify(const Identity& ident, int digits, int slack = 2);

class ManifestError : public NumericError {
 public:
  ManifestError(const std::string& msg, int line);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// Manifest format, one directive per line, '#' starts a comment:
//   identity <name>
//   kind real|complex
//   lhs = <expression>
//   rhs = <expression>
//   end
std::vector<Identity> load_manifest(const std::string& path);

// Fixed-width rendering used in reports: reals via to_decimal, complex as
// "re + imi" / "re - imi".
std::string render_value(const Value& v, int digits);

}  // namespace identities
}  // namespace constforge
