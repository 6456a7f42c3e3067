// Sequence-encoded constants: A(s) = sum_n (s_n - 1) / prod_{i<n} s_i for a
// positive integer sequence, the floor-recurrence decoder that recovers the
// terms back out of the number, and the probes that measure how truncation
// or an arbitrary rational breaks the recovery.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "constforge/numkern.hpp"

namespace constforge::seqconst {

class SequenceSource {
 public:
  enum class Kind { linear, primes, custom };

  // s_n = alpha (n - 1) + beta; alpha >= 1, beta >= 1.
  static SequenceSource linear(long alpha, long beta);
  static SequenceSource primes();
  static SequenceSource custom(std::vector<long> terms);  // every term >= 1

  Kind kind() const noexcept { return kind_; }
  long alpha() const noexcept { return alpha_; }
  long beta() const noexcept { return beta_; }

  // 1-based; a custom source throws InvalidArgument past its last term.
  long term(std::int64_t n) const;
  std::optional<std::int64_t> length() const;  // custom list size
  std::string describe() const;

 private:
  SequenceSource(Kind k, long a, long b, std::vector<long> t)
      : kind_(k), alpha_(a), beta_(b), terms_(std::move(t)) {}

  Kind kind_;
  long alpha_;
  long beta_;
  std::vector<long> terms_;
};

// Smallest n0 such that s_n < s_{n+1} < 2 s_n holds for every examined index
// n >= n0 (pairs up to `upto`); nullopt when no such window opens in range.
std::optional<std::int64_t> bertrand_window(const SequenceSource& seq,
                                            std::int64_t upto);

struct EncodedConstant {
  Real value;
  std::int64_t terms_used;
  Real tail_bound;
  int certified_digits;
};

EncodedConstant encode(const SequenceSource& seq, const PrecCtx& ctx);

struct EncodedConstantCx {
  Cx value;
  std::int64_t terms_used;
  Real tail_bound;
  int certified_digits;
};

// Complex linear ramp s_n = alpha (n - 1) + beta; alpha must be nonzero so
// the partial products grow.
EncodedConstantCx encode_complex(const Cx& alpha, const Cx& beta,
                                 const PrecCtx& ctx);

enum class DecodeFailure {
  floor_mismatch,       // recovered floor departs from the expected term
  r_out_of_range,       // remainder left (0, 1): the orbit degenerated
  precision_exhausted,  // digit budget consumed by the floor products
};
const char* decode_failure_name(DecodeFailure f) noexcept;

struct DecodeStep {
  std::int64_t n;  // 1-based step within this trace
  long s;          // floor(f_n)
  Real r;          // f_n - s
};

struct DecodeTrace {
  std::vector<DecodeStep> steps;
  std::optional<std::pair<std::int64_t, DecodeFailure>> failure;
};

// Runs f_{k+1} = floor(f_k) (f_k - floor(f_k) + 1) for `steps` steps. The
// digit budget is what f1's own precision carries; each step spends
// log10(floor) of it and the trace stops with precision_exhausted when
// fewer than two certified digits would remain.
DecodeTrace decode(const Real& f1, std::int64_t steps, const PrecCtx& ctx);

// f advanced through terms 1 .. n0-1 of seq with the recurrence driven by
// the known terms (the identity map when those terms are all 1). The result
// is the window-start value whose floors reproduce s_{n0}, s_{n0+1}, ...
Real advance_to_window(const Real& f1, const SequenceSource& seq,
                       std::int64_t n0);

// Decimal digits a trace of `steps` steps from seq's window start consumes,
// including the pre-window advance, plus a safety margin.
int decode_digits_needed(const SequenceSource& seq, std::int64_t n0,
                         std::int64_t steps);

struct RemainderRow {
  std::int64_t n;
  Real r;
  Real n_times_r;
};
// (n, r_n, n r_n) rows of a trace; empty traces are rejected.
std::vector<RemainderRow> remainder_profile(const DecodeTrace& trace);

struct TruncationProbe {
  std::int64_t failure_depth;    // first step the truncated value decodes wrong
  std::int64_t predicted_depth;  // where the digit budget says it should die
};

// Decodes the digits_given-significant-digit truncation of encode(seq)
// exactly (as a rational) against the true terms.
TruncationProbe truncation_probe(const SequenceSource& seq, int digits_given,
                                 const PrecCtx& ctx);

struct RationalStep {
  std::int64_t n;
  mpq_class f;
  mpz_class s;  // floor(f)
  mpq_class r;
};

struct RationalProbeResult {
  std::vector<RationalStep> steps;
  std::optional<std::pair<std::int64_t, DecodeFailure>> failure;
  mpq_class min_r;                 // smallest remainder seen (steps with r > 0)
  std::int64_t min_r_step;
  std::optional<std::int64_t> first_below_inv_q;  // first step with r < 1/q
  bool integrality_ok;             // q f_n stayed integral throughout
};

// Exact floor-recurrence orbit of a rational p/q compared against seq from
// its window start. q f_n integral for all n is a theorem; its flag is
// reported so a violation can be treated as an implementation bug.
RationalProbeResult rational_probe(const mpq_class& value,
                                   const SequenceSource& seq,
                                   std::int64_t max_steps);

namespace detail {

// Single-pass sums at the current working precision (no ladder); the public
// encode entry points wrap these in certification.
Real encode_once(const SequenceSource& seq, std::int64_t* terms_used,
                 Real* tail_bound);
Cx encode_complex_once(const Cx& alpha, const Cx& beta,
                       std::int64_t* terms_used, Real* tail_bound);

}  // namespace detail

}  // namespace constforge::seqconst
