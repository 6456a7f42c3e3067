#include "constforge/seqconst.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace constforge::seqconst {

namespace {

constexpr std::int64_t kTermCap = 1000000;

// Growing prime table shared by every primes() source.
class PrimeTable {
 public:
  long nth(std::int64_t n) {
    std::lock_guard<std::mutex> lock(mu_);
    while (static_cast<std::int64_t>(primes_.size()) < n) grow();
    return primes_[static_cast<size_t>(n - 1)];
  }

 private:
  void grow() {
    limit_ = std::max<long>(limit_ * 2, 1024);
    std::vector<bool> composite(limit_ + 1, false);
    primes_.clear();
    for (long p = 2; p <= limit_; ++p) {
      if (composite[p]) continue;
      primes_.push_back(p);
      for (long m = p * p; m <= limit_; m += p) composite[m] = true;
    }
  }

  std::mutex mu_;
  std::vector<long> primes_;
  long limit_ = 0;
};

PrimeTable& prime_table() {
  static PrimeTable t;
  return t;
}

mpz_class floor_of(const mpq_class& f) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), f.get_num_mpz_t(), f.get_den_mpz_t());
  return r;
}

}  // namespace

SequenceSource SequenceSource::linear(long alpha, long beta) {
  if (alpha < 1 || beta < 1)
    throw InvalidArgument("linear sequence needs alpha >= 1 and beta >= 1, "
                          "got alpha = " + std::to_string(alpha) +
                          ", beta = " + std::to_string(beta));
  if (alpha > 1000000000L || beta > 1000000000L)
    throw InvalidArgument("linear sequence parameters out of range");
  return SequenceSource(Kind::linear, alpha, beta, {});
}

SequenceSource SequenceSource::primes() {
  return SequenceSource(Kind::primes, 0, 0, {});
}

SequenceSource SequenceSource::custom(std::vector<long> terms) {
  if (terms.empty()) throw InvalidArgument("custom sequence is empty");
  for (long t : terms)
    if (t < 1)
      throw InvalidArgument("custom sequence term " + std::to_string(t) +
                            " is < 1");
  return SequenceSource(Kind::custom, 0, 0, std::move(terms));
}

long SequenceSource::term(std::int64_t n) const {
  if (n < 1) throw InvalidArgument("sequence index must be >= 1");
  switch (kind_) {
    case Kind::linear:
      return alpha_ * (n - 1) + beta_;
    case Kind::primes:
      return prime_table().nth(n);
    case Kind::custom:
      if (n > static_cast<std::int64_t>(terms_.size()))
        throw InvalidArgument("custom sequence has only " +
                              std::to_string(terms_.size()) + " terms");
      return terms_[static_cast<size_t>(n - 1)];
  }
  throw InvalidArgument("unreachable sequence kind");
}

std::optional<std::int64_t> SequenceSource::length() const {
  if (kind_ == Kind::custom)
    return static_cast<std::int64_t>(terms_.size());
  return std::nullopt;
}

std::string SequenceSource::describe() const {
  switch (kind_) {
    case Kind::linear:
      return "linear(" + std::to_string(alpha_) + "," +
             std::to_string(beta_) + ")";
    case Kind::primes:
      return "primes";
    case Kind::custom:
      return "custom[" + std::to_string(terms_.size()) + " terms]";
  }
  return "?";
}

std::optional<std::int64_t> bertrand_window(const SequenceSource& seq,
                                            std::int64_t upto) {
  if (upto < 2 || upto > kTermCap)
    throw InvalidArgument("bertrand_window needs 2 <= upto <= 10^6");
  std::int64_t n_terms = upto;
  if (auto len = seq.length()) n_terms = std::min(n_terms, *len);
  if (n_terms < 2) return std::nullopt;

  std::int64_t last_violation = 0;
  long prev = seq.term(1);
  for (std::int64_t n = 1; n + 1 <= n_terms; ++n) {
    long next = seq.term(n + 1);
    if (!(prev < next && next < 2 * prev)) last_violation = n;
    prev = next;
  }
  std::int64_t n0 = last_violation + 1;
  if (n0 > n_terms - 1) return std::nullopt;
  return n0;
}

namespace detail {

Real encode_once(const SequenceSource& seq, std::int64_t* terms_used,
                 Real* tail_bound) {
  int wd = current_precision_digits();
  Real thr = pow10(-wd);
  Real sum(0);
  Real prod(1);
  for (std::int64_t n = 1;; ++n) {
    if (n > kTermCap)
      throw ConvergenceError("encode for " + seq.describe() +
                             " did not settle within the term cap");
    long s;
    try {
      s = seq.term(n);
    } catch (const InvalidArgument&) {
      throw InvalidArgument("encode for " + seq.describe() +
                            " exhausted the sequence before the tail "
                            "bound was met (term " + std::to_string(n) + ")");
    }
    Real term = Real(s - 1) / prod;
    sum += term;
    // In the growth window the term ratio stays below 2/3 once s >= 4,
    // so twice the last term bounds the tail.
    if (s >= 4 && term < thr) {
      if (terms_used) *terms_used = n;
      if (tail_bound) *tail_bound = Real(2) * term;
      break;
    }
    prod *= Real(s);
  }
  return sum;
}

Cx encode_complex_once(const Cx& alpha, const Cx& beta,
                       std::int64_t* terms_used, Real* tail_bound) {
  if (alpha.is_zero())
    throw InvalidArgument("encode_complex needs alpha != 0 so the ramp grows");
  int wd = current_precision_digits();
  Real thr = pow10(-wd);
  Cx sum(Real(0));
  Cx prod(Real(1));
  Cx s = beta;
  for (std::int64_t n = 1;; ++n) {
    if (n > kTermCap)
      throw ConvergenceError(
          "complex encode did not settle within the term cap");
    Cx term = (s - Cx(Real(1))) / prod;
    sum += term;
    Real mag = abs(term);
    if (abs(s) >= Real(4) && mag < thr) {
      if (terms_used) *terms_used = n;
      if (tail_bound) *tail_bound = Real(2) * mag;
      break;
    }
    prod *= s;
    s += alpha;
  }
  return sum;
}

}  // namespace detail

EncodedConstant encode(const SequenceSource& seq, const PrecCtx& ctx) {
  std::int64_t terms_used = 0;
  Real tail_bound(0);
  auto task = [&](int) {
    return detail::encode_once(seq, &terms_used, &tail_bound);
  };
  auto st = certify(task, ctx);
  return {std::move(st.value), terms_used, std::move(tail_bound),
          st.certified_digits};
}

EncodedConstantCx encode_complex(const Cx& alpha, const Cx& beta,
                                 const PrecCtx& ctx) {
  std::int64_t terms_used = 0;
  Real tail_bound(0);
  auto task = [&](int) {
    return detail::encode_complex_once(alpha, beta, &terms_used, &tail_bound);
  };
  auto st = certify(task, ctx);
  return {std::move(st.value), terms_used, std::move(tail_bound),
          st.certified_digits};
}

const char* decode_failure_name(DecodeFailure f) noexcept {
  switch (f) {
    case DecodeFailure::floor_mismatch: return "floor_mismatch";
    case DecodeFailure::r_out_of_range: return "r_out_of_range";
    case DecodeFailure::precision_exhausted: return "precision_exhausted";
  }
  return "?";
}

DecodeTrace decode(const Real& f1, std::int64_t steps, const PrecCtx& ctx) {
  if (steps < 1 || steps > kTermCap)
    throw InvalidArgument("decode needs 1 <= steps <= 10^6");
  if (!f1.is_finite()) throw DomainError("decode needs a finite start value");

  int own_digits = digits_for_bits(f1.precision_bits());
  WorkingPrecision scope(std::max(ctx.working_digits(), own_digits + 10));

  DecodeTrace tr;
  Real f = f1;
  double budget = own_digits;
  double spent = 0.0;
  for (std::int64_t k = 1; k <= steps; ++k) {
    if (budget - spent < 2.0) {
      tr.failure = {{k, DecodeFailure::precision_exhausted}};
      break;
    }
    Real fl = floor(f);
    if (fl < Real(1) || fl > Real(std::int64_t{1} << 60)) {
      tr.failure = {{k, DecodeFailure::r_out_of_range}};
      break;
    }
    long s = fl.to_long();
    Real r = f - fl;
    tr.steps.push_back({k, s, r});
    if (r.is_zero()) {
      tr.failure = {{k, DecodeFailure::r_out_of_range}};
      break;
    }
    spent += std::log10(static_cast<double>(s));
    f = fl * (r + Real(1));
  }
  return tr;
}

Real advance_to_window(const Real& f1, const SequenceSource& seq,
                       std::int64_t n0) {
  if (n0 < 1) throw InvalidArgument("window start must be >= 1");
  WorkingPrecision scope(digits_for_bits(f1.precision_bits()) + 10);
  Real f = f1;
  for (std::int64_t n = 1; n < n0; ++n) {
    Real s(seq.term(n));
    f = s * (f - s + Real(1));
  }
  return f;
}

int decode_digits_needed(const SequenceSource& seq, std::int64_t n0,
                         std::int64_t steps) {
  double need = 2.0;
  for (std::int64_t n = 1; n < n0 + steps; ++n)
    need += std::log10(static_cast<double>(seq.term(n)));
  return static_cast<int>(std::ceil(need)) + 10;
}

std::vector<RemainderRow> remainder_profile(const DecodeTrace& trace) {
  if (trace.steps.empty())
    throw InvalidArgument("remainder profile of an empty decode trace");
  std::vector<RemainderRow> rows;
  rows.reserve(trace.steps.size());
  for (const DecodeStep& st : trace.steps)
    rows.push_back({st.n, st.r, Real(st.n) * st.r});
  return rows;
}

TruncationProbe truncation_probe(const SequenceSource& seq, int digits_given,
                                 const PrecCtx& ctx) {
  if (digits_given < 8 || digits_given > 100000)
    throw InvalidArgument("truncation probe needs 8 <= digits_given <= 10^5");
  auto window = bertrand_window(seq, 400);
  if (!window)
    throw InvalidArgument(seq.describe() + " has no decoding window");
  std::int64_t n0 = *window;

  PrecCtx enc_ctx = make_context(std::max(ctx.digits, digits_given + 20),
                                 ctx.guard, ctx.ladder_step);
  EncodedConstant enc = encode(seq, enc_ctx);
  WorkingPrecision scope(digits_for_bits(enc.value.precision_bits()) + 10);
  Real f = advance_to_window(enc.value, seq, n0);

  // Exact truncation to digits_given significant digits: p / 10^k.
  long int_len =
      static_cast<long>(std::to_string(floor(f).to_long()).size());
  long k = std::max<long>(digits_given - int_len, 0);
  Real scaled = f * pow10(k);
  mpz_class p;
  mpfr_get_z(p.get_mpz_t(), scaled.raw(), MPFR_RNDD);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(k));
  mpq_class fq(p, den);
  fq.canonicalize();

  // The truncation throws away ~10^-k absolute, and every step multiplies
  // the error by the floor, so the budget dies where the cumulative
  // log10(s) crosses k.
  std::int64_t predicted = 0;
  double acc = 0.0;
  for (std::int64_t j = 1;; ++j) {
    acc += std::log10(static_cast<double>(seq.term(n0 + j - 1)));
    if (acc > static_cast<double>(k)) break;
    predicted = j;
    if (j > 100000) break;
  }

  std::int64_t cap = predicted * 3 + 60;
  std::int64_t failure = cap;
  for (std::int64_t j = 1; j <= cap; ++j) {
    long s_true = seq.term(n0 + j - 1);
    mpz_class fl = floor_of(fq);
    if (mpz_cmp_si(fl.get_mpz_t(), s_true) != 0) {
      failure = j;
      break;
    }
    mpq_class r = fq - mpq_class(fl);
    if (r <= 0) {
      failure = j;
      break;
    }
    fq = mpq_class(fl) * (r + 1);
  }
  return {failure, predicted};
}

RationalProbeResult rational_probe(const mpq_class& value,
                                   const SequenceSource& seq,
                                   std::int64_t max_steps) {
  if (max_steps < 1 || max_steps > 100000)
    throw InvalidArgument("rational probe needs 1 <= max_steps <= 10^5");
  if (value <= 0) throw InvalidArgument("rational probe needs a value > 0");
  auto window = bertrand_window(seq, 400);
  if (!window)
    throw InvalidArgument(seq.describe() + " has no decoding window");
  std::int64_t n0 = *window;

  mpq_class f = value;
  f.canonicalize();
  mpz_class q = f.get_den();
  mpq_class inv_q(mpz_class(1), q);
  inv_q.canonicalize();

  RationalProbeResult res;
  res.min_r = 2;
  res.min_r_step = 0;
  res.integrality_ok = true;

  for (std::int64_t j = 1; j <= max_steps; ++j) {
    // q f_n integral at every step is forced by the recurrence; a violation
    // here means the implementation, not the input, is broken.
    if (!mpz_divisible_p(q.get_mpz_t(), f.get_den_mpz_t())) {
      res.integrality_ok = false;
      break;
    }
    long s_true = seq.term(n0 + j - 1);
    mpz_class fl = floor_of(f);
    mpq_class r = f - mpq_class(fl);
    res.steps.push_back({j, f, fl, r});
    if (r > 0 && r < res.min_r) {
      res.min_r = r;
      res.min_r_step = j;
    }
    if (!res.first_below_inv_q && r < inv_q) res.first_below_inv_q = j;
    if (mpz_cmp_si(fl.get_mpz_t(), s_true) != 0) {
      res.failure = {{j, DecodeFailure::floor_mismatch}};
      break;
    }
    if (r == 0) {
      res.failure = {{j, DecodeFailure::r_out_of_range}};
      break;
    }
    f = mpq_class(fl) * (r + 1);
  }
  if (res.min_r_step == 0) res.min_r = 0;
  return res;
}

}  // namespace constforge::seqconst
