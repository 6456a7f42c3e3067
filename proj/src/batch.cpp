#include "constforge/batch.hpp"

#include <algorithm>
#include <cstdint>

#include "constforge/seqconst.hpp"

namespace constforge::batch {

const char* policy_name(ExecPolicy p) noexcept {
  return p == ExecPolicy::serial ? "serial" : "parallel";
}

std::vector<identities::VerificationReport> verify_batch(
    std::vector<identities::Identity> idents, int digits, ExecPolicy policy,
    int slack) {
  std::sort(idents.begin(), idents.end(),
            [](const identities::Identity& a, const identities::Identity& b) {
              return a.name < b.name;
            });
  std::vector<identities::VerificationReport> out(idents.size());
  std::int64_t n = static_cast<std::int64_t>(idents.size());
  if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < n; ++k)
      out[k] = identities::verify(idents[k], digits, slack);
  } else {
    for (std::int64_t k = 0; k < n; ++k)
      out[k] = identities::verify(idents[k], digits, slack);
  }
  return out;
}

namespace {

ScanCell scan_cell(long alpha, long beta, int digits) {
  ScanCell cell;
  cell.alpha = alpha;
  cell.beta = beta;
  try {
    PrecCtx ctx = make_context(digits);
    auto seq = seqconst::SequenceSource::linear(alpha, beta);
    auto series = seqconst::encode(seq, ctx);
    auto closed = identities::closed_form_A(alpha, beta, ctx);
    cell.series_value = series.value.to_decimal(digits);
    cell.closed_value = closed.value.to_decimal(digits);
    cell.matched_digits = agreed_digits(series.value, closed.value);
    cell.pass = cell.matched_digits >= digits - 2;
  } catch (const NumericError& err) {
    cell.pass = false;
    cell.error = err.what();
  }
  return cell;
}

}  // namespace

std::vector<ScanCell> scan_closed_form(long alpha_lo, long alpha_hi,
                                       int digits, ExecPolicy policy) {
  if (alpha_lo < 2) throw InvalidArgument("scan needs alpha_lo >= 2");
  if (alpha_hi < alpha_lo)
    throw InvalidArgument("scan needs alpha_hi >= alpha_lo");
  if (alpha_hi - alpha_lo > 64)
    throw InvalidArgument("scan range wider than 64 is unreasonably slow");

  std::vector<std::pair<long, long>> grid;
  for (long a = alpha_lo; a <= alpha_hi; ++a)
    for (long b = 1; b <= a; ++b) grid.emplace_back(a, b);

  std::vector<ScanCell> out(grid.size());
  std::int64_t n = static_cast<std::int64_t>(grid.size());
  if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < n; ++k)
      out[k] = scan_cell(grid[k].first, grid[k].second, digits);
  } else {
    for (std::int64_t k = 0; k < n; ++k)
      out[k] = scan_cell(grid[k].first, grid[k].second, digits);
  }
  return out;
}

}  // namespace constforge::batch
