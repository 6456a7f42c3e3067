// Batch drivers: verify a set of identities or sweep the series-vs-gamma-form
// grid, serially or across OpenMP threads. Results are written into
// preallocated slots by index, so the output is identical either way.
#pragma once

#include <string>
#include <vector>

#include "constforge/identities.hpp"

namespace constforge::batch {

enum class ExecPolicy { serial, parallel };
const char* policy_name(ExecPolicy p) noexcept;

// Verifies every identity at `digits`, ordered by name. Per-identity numeric
// failures land in the report's error field, never abort the batch.
std::vector<identities::VerificationReport> verify_batch(
    std::vector<identities::Identity> idents, int digits, ExecPolicy policy,
    int slack = 2);

struct ScanCell {
  long alpha = 0;
  long beta = 0;
  std::string series_value;
  std::string closed_value;
  int matched_digits = 0;
  bool pass = false;
  std::string error;  // nonempty when either route threw
};

// Compares the ramp series against its gamma form for every integer pair
// alpha in [alpha_lo, alpha_hi], beta in [1, alpha]. A cell passes when the
// two routes agree on digits - 2 digits.
std::vector<ScanCell> scan_closed_form(long alpha_lo, long alpha_hi,
                                       int digits, ExecPolicy policy);

}  // namespace constforge::batch
