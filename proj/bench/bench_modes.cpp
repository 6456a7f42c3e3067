// Times the batch drivers in serial and OpenMP modes on two workloads: the
// (alpha, beta) closed-form scan and the built-in identity suite. Also
// confirms the two modes produce identical results, since the parallel path
// writes into preallocated slots.
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
#endif

#include "constforge/batch.hpp"
#include "constforge/identities.hpp"

using namespace constforge;

namespace {

double now_seconds() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
#endif
}

template <typename Fn>
double time_ms(Fn&& fn) {
  double t0 = now_seconds();
  fn();
  return (now_seconds() - t0) * 1000.0;
}

void print_row(const char* label, double serial_ms, double parallel_ms) {
  std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %.2fx\n",
              label, serial_ms, parallel_ms,
              parallel_ms > 0.0 ? serial_ms / parallel_ms : 0.0);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP, both modes run serially\n");
#endif

  std::vector<batch::ScanCell> scan_serial, scan_parallel;
  double scan_s = time_ms([&] {
    scan_serial = batch::scan_closed_form(2, 7, 40, batch::ExecPolicy::serial);
  });
  double scan_p = time_ms([&] {
    scan_parallel =
        batch::scan_closed_form(2, 7, 40, batch::ExecPolicy::parallel);
  });
  print_row("scan alpha 2..7 at 40", scan_s, scan_p);

  bool scan_same = scan_serial.size() == scan_parallel.size();
  for (std::size_t i = 0; scan_same && i < scan_serial.size(); ++i)
    scan_same = scan_serial[i].alpha == scan_parallel[i].alpha &&
                scan_serial[i].beta == scan_parallel[i].beta &&
                scan_serial[i].series_value == scan_parallel[i].series_value &&
                scan_serial[i].closed_value == scan_parallel[i].closed_value &&
                scan_serial[i].pass == scan_parallel[i].pass;

  std::vector<identities::VerificationReport> ver_serial, ver_parallel;
  double ver_s = time_ms([&] {
    ver_serial = batch::verify_batch(identities::builtin_registry(), 40,
                                     batch::ExecPolicy::serial);
  });
  double ver_p = time_ms([&] {
    ver_parallel = batch::verify_batch(identities::builtin_registry(), 40,
                                       batch::ExecPolicy::parallel);
  });
  print_row("verify builtins at 40", ver_s, ver_p);

  bool ver_same = ver_serial.size() == ver_parallel.size();
  for (std::size_t i = 0; ver_same && i < ver_serial.size(); ++i)
    ver_same = ver_serial[i].name == ver_parallel[i].name &&
               ver_serial[i].lhs_value == ver_parallel[i].lhs_value &&
               ver_serial[i].rhs_value == ver_parallel[i].rhs_value &&
               ver_serial[i].pass == ver_parallel[i].pass;

  std::printf("mode outputs identical: scan %s, verify %s\n",
              scan_same ? "yes" : "NO", ver_same ? "yes" : "NO");
  return (scan_same && ver_same) ? 0 : 1;
}
