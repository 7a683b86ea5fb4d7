#pragma once

// Loop driver shared by the heavy quadratures. Every loop body computes one
// output slot with a fixed summation order, so the serial and OpenMP
// backends produce bit-identical results.

#include <cstdint>

namespace harmonics {

enum class Backend { Serial, OpenMP };

/// Backend used when callers do not choose one.
Backend default_backend();
void set_default_backend(Backend b);

/// Caps OpenMP threads; values < 1 are ignored.
void set_thread_limit(int n);
int thread_limit();

template <class Fn>
void parallel_for(Backend backend, std::int64_t n, Fn&& fn) {
  if (backend == Backend::Serial) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) fn(i);
}

}  // namespace harmonics
