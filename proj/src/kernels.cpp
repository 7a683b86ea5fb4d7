#include "harmonics/kernels.hpp"

#include <omp.h>

#include <atomic>

namespace harmonics {

namespace {
std::atomic<Backend> g_backend{Backend::OpenMP};
}

Backend default_backend() { return g_backend.load(); }

void set_default_backend(Backend b) { g_backend.store(b); }

void set_thread_limit(int n) {
  if (n >= 1) omp_set_num_threads(n);
}

int thread_limit() { return omp_get_max_threads(); }

}  // namespace harmonics
