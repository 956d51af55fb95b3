#include "flatreach/parallel.hpp"

#include <algorithm>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace flatreach {

namespace {

int env_thread_cap() {
  const char* raw = std::getenv("FLATREACH_THREADS");
  if (!raw) return 0;
  const int v = std::atoi(raw);
  return v > 0 ? v : 0;
}

}  // namespace

int worker_count() {
#ifdef _OPENMP
  const int hw = omp_get_max_threads();
#else
  const int hw = 1;
#endif
  const int cap = env_thread_cap();
  return cap > 0 ? std::clamp(cap, 1, hw) : hw;
}

void apply_thread_env() {
#ifdef _OPENMP
  const int cap = env_thread_cap();
  if (cap > 0) omp_set_num_threads(std::clamp(cap, 1, omp_get_max_threads()));
#endif
}

}  // namespace flatreach
