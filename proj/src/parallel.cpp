#include "causalmetrics/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace causalmetrics::parallel {

int thread_count() {
  static const int n = [] {
    if (const char* env = std::getenv("CAUSAL_METRICS_THREADS")) {
      int v = std::atoi(env);
      if (v >= 1) return v;
    }
    return omp_get_max_threads();
  }();
  return n;
}

bool enabled() { return thread_count() > 1; }

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace causalmetrics::parallel
