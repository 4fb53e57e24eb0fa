// Serial vs OpenMP kernel timings. Run with CAUSAL_METRICS_THREADS to pin the
// worker count.

#include <omp.h>

#include <cstdio>
#include <random>
#include <vector>

#include "causalmetrics/kernels.hpp"
#include "causalmetrics/norms.hpp"
#include "causalmetrics/parallel.hpp"

using namespace causalmetrics;

namespace {

CMat random_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  return m;
}

template <typename F>
double time_ms(F&& f, int reps) {
  f(); // warm up
  double t0 = omp_get_wtime();
  for (int r = 0; r < reps; ++r) f();
  return (omp_get_wtime() - t0) * 1e3 / reps;
}

void report(const char* name, double serial_ms, double omp_ms) {
  std::printf("%-28s %10.3f ms %10.3f ms %8.2fx\n", name, serial_ms, omp_ms,
              serial_ms / omp_ms);
}

} // namespace

int main() {
  std::printf("threads: %d\n", parallel::thread_count());
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  {
    CMat x = random_matrix(48, 48, 1), y = random_matrix(48, 48, 2);
    report("kron 48x48 ⊗ 48x48",
           time_ms([&] { kernels::kron_serial(x, y); }, 5),
           time_ms([&] { kernels::kron_omp(x, y); }, 5));
  }
  {
    CMat g = random_matrix(1024, 1024, 3);
    CMat rho = g * g.adjoint();
    std::vector<int> dims = {4, 16, 16};
    report("partial_trace dim 1024",
           time_ms([&] { kernels::partial_trace_serial(rho, dims, {1}); }, 5),
           time_ms([&] { kernels::partial_trace_omp(rho, dims, {1}); }, 5));
  }
  {
    std::vector<CMat> kraus;
    for (int k = 0; k < 16; ++k) kraus.push_back(random_matrix(128, 128, 10 + k));
    CMat rho = random_matrix(128, 128, 30);
    report("apply_kraus 16x 128",
           time_ms([&] { kernels::apply_kraus_serial(kraus, rho); }, 5),
           time_ms([&] { kernels::apply_kraus_omp(kraus, rho); }, 5));
  }
  {
    CMat m = random_matrix(4096, 4096, 40);
    std::vector<int> dims = {4, 4, 16, 16};
    std::vector<int> perm = {2, 0, 3, 1};
    report("permute_factors dim 4096",
           time_ms([&] { kernels::permute_factors_serial(m, dims, perm); }, 3),
           time_ms([&] { kernels::permute_factors_omp(m, dims, perm); }, 3));
  }
  {
    // multistart witness ascent fans out across starts through the same
    // dispatch, so it inherits whatever CAUSAL_METRICS_THREADS selects
    SystemLayout q = SystemLayout::single("A", 4);
    Channel a = random_channel(q, q, 4, 50), b = random_channel(q, q, 4, 51);
    HermitianPreservingMap phi = HermitianPreservingMap::from_channel_difference(a, b);
    double ms = time_ms([&] { diamond_lower_ascent(phi, 16, 7); }, 1);
    std::printf("%-28s %10.3f ms   (multistart fan-out)\n", "diamond ascent 16 starts", ms);
  }
  return 0;
}
