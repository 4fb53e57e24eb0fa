#ifndef CAUSALMETRICS_PARALLEL_HPP
#define CAUSALMETRICS_PARALLEL_HPP

#include <cstdint>

namespace causalmetrics::parallel {

/// Worker count: CAUSAL_METRICS_THREADS when set (>=1), else the OpenMP default.
int thread_count();

/// True when kernels should take their OpenMP path (more than one worker).
bool enabled();

/// Deterministic per-stream seed derivation (splitmix64 over master ^ stream).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

} // namespace causalmetrics::parallel

#endif
