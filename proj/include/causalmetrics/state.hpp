#ifndef CAUSALMETRICS_STATE_HPP
#define CAUSALMETRICS_STATE_HPP

#include <cstdint>
#include <random>
#include <set>
#include <string>

#include "causalmetrics/common.hpp"
#include "causalmetrics/layout.hpp"

namespace causalmetrics {

/// Unit vector over a labeled composite system.
struct PureState {
  SystemLayout layout;
  CVec amplitudes;

  PureState(SystemLayout lay, CVec amp);
  CMat projector() const { return amplitudes * amplitudes.adjoint(); }
};

/// Hermitian, PSD, unit-trace matrix over a labeled composite system.
struct DensityMatrix {
  SystemLayout layout;
  CMat matrix;

  DensityMatrix(SystemLayout lay, CMat m);
  static DensityMatrix from_pure(const PureState& psi);
};

/// Marginal on the factors not in `traced_labels`, preserving their order.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<std::string>& traced_labels);

CVec random_unit_vector(int dim, std::mt19937_64& rng);
PureState random_pure_state(const SystemLayout& layout, std::uint64_t seed);
DensityMatrix random_density_matrix(const SystemLayout& layout, std::uint64_t seed);

} // namespace causalmetrics

#endif
