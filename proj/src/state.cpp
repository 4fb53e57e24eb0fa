#include "causalmetrics/state.hpp"

#include <Eigen/Eigenvalues>

#include "causalmetrics/kernels.hpp"

namespace causalmetrics {

PureState::PureState(SystemLayout lay, CVec amp) : layout(std::move(lay)), amplitudes(std::move(amp)) {
  if (amplitudes.size() != layout.total_dim())
    throw std::invalid_argument("PureState: amplitude count does not match layout");
  if (std::abs(amplitudes.norm() - 1.0) > tol::state_norm)
    throw invariant_error("PureState: vector is not normalized");
}

DensityMatrix::DensityMatrix(SystemLayout lay, CMat m) : layout(std::move(lay)), matrix(std::move(m)) {
  if (matrix.rows() != layout.total_dim() || matrix.cols() != layout.total_dim())
    throw std::invalid_argument("DensityMatrix: matrix size does not match layout");
  if (!is_hermitian(matrix, tol::hermitian))
    throw invariant_error("DensityMatrix: not Hermitian");
  if (std::abs(matrix.trace().real() - 1.0) > tol::hermitian ||
      std::abs(matrix.trace().imag()) > tol::hermitian)
    throw invariant_error("DensityMatrix: trace is not 1");
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(matrix), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol::psd)
    throw invariant_error("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.layout, psi.projector());
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<std::string>& traced_labels) {
  std::vector<int> traced;
  for (const auto& label : traced_labels) {
    int pos = rho.layout.position(label);
    if (pos < 0) throw std::invalid_argument("partial_trace: unknown label '" + label + "'");
    traced.push_back(pos);
  }
  std::vector<int> kept;
  for (int i = 0; i < rho.layout.size(); ++i)
    if (!traced_labels.count(rho.layout.factors()[i].label)) kept.push_back(i);
  CMat marginal = kernels::partial_trace(rho.matrix, rho.layout.dims(), traced);
  return DensityMatrix(rho.layout.select(kept), hermitize(marginal));
}

CVec random_unit_vector(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return v / v.norm();
}

PureState random_pure_state(const SystemLayout& layout, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return PureState(layout, random_unit_vector(layout.total_dim(), rng));
}

DensityMatrix random_density_matrix(const SystemLayout& layout, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int d = layout.total_dim();
  CMat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  CMat w = g * g.adjoint();
  return DensityMatrix(layout, hermitize(w / w.trace().real()));
}

} // namespace causalmetrics
