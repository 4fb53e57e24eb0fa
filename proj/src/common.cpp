#include "causalmetrics/common.hpp"

#include <Eigen/Eigenvalues>

namespace causalmetrics {

bool is_hermitian(const CMat& m, double eps) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= eps;
}

bool is_unitary(const CMat& m, double eps) {
  if (m.rows() != m.cols()) return false;
  CMat g = m.adjoint() * m;
  g.diagonal().array() -= 1.0;
  return g.cwiseAbs().maxCoeff() <= eps;
}

bool is_psd(const CMat& m, double eps) {
  if (!is_hermitian(m, eps)) return false;
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -eps;
}

CMat hermitize(const CMat& m) { return 0.5 * (m + m.adjoint()); }

} // namespace causalmetrics
