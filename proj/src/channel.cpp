#include "causalmetrics/channel.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "causalmetrics/kernels.hpp"

namespace causalmetrics {

namespace {

CMat trace_out(const CMat& choi, int d_in, int d_out) {
  return kernels::partial_trace(choi, {d_out, d_in}, {0});
}

void check_tp_choi(const CMat& choi, int d_in, int d_out, double eps) {
  CMat t = trace_out(choi, d_in, d_out);
  t.diagonal().array() -= 1.0;
  if (t.cwiseAbs().maxCoeff() > eps)
    throw invariant_error("Channel: Choi partial trace is not the identity");
}

} // namespace

Channel Channel::from_kraus(std::vector<CMat> kraus, SystemLayout in, SystemLayout out) {
  if (kraus.empty()) throw std::invalid_argument("Channel: empty Kraus list");
  const int d_in = in.total_dim(), d_out = out.total_dim();
  CMat completeness = CMat::Zero(d_in, d_in);
  for (const auto& k : kraus) {
    if (k.rows() != d_out || k.cols() != d_in)
      throw std::invalid_argument("Channel: Kraus shape does not match layouts");
    completeness.noalias() += k.adjoint() * k;
  }
  completeness.diagonal().array() -= 1.0;
  if (completeness.cwiseAbs().maxCoeff() > tol::kraus_completeness)
    throw invariant_error("Channel: Kraus operators are not trace preserving");
  Channel ch;
  ch.in_ = std::move(in);
  ch.out_ = std::move(out);
  ch.choi_ = kernels::choi_from_kraus(kraus);
  ch.kraus_ = std::move(kraus);
  return ch;
}

Channel Channel::from_choi(CMat choi, SystemLayout in, SystemLayout out) {
  const int d_in = in.total_dim(), d_out = out.total_dim();
  if (choi.rows() != static_cast<long>(d_in) * d_out || choi.rows() != choi.cols())
    throw std::invalid_argument("Channel: Choi size does not match layouts");
  if (!is_hermitian(choi, tol::kraus_completeness))
    throw invariant_error("Channel: Choi not Hermitian");
  check_tp_choi(choi, d_in, d_out, tol::choi_tp);
  Channel ch;
  ch.in_ = std::move(in);
  ch.out_ = std::move(out);
  ch.kraus_ = kraus_from_choi(choi, d_in, d_out);
  ch.choi_ = std::move(choi);
  return ch;
}

DensityMatrix Channel::apply(const DensityMatrix& rho) const {
  if (!(rho.layout == in_)) throw std::invalid_argument("Channel: input layout mismatch");
  return DensityMatrix(out_, hermitize(apply_raw(rho.matrix)));
}

CMat Channel::apply_raw(const CMat& x) const { return kernels::apply_kraus(kraus_, x); }

std::vector<CMat> kraus_from_choi(const CMat& choi, int d_in, int d_out, double cutoff) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(choi));
  if (es.eigenvalues().minCoeff() < -tol::choi_tp)
    throw invariant_error("kraus_from_choi: Choi is not PSD");
  std::vector<CMat> kraus;
  for (long k = 0; k < es.eigenvalues().size(); ++k) {
    const double lambda = es.eigenvalues()(k);
    if (lambda < cutoff) continue;
    CMat op(d_out, d_in);
    const double s = std::sqrt(lambda);
    for (int o = 0; o < d_out; ++o)
      for (int i = 0; i < d_in; ++i) op(o, i) = s * es.eigenvectors()(static_cast<long>(o) * d_in + i, k);
    kraus.push_back(std::move(op));
  }
  if (kraus.empty()) throw invariant_error("kraus_from_choi: zero map");
  return kraus;
}

Channel identity_channel(const SystemLayout& layout) {
  return Channel::from_kraus({CMat::Identity(layout.total_dim(), layout.total_dim())}, layout,
                             layout);
}

Channel unitary_channel(const CMat& u, SystemLayout in, SystemLayout out) {
  if (!is_unitary(u, tol::unitary)) throw std::invalid_argument("unitary_channel: not unitary");
  return Channel::from_kraus({u}, std::move(in), std::move(out));
}

Channel unitary_channel(const UnitaryGate& g, SystemLayout in, SystemLayout out) {
  return unitary_channel(g.matrix, std::move(in), std::move(out));
}

Channel depolarizing_channel(const SystemLayout& in, const SystemLayout& out) {
  const int d_in = in.total_dim(), d_out = out.total_dim();
  std::vector<CMat> kraus;
  kraus.reserve(static_cast<std::size_t>(d_in) * d_out);
  const double s = 1.0 / std::sqrt(static_cast<double>(d_out));
  for (int i = 0; i < d_out; ++i)
    for (int j = 0; j < d_in; ++j) {
      CMat k = CMat::Zero(d_out, d_in);
      k(i, j) = s;
      kraus.push_back(std::move(k));
    }
  return Channel::from_kraus(std::move(kraus), in, out);
}

Channel measurement_channel(const SystemLayout& layout) {
  const int d = layout.total_dim();
  std::vector<CMat> kraus;
  kraus.reserve(d);
  for (int b = 0; b < d; ++b) {
    CMat k = CMat::Zero(d, d);
    k(b, b) = 1.0;
    kraus.push_back(std::move(k));
  }
  return Channel::from_kraus(std::move(kraus), layout, layout);
}

Channel compose(const Channel& second, const Channel& first) {
  if (first.d_out() != second.d_in())
    throw std::invalid_argument("compose: intermediate dimensions do not match");
  std::vector<CMat> kraus;
  kraus.reserve(first.kraus().size() * second.kraus().size());
  for (const auto& k2 : second.kraus())
    for (const auto& k1 : first.kraus()) kraus.push_back(k2 * k1);
  return Channel::from_kraus(std::move(kraus), first.in_layout(), second.out_layout());
}

Channel mix(const Channel& a, const Channel& b, double w) {
  if (w < 0.0 || w > 1.0) throw std::invalid_argument("mix: weight outside [0,1]");
  if (a.d_in() != b.d_in() || a.d_out() != b.d_out())
    throw std::invalid_argument("mix: shape mismatch");
  return Channel::from_choi(w * a.choi() + (1.0 - w) * b.choi(), a.in_layout(), a.out_layout());
}

Channel random_channel(const SystemLayout& in, const SystemLayout& out, int kraus_count,
                       std::uint64_t seed) {
  if (kraus_count < 1) throw std::invalid_argument("random_channel: need at least one Kraus term");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int d_in = in.total_dim(), d_out = out.total_dim();
  std::vector<CMat> g(kraus_count);
  CMat s = CMat::Zero(d_in, d_in);
  for (auto& k : g) {
    k.resize(d_out, d_in);
    for (int i = 0; i < d_out; ++i)
      for (int j = 0; j < d_in; ++j) k(i, j) = Complex(gauss(rng), gauss(rng));
    s.noalias() += k.adjoint() * k;
  }
  // Right-normalize so Σ K†K = I.
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(s));
  CMat inv_sqrt = es.operatorInverseSqrt();
  for (auto& k : g) k = k * inv_sqrt;
  return Channel::from_kraus(std::move(g), in, out);
}

namespace {

CMat psd_project(const CMat& x) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(x));
  RVec clipped = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
}

CMat tp_project(const CMat& x, int d_in, int d_out) {
  CMat delta = CMat::Identity(d_in, d_in) - trace_out(x, d_in, d_out);
  return x + kernels::kron(CMat::Identity(d_out, d_out), delta) / d_out;
}

double psd_violation(const CMat& x) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(x), Eigen::EigenvaluesOnly);
  return std::max(0.0, -es.eigenvalues().minCoeff());
}

double tp_violation(const CMat& x, int d_in, int d_out) {
  CMat t = trace_out(x, d_in, d_out);
  t.diagonal().array() -= 1.0;
  return t.cwiseAbs().maxCoeff();
}

} // namespace

Channel project_to_cptp(const CMat& j, const SystemLayout& in, const SystemLayout& out) {
  const int d_in = in.total_dim(), d_out = out.total_dim();
  if (j.rows() != static_cast<long>(d_in) * d_out || j.rows() != j.cols())
    throw std::invalid_argument("project_to_cptp: matrix size does not match layouts");
  if (!is_hermitian(j, 1e-9)) throw std::invalid_argument("project_to_cptp: matrix not Hermitian");

  const long n = j.rows();
  CMat x = hermitize(j);
  CMat p = CMat::Zero(n, n), q = CMat::Zero(n, n);
  double best_viol = std::numeric_limits<double>::infinity();
  for (int it = 0; it < limits::cptp_projection_max_iter; ++it) {
    CMat y = psd_project(x + p);
    p = x + p - y;
    CMat z = tp_project(y + q, d_in, d_out);
    q = y + q - z;
    x = z;
    // z satisfies TP exactly; y satisfies PSD exactly. Feasibility is the
    // gap between them.
    const double viol = std::max(psd_violation(z), tp_violation(y, d_in, d_out));
    best_viol = std::min(best_viol, viol);
    if (viol < 1e-11) break;
  }
  if (best_viol > tol::cptp_projection)
    throw convergence_error("project_to_cptp: alternating projections did not converge");

  // Polish so the result passes the strict Channel validation.
  for (int it = 0; it < 200; ++it) {
    if (psd_violation(x) < 1e-11) break;
    x = tp_project(psd_project(x), d_in, d_out);
  }
  return Channel::from_choi(hermitize(x), in, out);
}

} // namespace causalmetrics
