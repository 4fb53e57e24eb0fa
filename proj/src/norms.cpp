#include "causalmetrics/norms.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "causalmetrics/gates.hpp"
#include "causalmetrics/kernels.hpp"
#include "causalmetrics/parallel.hpp"

namespace causalmetrics {

double trace_norm(const CMat& x) {
  if (x.rows() != x.cols()) throw std::invalid_argument("trace_norm: matrix not square");
  if (is_hermitian(x, tol::hermitian)) {
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(x), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::BDCSVD<CMat> svd(x);
  return svd.singularValues().sum();
}

std::pair<double, CMat> trace_norm_and_sign(const CMat& x) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(x));
  const RVec& ev = es.eigenvalues();
  RVec signs(ev.size());
  for (long i = 0; i < ev.size(); ++i) signs(i) = ev(i) >= 0.0 ? 1.0 : -1.0;
  CMat w = es.eigenvectors() * signs.asDiagonal() * es.eigenvectors().adjoint();
  return {ev.cwiseAbs().sum(), hermitize(w)};
}

namespace {

/// conj-reshuffle of the Choi used by adjoint_extend:
/// K[(o,o'),(i,i')] = conj(J[(o,i),(o',i')]).
CMat adjoint_kernel(const CMat& choi, int d_in, int d_out) {
  CMat k(static_cast<long>(d_out) * d_out, static_cast<long>(d_in) * d_in);
  for (int o = 0; o < d_out; ++o)
    for (int op = 0; op < d_out; ++op)
      for (int i = 0; i < d_in; ++i)
        for (int ip = 0; ip < d_in; ++ip)
          k(static_cast<long>(o) * d_out + op, static_cast<long>(i) * d_in + ip) =
              std::conj(choi(static_cast<long>(o) * d_in + i, static_cast<long>(op) * d_in + ip));
  return k;
}

} // namespace

HermitianPreservingMap HermitianPreservingMap::from_choi(CMat choi, SystemLayout in,
                                                         SystemLayout out) {
  const int d_in = in.total_dim(), d_out = out.total_dim();
  if (choi.rows() != static_cast<long>(d_in) * d_out || choi.rows() != choi.cols())
    throw std::invalid_argument("HermitianPreservingMap: Choi size mismatch");
  if (!is_hermitian(choi, tol::hermitian))
    throw invariant_error("HermitianPreservingMap: Choi not Hermitian");
  HermitianPreservingMap m;
  m.in_layout = std::move(in);
  m.out_layout = std::move(out);
  m.choi = hermitize(choi);
  Eigen::SelfAdjointEigenSolver<CMat> es(m.choi);
  for (long k = 0; k < es.eigenvalues().size(); ++k) {
    const double lambda = es.eigenvalues()(k);
    if (std::abs(lambda) < tol::eig_cutoff) continue;
    CMat op(d_out, d_in);
    const double s = std::sqrt(std::abs(lambda));
    for (int o = 0; o < d_out; ++o)
      for (int i = 0; i < d_in; ++i)
        op(o, i) = s * es.eigenvectors()(static_cast<long>(o) * d_in + i, k);
    (lambda > 0 ? m.kraus_plus : m.kraus_minus).push_back(std::move(op));
  }
  return m;
}

HermitianPreservingMap HermitianPreservingMap::from_kraus_difference(std::vector<CMat> plus,
                                                                     std::vector<CMat> minus,
                                                                     SystemLayout in,
                                                                     SystemLayout out) {
  HermitianPreservingMap m;
  m.in_layout = std::move(in);
  m.out_layout = std::move(out);
  m.kraus_plus = std::move(plus);
  m.kraus_minus = std::move(minus);
  CMat choi = CMat::Zero(static_cast<long>(m.d_in()) * m.d_out(),
                         static_cast<long>(m.d_in()) * m.d_out());
  if (!m.kraus_plus.empty()) choi += kernels::choi_from_kraus(m.kraus_plus);
  if (!m.kraus_minus.empty()) choi -= kernels::choi_from_kraus(m.kraus_minus);
  m.choi = hermitize(choi);
  return m;
}

HermitianPreservingMap HermitianPreservingMap::from_channel(const Channel& c) {
  return from_kraus_difference(c.kraus(), {}, c.in_layout(), c.out_layout());
}

HermitianPreservingMap HermitianPreservingMap::from_channel_difference(const Channel& a,
                                                                       const Channel& b) {
  if (a.d_in() != b.d_in() || a.d_out() != b.d_out())
    throw std::invalid_argument("channel difference: shape mismatch");
  return from_kraus_difference(a.kraus(), b.kraus(), a.in_layout(), a.out_layout());
}

CMat HermitianPreservingMap::apply(const CMat& x) const {
  CMat out = CMat::Zero(d_out(), d_out());
  if (!kraus_plus.empty()) out += kernels::apply_kraus(kraus_plus, x);
  if (!kraus_minus.empty()) out -= kernels::apply_kraus(kraus_minus, x);
  return out;
}

CMat extend_apply(const HermitianPreservingMap& phi, const CMat& psi_mat) {
  const int d_e = static_cast<int>(psi_mat.rows());
  const int d_in = phi.d_in(), d_out = phi.d_out();
  if (psi_mat.cols() != d_in) throw std::invalid_argument("extend_apply: witness shape mismatch");

  auto stack = [&](const std::vector<CMat>& kraus) {
    CMat v(static_cast<long>(d_e) * d_out, static_cast<long>(kraus.size()));
    for (std::size_t k = 0; k < kraus.size(); ++k) {
      CMat img = psi_mat * kraus[k].transpose(); // (I⊗K)ψ in matrix form
      for (int e = 0; e < d_e; ++e)
        for (int o = 0; o < d_out; ++o) v(static_cast<long>(e) * d_out + o, k) = img(e, o);
    }
    return v;
  };

  CMat x = CMat::Zero(static_cast<long>(d_e) * d_out, static_cast<long>(d_e) * d_out);
  if (!phi.kraus_plus.empty()) {
    CMat v = stack(phi.kraus_plus);
    x.noalias() += v * v.adjoint();
  }
  if (!phi.kraus_minus.empty()) {
    CMat v = stack(phi.kraus_minus);
    x.noalias() -= v * v.adjoint();
  }
  return x;
}

CMat adjoint_extend(const HermitianPreservingMap& phi, const CMat& w, int d_e) {
  const int d_in = phi.d_in(), d_out = phi.d_out();
  if (w.rows() != static_cast<long>(d_e) * d_out || w.rows() != w.cols())
    throw std::invalid_argument("adjoint_extend: observable shape mismatch");

  // M[(e,i),(e',i')] = Σ_{o,o'} W[(e,o),(e',o')] conj(J[(o,i),(o',i')]),
  // evaluated as one flat matrix product.
  CMat wf(static_cast<long>(d_e) * d_e, static_cast<long>(d_out) * d_out);
  for (int e = 0; e < d_e; ++e)
    for (int ep = 0; ep < d_e; ++ep)
      for (int o = 0; o < d_out; ++o)
        for (int op = 0; op < d_out; ++op)
          wf(static_cast<long>(e) * d_e + ep, static_cast<long>(o) * d_out + op) =
              w(static_cast<long>(e) * d_out + o, static_cast<long>(ep) * d_out + op);

  CMat mf = wf * adjoint_kernel(phi.choi, d_in, d_out);

  CMat m(static_cast<long>(d_e) * d_in, static_cast<long>(d_e) * d_in);
  for (int e = 0; e < d_e; ++e)
    for (int ep = 0; ep < d_e; ++ep)
      for (int i = 0; i < d_in; ++i)
        for (int ip = 0; ip < d_in; ++ip)
          m(static_cast<long>(e) * d_in + i, static_cast<long>(ep) * d_in + ip) =
              mf(static_cast<long>(e) * d_e + ep, static_cast<long>(i) * d_in + ip);
  return hermitize(m);
}

const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::closed_form: return "closed_form";
    case BoundKind::lower: return "lower";
    case BoundKind::upper: return "upper";
    case BoundKind::reference: return "reference";
    case BoundKind::estimate: return "estimate";
  }
  return "unknown";
}

namespace {

/// Vector maximizing ⟨v,Mv⟩ for Hermitian M: exact for small dimensions,
/// shifted power iteration warm-started at `warm` above that. Approximate
/// steps keep the witness ascent monotone, so precision here only trades
/// per-step progress.
CVec top_eigenvector(const CMat& m, const CVec& warm) {
  if (m.rows() <= 96) {
    Eigen::SelfAdjointEigenSolver<CMat> es(m);
    return es.eigenvectors().col(es.eigenvalues().size() - 1);
  }
  const double shift = m.norm(); // Frobenius bound keeps M + shift·I PSD
  CVec v = warm / warm.norm();
  double rayleigh = (v.adjoint() * m * v)(0).real();
  for (int it = 0; it < 300; ++it) {
    CVec next = m * v + shift * v;
    next /= next.norm();
    double r = (next.adjoint() * m * next)(0).real();
    v = next;
    if (r - rayleigh < 1e-12) break;
    rayleigh = r;
  }
  return v;
}

} // namespace

AscentOutcome ascend_witness(const HermitianPreservingMap& phi, int d_e, CVec psi0, int max_iter,
                             double gain_tol) {
  const int d_in = phi.d_in();
  if (psi0.size() != static_cast<long>(d_e) * d_in)
    throw std::invalid_argument("ascend_witness: start vector size mismatch");

  AscentOutcome out;
  out.psi = psi0 / psi0.norm();
  double f_prev = -1.0;
  for (int it = 0; it < max_iter; ++it) {
    CMat psi_mat = Eigen::Map<const CMat>(out.psi.data(), d_in, d_e).transpose();
    CMat x = extend_apply(phi, psi_mat);
    auto [f, w] = trace_norm_and_sign(x);
    out.value = f;
    out.iterations = it + 1;
    if (f - f_prev < gain_tol) {
      out.converged = true;
      break;
    }
    f_prev = f;
    CMat m = adjoint_extend(phi, w, d_e);
    CVec top = top_eigenvector(m, out.psi);
    out.psi = top / top.norm();
  }
  // Bind the reported value to the reported witness exactly.
  CMat psi_mat = Eigen::Map<const CMat>(out.psi.data(), d_in, d_e).transpose();
  out.value = trace_norm(extend_apply(phi, psi_mat));
  return out;
}

namespace {

std::string free_ancilla_label(const SystemLayout& layout) {
  if (!layout.has("E")) return "E";
  for (int i = 0;; ++i) {
    std::string candidate = "E" + std::to_string(i);
    if (!layout.has(candidate)) return candidate;
  }
}

PureState witness_state(const HermitianPreservingMap& phi, int d_e, const CVec& psi) {
  SystemLayout lay =
      SystemLayout::single(free_ancilla_label(phi.in_layout), d_e).tensor(phi.in_layout);
  return PureState(lay, psi);
}

CVec entangled_start(int d) {
  CVec v = CVec::Zero(static_cast<long>(d) * d);
  for (int i = 0; i < d; ++i) v(static_cast<long>(i) * d + i) = 1.0 / std::sqrt(double(d));
  return v;
}

} // namespace

DiamondResult diamond_lower_ascent(const HermitianPreservingMap& phi, int starts,
                                   std::uint64_t seed) {
  const int d_in = phi.d_in();
  const int d_e = d_in;
  const int n_starts = std::max(starts, 1) + 1; // provided starts plus the entangled one

  std::vector<CVec> inits(n_starts);
  inits[0] = entangled_start(d_in);
  for (int s = 1; s < n_starts; ++s) {
    std::mt19937_64 rng(parallel::derive_seed(seed, static_cast<std::uint64_t>(s)));
    inits[s] = random_unit_vector(d_e * d_in, rng);
  }

  std::vector<AscentOutcome> results(n_starts);
#pragma omp parallel for num_threads(parallel::thread_count()) schedule(dynamic) \
    if (parallel::enabled())
  for (int s = 0; s < n_starts; ++s) results[s] = ascend_witness(phi, d_e, inits[s]);

  int best = 0;
  for (int s = 1; s < n_starts; ++s)
    if (results[s].value > results[best].value) best = s;

  DiamondResult out;
  out.value = results[best].value;
  out.bound_kind = BoundKind::lower;
  out.witness = witness_state(phi, d_e, results[best].psi);
  out.iterations = results[best].iterations;
  out.converged = results[best].converged;
  return out;
}

MixedUnitaryForm::MixedUnitaryForm(std::vector<CMat> family, RVec p, RVec q)
    : unitaries(std::move(family)), weights_p(std::move(p)), weights_q(std::move(q)) {
  if (unitaries.empty()) throw std::invalid_argument("MixedUnitaryForm: empty family");
  const long d = unitaries[0].rows();
  const long n = static_cast<long>(unitaries.size());
  if (weights_p.size() != n || weights_q.size() != n)
    throw std::invalid_argument("MixedUnitaryForm: weight count mismatch");
  for (const auto& u : unitaries)
    if (u.rows() != d || u.cols() != d)
      throw std::invalid_argument("MixedUnitaryForm: mixed dimensions");
  for (long i = 0; i < n; ++i)
    for (long j = i; j < n; ++j) {
      Complex g = (unitaries[i].adjoint() * unitaries[j]).trace();
      Complex expected = (i == j) ? Complex(double(d), 0.0) : Complex(0.0, 0.0);
      if (std::abs(g - expected) > 1e-9)
        throw std::invalid_argument("MixedUnitaryForm: family is not orthogonal");
    }
  for (const RVec* w : {&weights_p, &weights_q}) {
    if (w->minCoeff() < -1e-12 || std::abs(w->sum() - 1.0) > 1e-12)
      throw std::invalid_argument("MixedUnitaryForm: weights are not a probability vector");
  }
}

DiamondResult diamond_closed_form_mixed_unitary(const MixedUnitaryForm& form) {
  DiamondResult out;
  out.value = (form.weights_p - form.weights_q).cwiseAbs().sum();
  out.bound_kind = BoundKind::closed_form;
  out.witness = maximally_entangled_state(static_cast<int>(form.unitaries[0].rows()));
  out.iterations = 0;
  out.converged = true;
  return out;
}

namespace {

/// Real orthonormal basis of Hermitian d×d matrices.
std::vector<CMat> hermitian_basis(int d) {
  std::vector<CMat> basis;
  basis.reserve(static_cast<std::size_t>(d) * d);
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    CMat b = CMat::Zero(d, d);
    b(i, i) = 1.0;
    basis.push_back(std::move(b));
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      CMat b = CMat::Zero(d, d);
      b(i, j) = r;
      b(j, i) = r;
      basis.push_back(b);
      b(i, j) = Complex(0, r);
      b(j, i) = Complex(0, -r);
      basis.push_back(b);
    }
  return basis;
}

/// Top eigenvector of the quadratic form X ↦ ⟨vec X, M vec X⟩ over unit-norm
/// Hermitian X (row-major vec, so column index of M is i·d+j for X_ij).
CMat top_hermitian_direction(const CMat& m, int d) {
  const auto basis = hermitian_basis(d);
  const int n = static_cast<int>(basis.size());

  auto vec_r = [d](const CMat& x) {
    CVec v(static_cast<long>(d) * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) v(static_cast<long>(i) * d + j) = x(i, j);
    return v;
  };

  std::vector<CVec> basis_vecs(n);
  for (int a = 0; a < n; ++a) basis_vecs[a] = vec_r(basis[a]);

  RMat q(n, n);
  for (int b = 0; b < n; ++b) {
    CVec img = m * basis_vecs[b];
    for (int a = 0; a < n; ++a) q(a, b) = basis_vecs[a].dot(img).real();
  }
  q = 0.5 * (q + q.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<RMat> es(q);
  RVec coeff = es.eigenvectors().col(n - 1);
  CMat x = CMat::Zero(d, d);
  for (int a = 0; a < n; ++a) x += coeff(a) * basis[a];
  x = hermitize(x);
  return x / x.norm(); // Frobenius normalization
}

} // namespace

DiamondResult diamond_reference(const HermitianPreservingMap& phi) {
  const int d = phi.d_in();
  if (d > limits::reference_max_dim)
    throw std::invalid_argument("diamond_reference: input dimension above the cap");

  std::vector<CMat> starts;
  starts.push_back(CMat::Identity(d, d) / std::sqrt(double(d)));
  std::mt19937_64 rng(0x9d2c5680u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < 8; ++s) {
    CMat g(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    CMat x = (s % 2 == 0) ? CMat(g * g.adjoint()) : hermitize(g);
    starts.push_back(x / x.norm());
  }

  DiamondResult out;
  out.bound_kind = BoundKind::reference;
  out.value = -1.0;
  bool any_converged = false;

  for (const CMat& x0 : starts) {
    CMat x = x0;
    double f_prev = -1.0, f = 0.0;
    bool converged = false;
    int used = 0;
    for (int it = 0; it < limits::ascent_max_iter; ++it) {
      CMat ext = extend_apply(phi, x);
      auto [val, w] = trace_norm_and_sign(ext);
      f = val;
      used = it + 1;
      if (f - f_prev < tol::ascent_gain) {
        converged = true;
        break;
      }
      f_prev = f;
      CMat m = adjoint_extend(phi, w, d);
      x = top_hermitian_direction(m, d);
    }
    if (f > out.value) {
      out.value = f;
      out.iterations = used;
      out.converged = converged;
      CVec psi(static_cast<long>(d) * d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) psi(static_cast<long>(i) * d + j) = x(i, j);
      out.witness = witness_state(phi, d, psi / psi.norm());
    }
    any_converged = any_converged || converged;
  }
  if (!any_converged)
    throw convergence_error("diamond_reference: no start met the stopping criterion");
  return out;
}

} // namespace causalmetrics
