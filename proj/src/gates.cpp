#include "causalmetrics/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace causalmetrics {

UnitaryGate::UnitaryGate(CMat m, std::pair<int, int> in, std::pair<int, int> out)
    : matrix(std::move(m)), in_split(in), out_split(out) {
  const long d = matrix.rows();
  if (matrix.cols() != d) throw std::invalid_argument("UnitaryGate: matrix not square");
  if (static_cast<long>(in.first) * in.second != d ||
      static_cast<long>(out.first) * out.second != d)
    throw std::invalid_argument("UnitaryGate: splits do not match matrix dimension");
  if (!is_unitary(matrix, tol::unitary)) throw invariant_error("UnitaryGate: matrix not unitary");
}

UnitaryGate swap_gate(int da, int db) {
  if (da < 1 || db < 1) throw std::invalid_argument("swap_gate: dimensions must be >= 1");
  const int d = da * db;
  CMat s = CMat::Zero(d, d);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) s(j * da + i, i * db + j) = 1.0;
  return UnitaryGate(std::move(s), {da, db}, {db, da});
}

UnitaryGate cnot_tensor_gate(int n) {
  if (n < 1) throw std::invalid_argument("cnot_tensor_gate: n must be >= 1");
  if (n > 13) throw std::invalid_argument("cnot_tensor_gate: n too large for dense storage");
  const int dn = 1 << n;
  const int d = dn * dn;
  CMat u = CMat::Zero(d, d);
  for (int a = 0; a < dn; ++a)
    for (int b = 0; b < dn; ++b) u(((a ^ b) << n) | b, (a << n) | b) = 1.0;
  return UnitaryGate(std::move(u), {dn, dn}, {dn, dn});
}

CMat haar_random_unitary(int d, std::mt19937_64& rng) {
  if (d < 1) throw std::invalid_argument("haar_random_unitary: d must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fixing the phases of R's diagonal makes the distribution Haar.
  for (int j = 0; j < d; ++j) {
    Complex ph = r(j, j) / std::abs(r(j, j));
    q.col(j) *= ph;
  }
  return q;
}

CMat haar_random_unitary(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return haar_random_unitary(d, rng);
}

PureState maximally_entangled_state(int d) {
  if (d < 1) throw std::invalid_argument("maximally_entangled_state: d must be >= 1");
  CVec v = CVec::Zero(static_cast<long>(d) * d);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) v(static_cast<long>(i) * d + i) = a;
  return PureState(SystemLayout({{"E", d}, {"A", d}}), std::move(v));
}

std::vector<CMat> pauli_basis() {
  CMat id = CMat::Identity(2, 2);
  CMat x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  return {id, x, y, z};
}

std::vector<CMat> weyl_basis(int d) {
  if (d < 1) throw std::invalid_argument("weyl_basis: d must be >= 1");
  CMat shift = CMat::Zero(d, d);
  for (int i = 0; i < d; ++i) shift((i + 1) % d, i) = 1.0;
  CMat clock = CMat::Zero(d, d);
  const double theta = 2.0 * std::numbers::pi / d;
  for (int i = 0; i < d; ++i) clock(i, i) = std::polar(1.0, theta * i);
  std::vector<CMat> fam;
  fam.reserve(static_cast<std::size_t>(d) * d);
  CMat xa = CMat::Identity(d, d);
  for (int a = 0; a < d; ++a) {
    CMat u = xa;
    for (int b = 0; b < d; ++b) {
      fam.push_back(u);
      u = u * clock;
    }
    xa = shift * xa;
  }
  return fam;
}

} // namespace causalmetrics
