#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "causalmetrics/kernels.hpp"

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

double max_abs_diff(const CMat& a, const CMat& b) { return (a - b).cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("kron identity and basis cases") {
  CMat i2 = CMat::Identity(2, 2);
  CHECK(max_abs_diff(kernels::kron_serial(i2, i2), CMat::Identity(4, 4)) == 0.0);

  CMat e0 = CMat::Zero(2, 1), e1 = CMat::Zero(2, 1);
  e0(0, 0) = 1.0;
  e1(1, 0) = 1.0;
  CMat v = kernels::kron_serial(e0, e1);
  REQUIRE(v.rows() == 4);
  CHECK(v(1, 0) == Complex(1.0));
  CHECK(v.cwiseAbs().sum() == 1.0);
}

TEST_CASE("kron against quadruple-loop oracle") {
  CMat x = random_matrix(2, 2, 11), y = random_matrix(3, 3, 12);
  CMat z = kernels::kron_serial(x, y);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 3; ++l)
          CHECK(std::abs(z(3 * i + j, 3 * k + l) - x(i, k) * y(j, l)) < 1e-14);
}

TEST_CASE("kron omp matches serial") {
  CMat x = random_matrix(5, 3, 21), y = random_matrix(4, 6, 22);
  CHECK(max_abs_diff(kernels::kron_serial(x, y), kernels::kron_omp(x, y)) == 0.0);
}

TEST_CASE("partial trace against index-sum oracle") {
  // random 2⊗3 "state" (hermitian normalized) traced over either factor
  CMat g = random_matrix(6, 6, 31);
  CMat rho = g * g.adjoint();
  rho /= rho.trace().real();

  CMat traced_b = kernels::partial_trace_serial(rho, {2, 3}, {1});
  CMat oracle_b = CMat::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 3; ++j) oracle_b(i, k) += rho(3 * i + j, 3 * k + j);
  CHECK(max_abs_diff(traced_b, oracle_b) < 1e-12);

  CMat traced_a = kernels::partial_trace_serial(rho, {2, 3}, {0});
  CMat oracle_a = CMat::Zero(3, 3);
  for (int j = 0; j < 3; ++j)
    for (int l = 0; l < 3; ++l)
      for (int i = 0; i < 2; ++i) oracle_a(j, l) += rho(3 * i + j, 3 * i + l);
  CHECK(max_abs_diff(traced_a, oracle_a) < 1e-12);

  CHECK(std::abs(traced_a.trace().real() - 1.0) < 1e-12);
}

TEST_CASE("partial trace omp matches serial") {
  CMat g = random_matrix(12, 12, 41);
  CMat rho = g * g.adjoint();
  CMat a = kernels::partial_trace_serial(rho, {2, 3, 2}, {0, 2});
  CMat b = kernels::partial_trace_omp(rho, {2, 3, 2}, {0, 2});
  CHECK(max_abs_diff(a, b) == 0.0);
}

TEST_CASE("partial trace rejects bad positions") {
  CMat rho = CMat::Identity(4, 4);
  CHECK_THROWS_AS(kernels::partial_trace_serial(rho, {2, 2}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(kernels::partial_trace_serial(rho, {2, 2}, {0, 0}), std::invalid_argument);
}

TEST_CASE("factor permutation round trips") {
  std::vector<int> dims = {2, 3, 2};
  std::vector<int> perm = {2, 0, 1};
  CMat p = kernels::permutation_matrix(dims, perm);
  CHECK(max_abs_diff(p * p.adjoint(), CMat::Identity(12, 12)) == 0.0);

  CMat m = random_matrix(12, 12, 51);
  CMat via_matrix = p * m * p.adjoint();
  CMat via_gather = kernels::permute_factors_serial(m, dims, perm);
  CHECK(max_abs_diff(via_matrix, via_gather) < 1e-14);
  CHECK(max_abs_diff(via_gather, kernels::permute_factors_omp(m, dims, perm)) == 0.0);

  // kron(x, y) permuted with the swap of factors equals kron(y, x)
  CMat x = random_matrix(2, 2, 52), y = random_matrix(3, 3, 53);
  CMat swapped = kernels::permute_factors_serial(kernels::kron_serial(x, y), {2, 3}, {1, 0});
  CHECK(max_abs_diff(swapped, kernels::kron_serial(y, x)) < 1e-14);
}

TEST_CASE("apply_kraus omp matches serial") {
  std::vector<CMat> kraus;
  for (int k = 0; k < 5; ++k) kraus.push_back(random_matrix(6, 4, 60 + k));
  CMat rho = random_matrix(4, 4, 70);
  CHECK(max_abs_diff(kernels::apply_kraus_serial(kraus, rho),
                     kernels::apply_kraus_omp(kraus, rho)) < 1e-13);
}

TEST_CASE("choi of kraus matches choi action") {
  std::vector<CMat> kraus = {random_matrix(3, 2, 81), random_matrix(3, 2, 82)};
  CMat j = kernels::choi_from_kraus(kraus);
  CMat rho = random_matrix(2, 2, 83);
  CMat direct = kernels::apply_kraus_serial(kraus, rho);
  CMat via_choi = kernels::apply_choi(j, rho, 2, 3);
  CHECK(max_abs_diff(direct, via_choi) < 1e-12);
}
