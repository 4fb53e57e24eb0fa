// Acceptance suite: prints one line per criterion and fails the process if
// any of them miss their stated tolerance or runtime budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "causalmetrics/kernels.hpp"
#include "causalmetrics/metrics.hpp"
#include "causalmetrics/norms.hpp"
#include "causalmetrics/parallel.hpp"

using namespace causalmetrics;

namespace {

int failures = 0;

class Timer {
 public:
  Timer() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

void report(int criterion, bool pass, const char* what, double seconds, double budget) {
  pass = pass && seconds < budget;
  if (!pass) ++failures;
  std::printf("criterion %2d: %s  %s  (%.1f s of %.0f s budget)\n", criterion,
              pass ? "PASS" : "FAIL", what, seconds, budget);
  std::fflush(stdout);
}

HermitianPreservingMap identity_minus_depolarizing() {
  SystemLayout q = SystemLayout::single("A", 2);
  return HermitianPreservingMap::from_channel_difference(identity_channel(q),
                                                         depolarizing_channel(q, q));
}

HermitianPreservingMap identity_minus_measurement() {
  SystemLayout q = SystemLayout::single("B", 2);
  return HermitianPreservingMap::from_channel_difference(identity_channel(q),
                                                         measurement_channel(q));
}

void criterion_1_closed_forms() {
  Timer t;
  bool ok = true;
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12; };

  auto [s_cnot, c_cnot] = closed_form_oracle(GateSpec::make_cnot_pow(1));
  ok = ok && close(s_cnot, 1.0) && close(c_cnot, 2.0);
  auto [s_swap, c_swap] = closed_form_oracle(GateSpec::make_swap(2, 2));
  ok = ok && close(s_swap, 1.5) && close(c_swap, 2.0);
  for (int d = 2; d <= 6; ++d) {
    auto [s, c] = closed_form_oracle(GateSpec::make_swap(d, d));
    ok = ok && close(s, 2.0 * (double(d) * d - 1.0) / (double(d) * d)) && close(c, 2.0);
  }
  for (int n = 1; n <= 8; ++n) {
    auto [s, c] = closed_form_oracle(GateSpec::make_cnot_pow(n));
    const double dn = std::ldexp(1.0, n);
    ok = ok && close(s, 2.0 * (dn - 1.0) / dn) && close(c, 2.0);
  }
  report(1, ok, "Table closed forms exact to 1e-12", t.seconds(), 1.0);
}

void criterion_2_estimator_recovery() {
  Timer t_swap;
  EstimateConfig cfg;
  cfg.seed = 2024;
  double sigma_swap = sigma_estimate(swap_gate(2, 2), cfg).value;
  double ci_swap = ci_estimate(swap_gate(2, 2), cfg).value;
  double swap_seconds = t_swap.seconds();

  Timer t_cnot;
  double sigma_cnot = sigma_estimate(cnot_tensor_gate(1), cfg).value;
  double ci_cnot = ci_estimate(cnot_tensor_gate(1), cfg).value;
  double cnot_seconds = t_cnot.seconds();

  bool ok = std::abs(sigma_swap - 1.5) <= 5e-3 && std::abs(sigma_cnot - 1.0) <= 5e-3 &&
            ci_swap >= 2.0 - 1e-6 && ci_cnot >= 2.0 - 1e-6;
  report(2, ok && swap_seconds < 60.0 && cnot_seconds < 60.0,
         "estimators recover SWAP and CNOT values", std::max(swap_seconds, cnot_seconds), 60.0);
}

void criterion_3_diamond_cross_validation() {
  Timer t;
  RVec p = RVec::Zero(4), q = RVec::Constant(4, 0.25);
  p(0) = 1.0;
  double dep_closed = diamond_closed_form_mixed_unitary(MixedUnitaryForm(pauli_basis(), p, q)).value;
  double dep_lower = diamond_lower_ascent(identity_minus_depolarizing(), 16, 3).value;
  double dep_ref = diamond_reference(identity_minus_depolarizing()).value;

  RVec p2 = RVec::Zero(2), q2 = RVec::Constant(2, 0.5);
  p2(0) = 1.0;
  std::vector<CMat> iz = {pauli_basis()[0], pauli_basis()[3]};
  double meas_closed = diamond_closed_form_mixed_unitary(MixedUnitaryForm(iz, p2, q2)).value;
  double meas_lower = diamond_lower_ascent(identity_minus_measurement(), 16, 3).value;
  double meas_ref = diamond_reference(identity_minus_measurement()).value;

  // Factor-of-two resolution: the closed form carries no extra factor of 2.
  // The brute-force value at the entangled witness is 3/2, which matches the
  // closed form directly and rules out the doubled reading (3).
  double brute =
      trace_norm(extend_apply(identity_minus_depolarizing(), CMat::Identity(2, 2) / std::sqrt(2.0)));
  bool normalization_ok =
      std::abs(dep_closed - brute) <= 1e-12 && std::abs(dep_closed - 1.5) <= 1e-12 &&
      std::abs(2.0 * dep_closed - brute) > 1.0; // the doubled reading disagrees with brute force

  bool ok = std::abs(dep_closed - 1.5) <= 1e-12 && std::abs(dep_lower - 1.5) <= 2e-3 &&
            std::abs(dep_ref - 1.5) <= 2e-3 && std::abs(meas_closed - 1.0) <= 1e-12 &&
            std::abs(meas_lower - 1.0) <= 2e-3 && std::abs(meas_ref - 1.0) <= 2e-3 &&
            normalization_ok;
  report(3, ok, "three diamond strategies agree on I−D (1.5) and I−M (1.0)", t.seconds(), 10.0);
}

struct HaarEstimates {
  std::vector<double> sigma, ci;
  double seconds = 0.0;
};

HaarEstimates haar_estimates() {
  Timer t;
  const int samples = 25;
  HaarEstimates h;
  h.sigma.resize(samples);
  h.ci.resize(samples);
#pragma omp parallel for num_threads(parallel::thread_count()) schedule(dynamic) \
    if (parallel::enabled())
  for (int k = 0; k < samples; ++k) {
    UnitaryGate u(haar_random_unitary(4, parallel::derive_seed(424242, k)), {2, 2}, {2, 2});
    EstimateConfig cfg;
    cfg.seed = parallel::derive_seed(171717, k);
    h.sigma[k] = sigma_estimate(u, cfg).value;
    h.ci[k] = ci_estimate(u, cfg).value;
  }
  h.seconds = t.seconds();
  return h;
}

void criterion_4_bound_chain(const HaarEstimates& h) {
  bool ok = true;
  for (std::size_t k = 0; k < h.sigma.size(); ++k) {
    ok = ok && h.sigma[k] <= h.ci[k] + 5e-3;
    ok = ok && h.ci[k] <= 2.0 * std::sqrt(2.0) * std::sqrt(h.sigma[k]) + 5e-3;
  }
  report(4, ok, "bound chain on 25 Haar-random two-qubit gates", h.seconds, 1800.0);
}

void criterion_5_swap_dominance(const HaarEstimates& h) {
  bool ok = true;
  for (double s : h.sigma) ok = ok && s <= 1.5 + 1e-3;
  report(5, ok, "swap dominance on the same 25 gates", h.seconds, 1800.0);
}

void criterion_6_tensor_monotonicity() {
  Timer t;
  auto [s_swap2, c_swap2] = closed_form_oracle(GateSpec::make_swap(4, 4));
  auto [s_cnot2, c_cnot2] = closed_form_oracle(GateSpec::make_cnot_pow(2));
  bool ok = s_swap2 == 1.875 && s_swap2 >= 1.5 && s_cnot2 == 1.5 && s_cnot2 >= 1.0;

  EstimateConfig cfg;
  cfg.seed = 606;
  double est = sigma_estimate(cnot_tensor_gate(2), cfg).value;
  ok = ok && std::abs(est - 1.5) <= 1e-2;
  report(6, ok, "tensor monotonicity and cnot^2 estimator recovery", t.seconds(), 300.0);
}

void criterion_7_sequential_demo() {
  Timer t;
  EstimateConfig cfg;
  cfg.seed = 707;
  SequentialDemoReport rep = sequential_nonmonotonicity_demo(cfg);
  bool ok = rep.sigma_composed >= 1.5 - 5e-3 && rep.composed_lower_bound > 1.0 &&
            rep.sigma_identity <= 1e-6 && rep.ci_identity <= 1e-6;
  report(7, ok, "sequential composition counterexamples", t.seconds(), 600.0);
}

void criterion_8_appendix_b() {
  Timer t;
  BlockSymmetrizationReport rep = block_symmetrization_check(1, 100, 808);
  bool ok = std::abs(rep.g_zero - 1.0) <= 1e-3 && rep.worst_violation <= 1e-6;
  report(8, ok, "block projector minimum at N = 0 (100 samples)", t.seconds(), 120.0);
}

void criterion_9_discrete_equivalence() {
  Timer t;
  bool ok = true;
  for (int k = 0; k < 10; ++k) {
    CMat ua = haar_random_unitary(2, parallel::derive_seed(909, 2 * k));
    CMat ub = haar_random_unitary(2, parallel::derive_seed(909, 2 * k + 1));
    UnitaryGate u(kernels::kron(ua, ub), {2, 2}, {2, 2});
    EstimateConfig cfg;
    cfg.seed = parallel::derive_seed(910, k);
    ok = ok && sigma_estimate(u, cfg).value <= 1e-6 && ci_estimate(u, cfg).value <= 1e-6;
  }
  report(9, ok, "both metrics vanish on 10 product gates", t.seconds(), 600.0);
}

void criterion_10_norm_suite() {
  Timer t;
  bool ok = true;
  for (int k = 0; k < 50; ++k) {
    SystemLayout lay({{"A", 2 + (k % 2)}, {"B", 2}});
    DensityMatrix rho = random_density_matrix(lay, parallel::derive_seed(1010, k));
    ok = ok && std::abs(trace_norm(rho.matrix) - 1.0) <= 1e-10;
  }
  SystemLayout q = SystemLayout::single("B", 2);
  for (int k = 0; k < 10; ++k) {
    Channel c = random_channel(q, q, 2 + (k % 3), parallel::derive_seed(1011, k));
    double v = diamond_reference(HermitianPreservingMap::from_channel(c)).value;
    ok = ok && std::abs(v - 1.0) <= 1e-3;
  }

  // multiplicativity: ‖(I−D)⊗(I−M)‖◇ = 1.5 · 1.0
  HermitianPreservingMap f1 = identity_minus_depolarizing();
  HermitianPreservingMap f2 = identity_minus_measurement();
  std::vector<CMat> plus, minus;
  for (const auto& ka : f1.kraus_plus)
    for (const auto& kb : f2.kraus_plus) plus.push_back(kernels::kron(ka, kb));
  for (const auto& ka : f1.kraus_minus)
    for (const auto& kb : f2.kraus_minus) plus.push_back(kernels::kron(ka, kb));
  for (const auto& ka : f1.kraus_plus)
    for (const auto& kb : f2.kraus_minus) minus.push_back(kernels::kron(ka, kb));
  for (const auto& ka : f1.kraus_minus)
    for (const auto& kb : f2.kraus_plus) minus.push_back(kernels::kron(ka, kb));
  SystemLayout pair = SystemLayout({{"A", 2}, {"B", 2}});
  HermitianPreservingMap tensor_map =
      HermitianPreservingMap::from_kraus_difference(plus, minus, pair, pair);
  ok = ok && std::abs(diamond_reference(tensor_map).value - 1.5) <= 2e-3;

  // identity stability: ‖(I−D)⊗I‖◇ = ‖I−D‖◇
  SystemLayout padded = SystemLayout({{"A", 2}, {"P", 2}});
  std::vector<CMat> sp, sm;
  for (const auto& ka : f1.kraus_plus) sp.push_back(kernels::kron(ka, CMat::Identity(2, 2)));
  for (const auto& ka : f1.kraus_minus) sm.push_back(kernels::kron(ka, CMat::Identity(2, 2)));
  HermitianPreservingMap padded_map =
      HermitianPreservingMap::from_kraus_difference(sp, sm, padded, padded);
  ok = ok && std::abs(diamond_reference(padded_map).value - 1.5) <= 2e-3;

  report(10, ok, "norm property suite", t.seconds(), 300.0);
}

} // namespace

int main() {
  criterion_1_closed_forms();
  criterion_2_estimator_recovery();
  criterion_3_diamond_cross_validation();
  HaarEstimates h = haar_estimates();
  criterion_4_bound_chain(h);
  criterion_5_swap_dominance(h);
  criterion_6_tensor_monotonicity();
  criterion_7_sequential_demo();
  criterion_8_appendix_b();
  criterion_9_discrete_equivalence();
  criterion_10_norm_suite();

  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
