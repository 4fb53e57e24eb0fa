#include "causalmetrics/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "causalmetrics/kernels.hpp"
#include "causalmetrics/metrics.hpp"
#include "causalmetrics/parallel.hpp"

namespace causalmetrics {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

PropertyResult make_result(const std::string& name, double margin, const std::string& detail) {
  return {name, margin >= 0.0, margin, detail};
}

std::vector<PropertyResult> norms_suite(int samples, std::uint64_t seed) {
  std::vector<PropertyResult> out;

  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    SystemLayout lay({{"A", 2 + (k % 2)}, {"B", 2 + ((k / 2) % 2)}});
    DensityMatrix rho = random_density_matrix(lay, parallel::derive_seed(seed, 10 + k));
    worst = std::max(worst, std::abs(trace_norm(rho.matrix) - 1.0));
  }
  out.push_back(make_result("trace_norm_of_states", 1e-10 - worst,
                            "max |‖ρ‖₁−1| = " + fmt(worst) + " over " +
                                std::to_string(samples) + " states"));

  double worst_ch = 0.0;
  for (int k = 0; k < 10; ++k) {
    SystemLayout q = SystemLayout::single("B", 2);
    Channel c = random_channel(q, q, 2 + (k % 3), parallel::derive_seed(seed, 40 + k));
    DiamondResult r = diamond_reference(HermitianPreservingMap::from_channel(c));
    worst_ch = std::max(worst_ch, std::abs(r.value - 1.0));
  }
  out.push_back(make_result("diamond_norm_of_channels", 1e-3 - worst_ch,
                            "max |‖C‖◇−1| = " + fmt(worst_ch) + " over 10 channels"));

  // ‖Φ₁⊗Φ₂‖◇ = ‖Φ₁‖◇·‖Φ₂‖◇ with Φ₁ = id−depolarizing (3/2) and
  // Φ₂ = id−measurement (1) on qubits.
  SystemLayout qa = SystemLayout::single("A", 2);
  SystemLayout qb = SystemLayout::single("B", 2);
  Channel id_a = identity_channel(qa), id_b = identity_channel(qb);
  Channel dep = depolarizing_channel(qa, qa), meas = measurement_channel(qb);
  HermitianPreservingMap f1 = HermitianPreservingMap::from_channel_difference(id_a, dep);
  HermitianPreservingMap f2 = HermitianPreservingMap::from_channel_difference(id_b, meas);
  std::vector<CMat> plus, minus;
  for (const auto& ka : f1.kraus_plus)
    for (const auto& kb : f2.kraus_plus) plus.push_back(kernels::kron(ka, kb));
  for (const auto& ka : f1.kraus_minus)
    for (const auto& kb : f2.kraus_minus) plus.push_back(kernels::kron(ka, kb));
  for (const auto& ka : f1.kraus_plus)
    for (const auto& kb : f2.kraus_minus) minus.push_back(kernels::kron(ka, kb));
  for (const auto& ka : f1.kraus_minus)
    for (const auto& kb : f2.kraus_plus) minus.push_back(kernels::kron(ka, kb));
  HermitianPreservingMap tensor_map = HermitianPreservingMap::from_kraus_difference(
      plus, minus, qa.tensor(qb), qa.tensor(qb));
  const double product = 1.5 * 1.0;
  double tensor_val = diamond_reference(tensor_map).value;
  out.push_back(make_result("diamond_multiplicativity", 2e-3 - std::abs(tensor_val - product),
                            "‖Φ₁⊗Φ₂‖◇ = " + fmt(tensor_val) + " vs " + fmt(product)));

  // Stability under tensoring with an identity qubit.
  SystemLayout pad = SystemLayout::single("P", 2);
  Channel id_pad = identity_channel(pad);
  std::vector<CMat> sp, sm;
  for (const auto& ka : f1.kraus_plus) sp.push_back(kernels::kron(ka, id_pad.kraus()[0]));
  for (const auto& ka : f1.kraus_minus) sm.push_back(kernels::kron(ka, id_pad.kraus()[0]));
  HermitianPreservingMap padded =
      HermitianPreservingMap::from_kraus_difference(sp, sm, qa.tensor(pad), qa.tensor(pad));
  double padded_val = diamond_reference(padded).value;
  out.push_back(make_result("diamond_identity_stability", 2e-3 - std::abs(padded_val - 1.5),
                            "‖Φ⊗I‖◇ = " + fmt(padded_val) + " vs 1.5"));
  return out;
}

struct PairEstimates {
  std::vector<double> sigma, ci;
};

PairEstimates haar_two_qubit_estimates(int samples, std::uint64_t seed) {
  PairEstimates p;
  p.sigma.resize(samples);
  p.ci.resize(samples);
#pragma omp parallel for num_threads(parallel::thread_count()) schedule(dynamic) \
    if (parallel::enabled())
  for (int k = 0; k < samples; ++k) {
    UnitaryGate u(haar_random_unitary(4, parallel::derive_seed(seed, 100 + k)), {2, 2}, {2, 2});
    EstimateConfig cfg;
    cfg.seed = parallel::derive_seed(seed, 200 + k);
    p.sigma[k] = sigma_estimate(u, cfg).value;
    p.ci[k] = ci_estimate(u, cfg).value;
  }
  return p;
}

std::vector<PropertyResult> bounds_suite(int samples, std::uint64_t seed) {
  std::vector<PropertyResult> out;
  PairEstimates p = haar_two_qubit_estimates(samples, seed);

  double margin_low = std::numeric_limits<double>::infinity();
  double margin_high = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    margin_low = std::min(margin_low, p.ci[k] + 5e-3 - p.sigma[k]);
    margin_high =
        std::min(margin_high, 2.0 * std::sqrt(2.0) * std::sqrt(p.sigma[k]) + 5e-3 - p.ci[k]);
  }
  out.push_back(make_result("bound_chain_lower", margin_low,
                            "min slack of Σ ≤ C + 5e-3 over " + std::to_string(samples)));
  out.push_back(make_result("bound_chain_upper", margin_high,
                            "min slack of C ≤ 2√2·√Σ + 5e-3 over " + std::to_string(samples)));

  // Discrete equivalence at zero on random product gates.
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    CMat ua = haar_random_unitary(2, parallel::derive_seed(seed, 300 + k));
    CMat ub = haar_random_unitary(2, parallel::derive_seed(seed, 350 + k));
    UnitaryGate u(kernels::kron(ua, ub), {2, 2}, {2, 2});
    EstimateConfig cfg;
    cfg.seed = parallel::derive_seed(seed, 400 + k);
    worst = std::max({worst, sigma_estimate(u, cfg).value, ci_estimate(u, cfg).value});
  }
  out.push_back(make_result("zero_equivalence_products", 1e-6 - worst,
                            "max metric over 10 product gates = " + fmt(worst)));
  return out;
}

std::vector<PropertyResult> dominance_suite(int samples, std::uint64_t seed) {
  PairEstimates p = haar_two_qubit_estimates(samples, seed);
  double margin = std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (double s : p.sigma) {
    margin = std::min(margin, 1.5 + 1e-3 - s);
    worst = std::max(worst, s);
  }
  return {make_result("swap_dominance", margin,
                      "max Σ over " + std::to_string(samples) + " gates = " + fmt(worst) +
                          " ≤ 1.5 + 1e-3")};
}

std::vector<PropertyResult> monotonicity_suite(std::uint64_t seed) {
  std::vector<PropertyResult> out;

  auto [s_swap2, c_swap2] = closed_form_oracle(GateSpec::make_swap(4, 4)); // S⊗S ≡ swap(4,4)
  auto [s_swap, c_swap] = closed_form_oracle(GateSpec::make_swap(2, 2));
  out.push_back(make_result("tensor_monotonicity_swap", s_swap2 - s_swap,
                            "Σ(S⊗S) = " + fmt(s_swap2) + " ≥ Σ(S) = " + fmt(s_swap)));

  auto [s_cnot2, c2] = closed_form_oracle(GateSpec::make_cnot_pow(2));
  auto [s_cnot, c1] = closed_form_oracle(GateSpec::make_cnot_pow(1));
  out.push_back(make_result("tensor_monotonicity_cnot", s_cnot2 - s_cnot,
                            "Σ(C⊗C) = " + fmt(s_cnot2) + " ≥ Σ(C) = " + fmt(s_cnot)));

  EstimateConfig cfg;
  cfg.seed = parallel::derive_seed(seed, 1);
  double est = sigma_estimate(cnot_tensor_gate(2), cfg).value;
  out.push_back(make_result("cnot2_estimator_recovery", 1e-2 - std::abs(est - s_cnot2),
                            "estimated Σ(C⊗C) = " + fmt(est) + " vs " + fmt(s_cnot2)));

  SequentialDemoReport demo = sequential_nonmonotonicity_demo(cfg);
  out.push_back(make_result("sequential_composition_increase",
                            demo.sigma_composed - (demo.composed_lower_bound - 5e-3),
                            "Σ((CNOT⊗I)∘(I⊗CNOT)) = " + fmt(demo.sigma_composed) +
                                " ≥ 1.5 − 5e-3 > 1"));
  out.push_back(make_result("sequential_composition_vanish",
                            1e-6 - std::max(demo.sigma_identity, demo.ci_identity),
                            "Σ(S∘S) = " + fmt(demo.sigma_identity) +
                                ", C(S∘S) = " + fmt(demo.ci_identity)));
  return out;
}

std::vector<PropertyResult> appendix_b_suite(int samples, std::uint64_t seed) {
  BlockSymmetrizationReport rep = block_symmetrization_check(1, samples, seed);
  std::vector<PropertyResult> out;
  out.push_back(make_result("block_projector_g_zero", 1e-3 - std::abs(rep.g_zero - 1.0),
                            "g(0) = " + fmt(rep.g_zero)));
  out.push_back(make_result("block_projector_min_at_zero", 1e-6 - rep.worst_violation,
                            "worst g(0) − g(N) = " + fmt(rep.worst_violation) + " over " +
                                std::to_string(rep.trials) + " samples"));
  out.push_back(make_result("block_projector_average",
                            (rep.max_average_residual <= 1e-12 && rep.averaged_stays_optimal)
                                ? 1e-12 - rep.max_average_residual
                                : -1.0,
                            "permutation average residual = " + fmt(rep.max_average_residual)));
  return out;
}

} // namespace

std::vector<PropertyResult> run_suite(const std::string& suite, int samples, std::uint64_t seed) {
  if (suite == "norms") return norms_suite(std::max(samples, 1), seed);
  if (suite == "bounds") return bounds_suite(std::max(samples, 1), seed);
  if (suite == "dominance") return dominance_suite(std::max(samples, 1), seed);
  if (suite == "monotonicity") return monotonicity_suite(seed);
  if (suite == "appendixB") return appendix_b_suite(std::max(samples, 1), seed);
  if (suite == "all") {
    std::vector<PropertyResult> all;
    for (const char* s : {"norms", "bounds", "monotonicity", "dominance", "appendixB"}) {
      auto part = run_suite(s, samples, seed);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw std::invalid_argument("run_suite: unknown suite '" + suite + "'");
}

} // namespace causalmetrics
