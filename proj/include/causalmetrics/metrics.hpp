#ifndef CAUSALMETRICS_METRICS_HPP
#define CAUSALMETRICS_METRICS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "causalmetrics/channel.hpp"
#include "causalmetrics/norms.hpp"

namespace causalmetrics {

/// Recognized interaction gates plus an escape hatch for arbitrary unitaries.
struct GateSpec {
  enum class Kind { swap_gate, cnot_pow, product, custom };

  Kind kind = Kind::swap_gate;
  int da = 2, db = 2; // swap_gate
  int n = 1;          // cnot_pow
  CMat u_a, u_b;      // product factors (A and B side)
  std::optional<UnitaryGate> gate;

  static GateSpec make_swap(int da, int db);
  static GateSpec make_cnot_pow(int n);
  static GateSpec make_product(CMat u_a, CMat u_b);
  static GateSpec make_custom(UnitaryGate g);

  UnitaryGate build() const;
  std::string name() const;
};

enum class Metric { sigma, ci };
const char* to_string(Metric m);

/// A signalling or causal-influence value with its provenance.
struct MetricEstimate {
  Metric metric = Metric::sigma;
  double value = 0.0;
  BoundKind bound_kind = BoundKind::estimate;
  std::optional<PureState> witness;
  std::optional<Channel> candidate_channel;
  int iterations = 0;
  double wall_ms = 0.0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
};

enum class Strategy { automatic, closed_form, ascent, reference };

/// Convergence failure that still carries the best estimate found.
class estimate_convergence_error : public convergence_error {
 public:
  estimate_convergence_error(const std::string& what, MetricEstimate best)
      : convergence_error(what), best_estimate(std::move(best)) {}
  MetricEstimate best_estimate;
};

struct EstimateConfig {
  std::uint64_t seed = 1;
  double tolerance = tol::seesaw_stall; // outer stall threshold
  int outer_rounds = limits::seesaw_max_rounds;
  int inner_starts = 16;
  int pool_size = 8;
  double step0 = 0.1;
};

/// The reduced evolution ρ_AB ↦ Tr_A'[U ρ U†] seen by Bob's output. CPTP.
HermitianPreservingMap marginal_output_map(const UnitaryGate& u);

/// The intervention probe T(u) on wire order (A, A', B'): undo u, swap the
/// fresh A against the recovered one, redo u. Unitary, hence CPTP.
Channel causal_shift_channel(const UnitaryGate& u);
HermitianPreservingMap causal_shift_map(const UnitaryGate& u);

/// Warm-start channels induced by the gate itself.
Channel induced_marginal_channel(const UnitaryGate& u);  // ρ_B ↦ Tr_A'[U(I/d_A ⊗ ρ)U†]
Channel induced_localized_channel(const UnitaryGate& u); // X_AA' ↦ Tr_B'[T(u)(X ⊗ I/d_B')]

/// Matches u against the gate library (swap / cnot_pow); nullopt otherwise.
std::optional<GateSpec> recognize_gate(const UnitaryGate& u);

/// Diamond distance between the reduced evolution of u and Tr_A ⊗ c, for a
/// fixed candidate c: B → B'. Equals the signalling when c is optimal.
MetricEstimate sigma_given_channel(const UnitaryGate& u, const Channel& c,
                                   Strategy strategy = Strategy::automatic,
                                   std::uint64_t seed = 1);

/// Diamond distance between T(u) and c ⊗ I_B', for a fixed candidate
/// c: AA' → AA'. Equals the causal influence when c is optimal.
MetricEstimate ci_given_channel(const UnitaryGate& u, const Channel& c,
                                Strategy strategy = Strategy::automatic, std::uint64_t seed = 1);

/// See-saw estimate of the signalling Σ(u): outer projected-subgradient
/// descent over the candidate Choi, inner multistart witness ascent.
MetricEstimate sigma_estimate(const UnitaryGate& u, const EstimateConfig& cfg = {});

/// See-saw estimate of the causal influence C(u). Recognized gates are
/// certified through their saturating witnesses instead.
MetricEstimate ci_estimate(const UnitaryGate& u, const EstimateConfig& cfg = {});

/// Optimal channels of the recognized gates: the output-replacing channel
/// ρ ↦ Tr[ρ] I/d for swap, the computational-basis measurement tensor power
/// for cnot_pow.
std::vector<Channel> canonical_channels(const GateSpec& spec);

/// Exact (sigma, ci) values for recognized gate families.
std::pair<double, double> closed_form_oracle(const GateSpec& spec);

/// Saturating witness states of the recognized gate families.
PureState witness_builder(const GateSpec& spec, Metric metric);

struct SweepRow {
  int n = 1;
  double sigma = 0.0;
  double ci = 0.0;
};

/// Closed-form (sigma, ci) for tensor powers 1..n_max; the sigma column is
/// checked to be non-decreasing.
std::vector<SweepRow> asymptotic_sweep(const GateSpec& spec, int n_max);

struct SequentialDemoReport {
  double sigma_composed = 0.0;    // Σ((CNOT⊗I)∘(I⊗CNOT))
  double sigma_factor_max = 1.0;  // max of the factors' Σ on padded wires
  double composed_lower_bound = 1.5;
  double sigma_identity = 0.0; // Σ(S∘S)
  double ci_identity = 0.0;    // C(S∘S)
  double min_factor = 1.5;     // min{Σ(S), Σ(S⁻¹)}
  bool composition_can_increase = false;
  bool composition_can_vanish = false;
};

/// Both strict inequalities of the sequential-composition counterexamples.
SequentialDemoReport sequential_nonmonotonicity_demo(const EstimateConfig& cfg = {});

struct BlockSymmetrizationReport {
  int n = 1;
  int trials = 0;
  double g_zero = 0.0;           // g(0) over the sampled state pool
  double min_g = 0.0;            // min over sampled N of g(N)
  double worst_violation = 0.0;  // max over N of g(0) − g(N)
  bool min_at_zero = false;
  double max_average_residual = 0.0; // ‖two-stage permutation average of N‖ (exact 0)
  bool averaged_stays_optimal = false;
};

/// Numerical probe of the block-diagonal minimization behind the cnot_pow
/// optimality argument: g(N) = max over sampled states of ‖ρ₁ + N‖₁ is
/// minimized at N = 0.
BlockSymmetrizationReport block_symmetrization_check(int n, int trials, std::uint64_t seed);

} // namespace causalmetrics

#endif
