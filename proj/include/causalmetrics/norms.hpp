#ifndef CAUSALMETRICS_NORMS_HPP
#define CAUSALMETRICS_NORMS_HPP

#include <optional>
#include <vector>

#include "causalmetrics/channel.hpp"
#include "causalmetrics/common.hpp"
#include "causalmetrics/state.hpp"

namespace causalmetrics {

/// Sum of singular values (sum of |eigenvalues| for Hermitian input).
double trace_norm(const CMat& x);

/// For Hermitian x: (Σ|λ_i|, Σ sign(λ_i) v_i v_i†). The second entry is the
/// optimal Helstrom observable, ‖x‖₁ = Tr[W x].
std::pair<double, CMat> trace_norm_and_sign(const CMat& x);

/// Linear map whose Choi matrix is Hermitian, held as a difference of two
/// completely positive parts so extended applications stay cheap.
struct HermitianPreservingMap {
  SystemLayout in_layout, out_layout;
  CMat choi; // out⊗in
  std::vector<CMat> kraus_plus, kraus_minus;

  static HermitianPreservingMap from_choi(CMat choi, SystemLayout in, SystemLayout out);
  static HermitianPreservingMap from_kraus_difference(std::vector<CMat> plus,
                                                      std::vector<CMat> minus, SystemLayout in,
                                                      SystemLayout out);
  static HermitianPreservingMap from_channel(const Channel& c);
  static HermitianPreservingMap from_channel_difference(const Channel& a, const Channel& b);

  int d_in() const { return in_layout.total_dim(); }
  int d_out() const { return out_layout.total_dim(); }
  CMat apply(const CMat& x) const;
};

/// (I_E ⊗ Φ)(ψψ†) for ψ given by its coefficient matrix Ψ (d_E × d_in, row-major
/// unfolding of the composite index).
CMat extend_apply(const HermitianPreservingMap& phi, const CMat& psi_mat);

/// (I_E ⊗ Φ†)(W) for Hermitian W on E⊗out; result acts on E⊗in.
CMat adjoint_extend(const HermitianPreservingMap& phi, const CMat& w, int d_e);

enum class BoundKind { closed_form, lower, upper, reference, estimate };
const char* to_string(BoundKind k);

struct DiamondResult {
  double value = 0.0;
  BoundKind bound_kind = BoundKind::lower;
  std::optional<PureState> witness;
  int iterations = 0;
  bool converged = false;
};

/// One monotone ascent run over pure witnesses on E⊗in from a given start.
struct AscentOutcome {
  double value = 0.0;
  CVec psi;
  int iterations = 0;
  bool converged = false;
};
AscentOutcome ascend_witness(const HermitianPreservingMap& phi, int d_e, CVec psi0,
                             int max_iter = limits::ascent_max_iter,
                             double gain_tol = tol::ascent_gain);

/// Multistart lower bound on ‖Φ‖◇ = sup over pure ψ on E⊗in (d_E = d_in) of
/// ‖(I⊗Φ)(ψψ†)‖₁. The maximally entangled start is always included.
DiamondResult diamond_lower_ascent(const HermitianPreservingMap& phi, int starts,
                                   std::uint64_t seed);

/// Weights over a common orthogonal unitary family (Tr[U_i†U_j] = d·δ_ij).
struct MixedUnitaryForm {
  std::vector<CMat> unitaries;
  RVec weights_p, weights_q;

  MixedUnitaryForm(std::vector<CMat> family, RVec p, RVec q);
};

/// ‖Σ_i (p_i − q_i) U_i · U_i†‖◇ = Σ_i |p_i − q_i|, with the maximally
/// entangled witness. The normalization (no extra factor of two) is pinned by
/// the qubit identity-vs-depolarizing brute force, which gives 3/2.
DiamondResult diamond_closed_form_mixed_unitary(const MixedUnitaryForm& form);

/// Reference diamond value for small maps (input dimension ≤ 16): alternating
/// first-order iteration over the input-state parameter of
/// max_ρ ‖(I⊗√ρ) J (I⊗√ρ)‖₁, the Choi form of the extended-witness supremum.
DiamondResult diamond_reference(const HermitianPreservingMap& phi);

} // namespace causalmetrics

#endif
