#ifndef CAUSALMETRICS_CHANNEL_HPP
#define CAUSALMETRICS_CHANNEL_HPP

#include <vector>

#include "causalmetrics/common.hpp"
#include "causalmetrics/gates.hpp"
#include "causalmetrics/layout.hpp"
#include "causalmetrics/state.hpp"

namespace causalmetrics {

/// Completely positive trace-preserving map held in both Kraus and Choi form.
/// Choi ordering is out⊗in: J = Σ_ij Φ(|i⟩⟨j|) ⊗ |i⟩⟨j|.
class Channel {
 public:
  static Channel from_kraus(std::vector<CMat> kraus, SystemLayout in, SystemLayout out);
  static Channel from_choi(CMat choi, SystemLayout in, SystemLayout out);

  const SystemLayout& in_layout() const { return in_; }
  const SystemLayout& out_layout() const { return out_; }
  int d_in() const { return in_.total_dim(); }
  int d_out() const { return out_.total_dim(); }
  const std::vector<CMat>& kraus() const { return kraus_; }
  const CMat& choi() const { return choi_; }

  /// Σ_i K_i ρ K_i†; layout mismatch is an argument error.
  DensityMatrix apply(const DensityMatrix& rho) const;
  CMat apply_raw(const CMat& x) const;

 private:
  Channel() = default;
  SystemLayout in_, out_;
  std::vector<CMat> kraus_;
  CMat choi_;
};

/// Kraus operators of a PSD Choi matrix, truncating eigenvalues below the
/// rank cutoff.
std::vector<CMat> kraus_from_choi(const CMat& choi, int d_in, int d_out,
                                  double cutoff = tol::eig_cutoff);

Channel identity_channel(const SystemLayout& layout);
Channel unitary_channel(const CMat& u, SystemLayout in, SystemLayout out);
Channel unitary_channel(const UnitaryGate& g, SystemLayout in, SystemLayout out);

/// ρ ↦ Tr[ρ] I/d_out (input and output dimensions may differ).
Channel depolarizing_channel(const SystemLayout& in, const SystemLayout& out);

/// Computational-basis measurement ρ ↦ Σ_b |b⟩⟨b| ρ |b⟩⟨b|.
Channel measurement_channel(const SystemLayout& layout);

/// second ∘ first.
Channel compose(const Channel& second, const Channel& first);

/// Convex combination w·a + (1−w)·b through the Choi representation.
Channel mix(const Channel& a, const Channel& b, double w);

/// Haar-flavored random channel: Ginibre Kraus operators normalized to be
/// trace preserving.
Channel random_channel(const SystemLayout& in, const SystemLayout& out, int kraus_count,
                       std::uint64_t seed);

/// Nearest CPTP Choi in Frobenius distance, by Dykstra alternating
/// projections between the PSD cone and the trace-preserving affine set.
Channel project_to_cptp(const CMat& j, const SystemLayout& in, const SystemLayout& out);

} // namespace causalmetrics

#endif
