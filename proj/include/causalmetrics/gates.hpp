#ifndef CAUSALMETRICS_GATES_HPP
#define CAUSALMETRICS_GATES_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "causalmetrics/common.hpp"
#include "causalmetrics/state.hpp"

namespace causalmetrics {

/// Bipartite unitary with input split (d_A, d_B) and output split (d_A', d_B').
struct UnitaryGate {
  CMat matrix;
  std::pair<int, int> in_split;
  std::pair<int, int> out_split;

  UnitaryGate(CMat m, std::pair<int, int> in, std::pair<int, int> out);

  int dim() const { return static_cast<int>(matrix.rows()); }
  int da() const { return in_split.first; }
  int db() const { return in_split.second; }
  int da_out() const { return out_split.first; }
  int db_out() const { return out_split.second; }
};

/// Permutation unitary mapping basis index (i,j) to (j,i);
/// in split (dA,dB), out split (dB,dA).
UnitaryGate swap_gate(int da, int db);

/// C_X^⊗n with wire order (targets A_1..A_n, controls B_1..B_n):
/// |a⟩|b⟩ ↦ |a⊕b⟩|b⟩ bitwise.
UnitaryGate cnot_tensor_gate(int n);

/// Haar-distributed unitary via QR of a Ginibre matrix with phase correction.
CMat haar_random_unitary(int d, std::uint64_t seed);
CMat haar_random_unitary(int d, std::mt19937_64& rng);

/// (1/√d) Σ_i |i⟩|i⟩ on layout E⊗A with d_E = d_A = d.
PureState maximally_entangled_state(int d);

/// {I, X, Y, Z}.
std::vector<CMat> pauli_basis();

/// Heisenberg-Weyl family {X^a Z^b} of d² orthogonal unitaries including the
/// identity (a=b=0 first), Tr[U_i† U_j] = d δ_ij.
std::vector<CMat> weyl_basis(int d);

} // namespace causalmetrics

#endif
