#ifndef CAUSALMETRICS_KERNELS_HPP
#define CAUSALMETRICS_KERNELS_HPP

#include <vector>

#include "causalmetrics/common.hpp"

namespace causalmetrics::kernels {

// Dense tensor-algebra kernels. Each has a serial reference implementation
// and an OpenMP variant; the unsuffixed entry point dispatches on worker
// count and problem size. The serial forms are the ground truth the OpenMP
// forms are tested against.

/// Kronecker product; the left factor is the most significant index block.
CMat kron_serial(const CMat& x, const CMat& y);
CMat kron_omp(const CMat& x, const CMat& y);
CMat kron(const CMat& x, const CMat& y);

/// Partial trace of a square matrix over the factor positions in `traced`.
/// `dims` are the factor dimensions, leftmost most significant. Remaining
/// factors keep their relative order.
CMat partial_trace_serial(const CMat& rho, const std::vector<int>& dims,
                          const std::vector<int>& traced);
CMat partial_trace_omp(const CMat& rho, const std::vector<int>& dims,
                       const std::vector<int>& traced);
CMat partial_trace(const CMat& rho, const std::vector<int>& dims,
                   const std::vector<int>& traced);

/// Permutation unitary reordering tensor factors: new factor j is old factor
/// perm[j]. perm must be a permutation of 0..k-1.
CMat permutation_matrix(const std::vector<int>& dims, const std::vector<int>& perm);

/// Index map behind permutation_matrix: entry old_index -> new_index.
std::vector<int> permutation_index_map(const std::vector<int>& dims,
                                       const std::vector<int>& perm);

/// P v for the factor permutation (gather, no matmul).
CVec permute_factors(const CVec& v, const std::vector<int>& dims,
                     const std::vector<int>& perm);

/// P m P† for the factor permutation.
CMat permute_factors_serial(const CMat& m, const std::vector<int>& dims,
                            const std::vector<int>& perm);
CMat permute_factors_omp(const CMat& m, const std::vector<int>& dims,
                         const std::vector<int>& perm);
CMat permute_factors(const CMat& m, const std::vector<int>& dims,
                     const std::vector<int>& perm);

/// Σ_k K_k ρ K_k†.
CMat apply_kraus_serial(const std::vector<CMat>& kraus, const CMat& rho);
CMat apply_kraus_omp(const std::vector<CMat>& kraus, const CMat& rho);
CMat apply_kraus(const std::vector<CMat>& kraus, const CMat& rho);

/// Choi matrix Σ_k vec(K_k) vec(K_k)† in out⊗in ordering, with
/// vec(K)[(o,i)] = K(o,i).
CMat choi_from_kraus(const std::vector<CMat>& kraus);

/// Action of a map given by its Choi matrix (out⊗in): Φ(ρ) from
/// Φ(ρ)[o,o'] = Σ_{i,i'} J[(o,i),(o',i')] ρ[i,i'].
CMat apply_choi(const CMat& choi, const CMat& rho, int d_in, int d_out);

} // namespace causalmetrics::kernels

#endif
