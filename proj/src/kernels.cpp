#include "causalmetrics/kernels.hpp"

#include <numeric>
#include <stdexcept>

#include "causalmetrics/parallel.hpp"

namespace causalmetrics::kernels {

namespace {

int product(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<int>());
}

bool use_omp(long work_items) { return parallel::enabled() && work_items >= 4096; }

} // namespace

CMat kron_serial(const CMat& x, const CMat& y) {
  const long rx = x.rows(), cx = x.cols(), ry = y.rows(), cy = y.cols();
  CMat z(rx * ry, cx * cy);
  for (long i = 0; i < rx; ++i)
    for (long j = 0; j < cx; ++j) z.block(i * ry, j * cy, ry, cy) = x(i, j) * y;
  return z;
}

CMat kron_omp(const CMat& x, const CMat& y) {
  const long rx = x.rows(), cx = x.cols(), ry = y.rows(), cy = y.cols();
  CMat z(rx * ry, cx * cy);
#pragma omp parallel for num_threads(parallel::thread_count()) schedule(static)
  for (long i = 0; i < rx; ++i)
    for (long j = 0; j < cx; ++j) z.block(i * ry, j * cy, ry, cy) = x(i, j) * y;
  return z;
}

CMat kron(const CMat& x, const CMat& y) {
  return use_omp(x.size() * y.size()) ? kron_omp(x, y) : kron_serial(x, y);
}

namespace {

struct TraceIndexing {
  std::vector<long> keep_offsets;   // full-index contribution of each kept multi-index
  std::vector<long> trace_offsets;  // full-index contribution of each traced multi-index
  int keep_dim = 1;
  int trace_dim = 1;
};

TraceIndexing build_trace_indexing(const std::vector<int>& dims, const std::vector<int>& traced) {
  const int k = static_cast<int>(dims.size());
  std::vector<bool> is_traced(k, false);
  for (int t : traced) {
    if (t < 0 || t >= k) throw std::invalid_argument("partial_trace: factor position out of range");
    if (is_traced[t]) throw std::invalid_argument("partial_trace: repeated factor position");
    is_traced[t] = true;
  }
  std::vector<long> stride(k, 1);
  for (int i = k - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  std::vector<int> keep_pos, trace_pos;
  for (int i = 0; i < k; ++i) (is_traced[i] ? trace_pos : keep_pos).push_back(i);

  TraceIndexing ix;
  for (int p : keep_pos) ix.keep_dim *= dims[p];
  for (int p : trace_pos) ix.trace_dim *= dims[p];

  ix.keep_offsets.assign(ix.keep_dim, 0);
  for (int a = 0; a < ix.keep_dim; ++a) {
    int rem = a;
    for (int j = static_cast<int>(keep_pos.size()) - 1; j >= 0; --j) {
      int d = dims[keep_pos[j]];
      ix.keep_offsets[a] += static_cast<long>(rem % d) * stride[keep_pos[j]];
      rem /= d;
    }
  }
  ix.trace_offsets.assign(ix.trace_dim, 0);
  for (int b = 0; b < ix.trace_dim; ++b) {
    int rem = b;
    for (int j = static_cast<int>(trace_pos.size()) - 1; j >= 0; --j) {
      int d = dims[trace_pos[j]];
      ix.trace_offsets[b] += static_cast<long>(rem % d) * stride[trace_pos[j]];
      rem /= d;
    }
  }
  return ix;
}

template <bool Parallel>
CMat partial_trace_impl(const CMat& rho, const std::vector<int>& dims,
                        const std::vector<int>& traced) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("partial_trace: matrix not square");
  if (rho.rows() != product(dims))
    throw std::invalid_argument("partial_trace: dims do not match matrix size");
  const TraceIndexing ix = build_trace_indexing(dims, traced);
  CMat out = CMat::Zero(ix.keep_dim, ix.keep_dim);
#pragma omp parallel for num_threads(parallel::thread_count()) schedule(static) if (Parallel)
  for (int r = 0; r < ix.keep_dim; ++r)
    for (int c = 0; c < ix.keep_dim; ++c) {
      Complex acc = 0.0;
      for (int b = 0; b < ix.trace_dim; ++b)
        acc += rho(ix.keep_offsets[r] + ix.trace_offsets[b],
                   ix.keep_offsets[c] + ix.trace_offsets[b]);
      out(r, c) = acc;
    }
  return out;
}

} // namespace

CMat partial_trace_serial(const CMat& rho, const std::vector<int>& dims,
                          const std::vector<int>& traced) {
  return partial_trace_impl<false>(rho, dims, traced);
}

CMat partial_trace_omp(const CMat& rho, const std::vector<int>& dims,
                       const std::vector<int>& traced) {
  return partial_trace_impl<true>(rho, dims, traced);
}

CMat partial_trace(const CMat& rho, const std::vector<int>& dims,
                   const std::vector<int>& traced) {
  return use_omp(rho.size()) ? partial_trace_omp(rho, dims, traced)
                             : partial_trace_serial(rho, dims, traced);
}

std::vector<int> permutation_index_map(const std::vector<int>& dims,
                                       const std::vector<int>& perm) {
  const int k = static_cast<int>(dims.size());
  if (static_cast<int>(perm.size()) != k)
    throw std::invalid_argument("permutation: size mismatch");
  std::vector<bool> seen(k, false);
  for (int p : perm) {
    if (p < 0 || p >= k || seen[p]) throw std::invalid_argument("permutation: not a permutation");
    seen[p] = true;
  }
  std::vector<long> stride_old(k, 1);
  for (int i = k - 2; i >= 0; --i) stride_old[i] = stride_old[i + 1] * dims[i + 1];
  std::vector<long> stride_new(k, 1);
  for (int j = k - 2; j >= 0; --j) stride_new[j] = stride_new[j + 1] * dims[perm[j + 1]];

  const int total = product(dims);
  std::vector<int> map(total);
  std::vector<int> idx(k, 0);
  for (int old = 0; old < total; ++old) {
    long nw = 0;
    for (int j = 0; j < k; ++j) nw += idx[perm[j]] * stride_new[j];
    map[old] = static_cast<int>(nw);
    for (int t = k - 1; t >= 0; --t) {
      if (++idx[t] < dims[t]) break;
      idx[t] = 0;
    }
  }
  return map;
}

CMat permutation_matrix(const std::vector<int>& dims, const std::vector<int>& perm) {
  const auto map = permutation_index_map(dims, perm);
  const int n = static_cast<int>(map.size());
  CMat p = CMat::Zero(n, n);
  for (int old = 0; old < n; ++old) p(map[old], old) = 1.0;
  return p;
}

CVec permute_factors(const CVec& v, const std::vector<int>& dims, const std::vector<int>& perm) {
  const auto map = permutation_index_map(dims, perm);
  if (v.size() != static_cast<long>(map.size()))
    throw std::invalid_argument("permute_factors: vector size mismatch");
  CVec out(v.size());
  for (long i = 0; i < v.size(); ++i) out(map[i]) = v(i);
  return out;
}

namespace {

template <bool Parallel>
CMat permute_factors_impl(const CMat& m, const std::vector<int>& dims,
                          const std::vector<int>& perm) {
  const auto map = permutation_index_map(dims, perm);
  const long n = static_cast<long>(map.size());
  if (m.rows() != n || m.cols() != n)
    throw std::invalid_argument("permute_factors: matrix size mismatch");
  CMat out(n, n);
#pragma omp parallel for num_threads(parallel::thread_count()) schedule(static) if (Parallel)
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) out(map[r], map[c]) = m(r, c);
  return out;
}

} // namespace

CMat permute_factors_serial(const CMat& m, const std::vector<int>& dims,
                            const std::vector<int>& perm) {
  return permute_factors_impl<false>(m, dims, perm);
}

CMat permute_factors_omp(const CMat& m, const std::vector<int>& dims,
                         const std::vector<int>& perm) {
  return permute_factors_impl<true>(m, dims, perm);
}

CMat permute_factors(const CMat& m, const std::vector<int>& dims, const std::vector<int>& perm) {
  return use_omp(m.size()) ? permute_factors_omp(m, dims, perm)
                           : permute_factors_serial(m, dims, perm);
}

CMat apply_kraus_serial(const std::vector<CMat>& kraus, const CMat& rho) {
  if (kraus.empty()) throw std::invalid_argument("apply_kraus: empty operator list");
  CMat out = CMat::Zero(kraus[0].rows(), kraus[0].rows());
  for (const auto& k : kraus) out.noalias() += k * rho * k.adjoint();
  return out;
}

CMat apply_kraus_omp(const std::vector<CMat>& kraus, const CMat& rho) {
  if (kraus.empty()) throw std::invalid_argument("apply_kraus: empty operator list");
  const int n = static_cast<int>(kraus.size());
  std::vector<CMat> terms(n);
#pragma omp parallel for num_threads(parallel::thread_count()) schedule(static)
  for (int i = 0; i < n; ++i) terms[i] = kraus[i] * rho * kraus[i].adjoint();
  CMat out = CMat::Zero(kraus[0].rows(), kraus[0].rows());
  for (const auto& t : terms) out += t;  // fixed order keeps the sum deterministic
  return out;
}

CMat apply_kraus(const std::vector<CMat>& kraus, const CMat& rho) {
  const long work = static_cast<long>(kraus.size()) * rho.size();
  return use_omp(work) ? apply_kraus_omp(kraus, rho) : apply_kraus_serial(kraus, rho);
}

CMat choi_from_kraus(const std::vector<CMat>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("choi_from_kraus: empty operator list");
  const long d_out = kraus[0].rows(), d_in = kraus[0].cols();
  CMat v(d_out * d_in, static_cast<long>(kraus.size()));
  for (std::size_t k = 0; k < kraus.size(); ++k) {
    if (kraus[k].rows() != d_out || kraus[k].cols() != d_in)
      throw std::invalid_argument("choi_from_kraus: mixed operator shapes");
    for (long o = 0; o < d_out; ++o)
      for (long i = 0; i < d_in; ++i) v(o * d_in + i, k) = kraus[k](o, i);
  }
  return v * v.adjoint();
}

CMat apply_choi(const CMat& choi, const CMat& rho, int d_in, int d_out) {
  if (choi.rows() != static_cast<long>(d_in) * d_out)
    throw std::invalid_argument("apply_choi: dimension mismatch");
  CMat out = CMat::Zero(d_out, d_out);
  for (int o = 0; o < d_out; ++o)
    for (int op = 0; op < d_out; ++op) {
      Complex acc = 0.0;
      for (int i = 0; i < d_in; ++i)
        for (int ip = 0; ip < d_in; ++ip)
          acc += choi(static_cast<long>(o) * d_in + i, static_cast<long>(op) * d_in + ip) *
                 rho(i, ip);
      out(o, op) = acc;
    }
  return out;
}

} // namespace causalmetrics::kernels
