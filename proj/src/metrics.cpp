#include "causalmetrics/metrics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "causalmetrics/kernels.hpp"
#include "causalmetrics/parallel.hpp"

namespace causalmetrics {

namespace {

using clock_type = std::chrono::steady_clock;

double elapsed_ms(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

SystemLayout in_layout_of(const UnitaryGate& u) {
  return SystemLayout({{"A", u.da()}, {"B", u.db()}});
}

SystemLayout sigma_channel_in(const UnitaryGate& u) { return SystemLayout::single("B", u.db()); }
SystemLayout sigma_channel_out(const UnitaryGate& u) {
  return SystemLayout::single("B'", u.db_out());
}

SystemLayout shift_layout(const UnitaryGate& u) {
  return SystemLayout({{"A", u.da()}, {"A'", u.da_out()}, {"B'", u.db_out()}});
}

SystemLayout ci_channel_layout(const UnitaryGate& u) {
  return SystemLayout({{"A", u.da()}, {"A'", u.da_out()}});
}

CMat unit_row(int index, int dim) {
  CMat r = CMat::Zero(1, dim);
  r(0, index) = 1.0;
  return r;
}

double clamp_metric(double value) {
  if (value < -1e-9 || value > 2.0 + 1e-9)
    throw invariant_error("metric value escaped the [0,2] range");
  return std::clamp(value, 0.0, 2.0);
}

} // namespace

GateSpec GateSpec::make_swap(int da, int db) {
  if (da < 1 || db < 1) throw std::invalid_argument("GateSpec: swap dimensions must be >= 1");
  GateSpec s;
  s.kind = Kind::swap_gate;
  s.da = da;
  s.db = db;
  return s;
}

GateSpec GateSpec::make_cnot_pow(int n) {
  if (n < 1) throw std::invalid_argument("GateSpec: cnot power must be >= 1");
  GateSpec s;
  s.kind = Kind::cnot_pow;
  s.n = n;
  return s;
}

GateSpec GateSpec::make_product(CMat u_a, CMat u_b) {
  if (!is_unitary(u_a) || !is_unitary(u_b))
    throw std::invalid_argument("GateSpec: product factors must be unitary");
  GateSpec s;
  s.kind = Kind::product;
  s.da = static_cast<int>(u_a.rows());
  s.db = static_cast<int>(u_b.rows());
  s.u_a = std::move(u_a);
  s.u_b = std::move(u_b);
  return s;
}

GateSpec GateSpec::make_custom(UnitaryGate g) {
  GateSpec s;
  s.kind = Kind::custom;
  s.da = g.da();
  s.db = g.db();
  s.gate = std::move(g);
  return s;
}

UnitaryGate GateSpec::build() const {
  switch (kind) {
    case Kind::swap_gate: return swap_gate(da, db);
    case Kind::cnot_pow: return cnot_tensor_gate(n);
    case Kind::product:
      return UnitaryGate(kernels::kron(u_a, u_b), {da, db}, {da, db});
    case Kind::custom: return *gate;
  }
  throw std::logic_error("GateSpec: unreachable");
}

std::string GateSpec::name() const {
  switch (kind) {
    case Kind::swap_gate: return "swap";
    case Kind::cnot_pow: return "cnot";
    case Kind::product: return "product";
    case Kind::custom: return "custom";
  }
  return "unknown";
}

const char* to_string(Metric m) { return m == Metric::sigma ? "sigma" : "ci"; }

HermitianPreservingMap marginal_output_map(const UnitaryGate& u) {
  std::vector<CMat> kraus;
  kraus.reserve(u.da_out());
  for (int a = 0; a < u.da_out(); ++a)
    kraus.push_back(u.matrix.block(static_cast<long>(a) * u.db_out(), 0, u.db_out(), u.dim()));
  return HermitianPreservingMap::from_kraus_difference(std::move(kraus), {}, in_layout_of(u),
                                                       sigma_channel_out(u));
}

Channel causal_shift_channel(const UnitaryGate& u) {
  const CMat id_a = CMat::Identity(u.da(), u.da());
  const CMat id_b = CMat::Identity(u.db(), u.db());
  const CMat swap_aa = swap_gate(u.da(), u.da()).matrix;
  CMat t = kernels::kron(id_a, u.matrix) * kernels::kron(swap_aa, id_b) *
           kernels::kron(id_a, u.matrix.adjoint());
  return unitary_channel(t, shift_layout(u), shift_layout(u));
}

HermitianPreservingMap causal_shift_map(const UnitaryGate& u) {
  return HermitianPreservingMap::from_channel(causal_shift_channel(u));
}

namespace {

HermitianPreservingMap sigma_difference_map(const UnitaryGate& u, const Channel& c) {
  if (c.d_in() != u.db() || c.d_out() != u.db_out())
    throw std::invalid_argument("sigma: candidate channel shape does not match the gate");
  HermitianPreservingMap plus = marginal_output_map(u);
  std::vector<CMat> minus;
  minus.reserve(static_cast<std::size_t>(u.da()) * c.kraus().size());
  for (int a = 0; a < u.da(); ++a)
    for (const auto& k : c.kraus()) minus.push_back(kernels::kron(unit_row(a, u.da()), k));
  return HermitianPreservingMap::from_kraus_difference(std::move(plus.kraus_plus), std::move(minus),
                                                       in_layout_of(u), sigma_channel_out(u));
}

HermitianPreservingMap ci_difference_map(const UnitaryGate& u, const Channel& c) {
  if (c.d_in() != u.da() * u.da_out() || c.d_out() != c.d_in())
    throw std::invalid_argument("ci: candidate channel shape does not match the gate");
  Channel shift = causal_shift_channel(u);
  std::vector<CMat> minus;
  minus.reserve(c.kraus().size());
  const CMat id_bp = CMat::Identity(u.db_out(), u.db_out());
  for (const auto& k : c.kraus()) minus.push_back(kernels::kron(k, id_bp));
  return HermitianPreservingMap::from_kraus_difference(shift.kraus(), std::move(minus),
                                                       shift_layout(u), shift_layout(u));
}

} // namespace

Channel induced_marginal_channel(const UnitaryGate& u) {
  // ρ_B ↦ Tr_A'[U(I/d_A ⊗ ρ)U†]: Kraus (⟨a|⊗I at the output) U (|a'⟩⊗I at
  // the input)/√d_A over the a, a' grid.
  std::vector<CMat> kraus;
  kraus.reserve(static_cast<std::size_t>(u.da_out()) * u.da());
  const double s = 1.0 / std::sqrt(static_cast<double>(u.da()));
  for (int a = 0; a < u.da_out(); ++a) {
    CMat rows = u.matrix.block(static_cast<long>(a) * u.db_out(), 0, u.db_out(), u.dim());
    for (int ap = 0; ap < u.da(); ++ap)
      kraus.push_back(s * rows.block(0, static_cast<long>(ap) * u.db(), u.db_out(), u.db()));
  }
  return Channel::from_kraus(std::move(kraus), sigma_channel_in(u), sigma_channel_out(u));
}

Channel induced_localized_channel(const UnitaryGate& u) {
  Channel shift = causal_shift_channel(u);
  const int d_aa = u.da() * u.da_out();
  const int d_bp = u.db_out();
  std::vector<CMat> kraus;
  kraus.reserve(shift.kraus().size() * d_bp * d_bp);
  const double s = 1.0 / std::sqrt(static_cast<double>(d_bp));
  // (I⊗⟨b'|) T (I⊗|b⟩)/√d_B' over the b, b' grid.
  for (const auto& t : shift.kraus())
    for (int bo = 0; bo < d_bp; ++bo)
      for (int bi = 0; bi < d_bp; ++bi) {
        CMat k(d_aa, d_aa);
        for (int r = 0; r < d_aa; ++r)
          for (int c = 0; c < d_aa; ++c)
            k(r, c) = t(static_cast<long>(r) * d_bp + bo, static_cast<long>(c) * d_bp + bi);
        kraus.push_back(s * k);
      }
  return Channel::from_kraus(std::move(kraus), ci_channel_layout(u), ci_channel_layout(u));
}

std::optional<GateSpec> recognize_gate(const UnitaryGate& u) {
  if (u.da_out() == u.db() && u.db_out() == u.da()) {
    UnitaryGate s = swap_gate(u.da(), u.db());
    if ((u.matrix - s.matrix).cwiseAbs().maxCoeff() < 1e-10)
      return GateSpec::make_swap(u.da(), u.db());
  }
  if (u.da() == u.db() && u.da() == u.da_out() && u.db() == u.db_out()) {
    const int d = u.da();
    if (d >= 2 && (d & (d - 1)) == 0) {
      const int n = std::countr_zero(static_cast<unsigned>(d));
      UnitaryGate c = cnot_tensor_gate(n);
      if ((u.matrix - c.matrix).cwiseAbs().maxCoeff() < 1e-10) return GateSpec::make_cnot_pow(n);
    }
  }
  return std::nullopt;
}

namespace {

/// ∂ Tr[W (I_G ⊗ C)(σ)] / ∂ J_C for W, σ on G⊗out_c and G⊗in_c.
CMat channel_choi_gradient(const CMat& w, const CMat& sigma, int d_g, int d_outc, int d_inc) {
  CMat wm(static_cast<long>(d_outc) * d_outc, static_cast<long>(d_g) * d_g);
  for (int g = 0; g < d_g; ++g)
    for (int gp = 0; gp < d_g; ++gp)
      for (int b = 0; b < d_outc; ++b)
        for (int bp = 0; bp < d_outc; ++bp)
          wm(static_cast<long>(b) * d_outc + bp, static_cast<long>(g) * d_g + gp) =
              w(static_cast<long>(g) * d_outc + b, static_cast<long>(gp) * d_outc + bp);

  CMat sm(static_cast<long>(d_g) * d_g, static_cast<long>(d_inc) * d_inc);
  for (int g = 0; g < d_g; ++g)
    for (int gp = 0; gp < d_g; ++gp)
      for (int b = 0; b < d_inc; ++b)
        for (int bp = 0; bp < d_inc; ++bp)
          sm(static_cast<long>(g) * d_g + gp, static_cast<long>(b) * d_inc + bp) =
              sigma(static_cast<long>(gp) * d_inc + b, static_cast<long>(g) * d_inc + bp);

  CMat prod = wm * sm;

  CMat grad(static_cast<long>(d_outc) * d_inc, static_cast<long>(d_outc) * d_inc);
  for (int beta = 0; beta < d_outc; ++beta)
    for (int betap = 0; betap < d_outc; ++betap)
      for (int b = 0; b < d_inc; ++b)
        for (int bp = 0; bp < d_inc; ++bp)
          grad(static_cast<long>(betap) * d_inc + b, static_cast<long>(beta) * d_inc + bp) =
              prod(static_cast<long>(beta) * d_outc + betap, static_cast<long>(b) * d_inc + bp);
  return hermitize(grad);
}

struct SaddleSpec {
  std::function<HermitianPreservingMap(const Channel&)> make_map;
  std::function<CMat(const CMat& w, const CVec& psi)> gradient;
  SystemLayout ch_in, ch_out;
  int d_e = 1; // ancilla dimension of the see-saw witnesses (= map input dim)
};

SaddleSpec sigma_saddle(const UnitaryGate& u) {
  SaddleSpec s;
  s.make_map = [u](const Channel& c) { return sigma_difference_map(u, c); };
  const int d_e = u.dim();
  s.gradient = [u, d_e](const CMat& w, const CVec& psi) {
    CMat rho = psi * psi.adjoint();
    CMat sigma = kernels::partial_trace(rho, {d_e, u.da(), u.db()}, {1});
    return channel_choi_gradient(w, sigma, d_e, u.db_out(), u.db());
  };
  s.ch_in = sigma_channel_in(u);
  s.ch_out = sigma_channel_out(u);
  s.d_e = d_e;
  return s;
}

SaddleSpec ci_saddle(const UnitaryGate& u) {
  SaddleSpec s;
  s.make_map = [u](const Channel& c) { return ci_difference_map(u, c); };
  const int d_e = u.da() * u.da_out() * u.db_out();
  const std::vector<int> dims = {d_e, u.da(), u.da_out(), u.db_out()};
  const std::vector<int> to_rear = {0, 3, 1, 2}; // (E,A,A',B') -> (E,B',A,A')
  const int d_aa = u.da() * u.da_out();
  s.gradient = [dims, to_rear, d_e, d_aa, u](const CMat& w, const CVec& psi) {
    CMat rho = psi * psi.adjoint();
    CMat sigma = kernels::permute_factors(rho, dims, to_rear);
    CMat wp = kernels::permute_factors(w, dims, to_rear);
    return channel_choi_gradient(wp, sigma, d_e * u.db_out(), d_aa, d_aa);
  };
  s.ch_in = ci_channel_layout(u);
  s.ch_out = ci_channel_layout(u);
  s.d_e = d_e;
  return s;
}

CVec entangled_witness(int d) {
  CVec v = CVec::Zero(static_cast<long>(d) * d);
  for (int i = 0; i < d; ++i) v(static_cast<long>(i) * d + i) = 1.0 / std::sqrt(double(d));
  return v;
}

CMat as_matrix(const CVec& psi, int d_in) {
  const int d_e = static_cast<int>(psi.size()) / d_in;
  return Eigen::Map<const CMat>(psi.data(), d_in, d_e).transpose();
}

double objective_at(const HermitianPreservingMap& phi, const CVec& psi) {
  return trace_norm(extend_apply(phi, as_matrix(psi, phi.d_in())));
}

struct InnerEval {
  double value = 0.0;
  CVec best_psi;
  std::vector<CVec> pool;
};

InnerEval inner_max(const HermitianPreservingMap& phi, int d_e,
                    const std::vector<CVec>& warm_starts, int n_random, std::uint64_t seed_base,
                    int pool_size, int max_iter = limits::ascent_max_iter) {
  const int d_in = phi.d_in();
  std::vector<CVec> starts;
  starts.push_back(entangled_witness(d_in));
  for (const auto& s : warm_starts) starts.push_back(s);
  for (int k = 0; k < n_random; ++k) {
    std::mt19937_64 rng(parallel::derive_seed(seed_base, static_cast<std::uint64_t>(k)));
    starts.push_back(random_unit_vector(d_e * d_in, rng));
  }

  const int n = static_cast<int>(starts.size());
  std::vector<AscentOutcome> outcomes(n);
#pragma omp parallel for num_threads(parallel::thread_count()) schedule(dynamic) \
    if (parallel::enabled())
  for (int i = 0; i < n; ++i) outcomes[i] = ascend_witness(phi, d_e, starts[i], max_iter);

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return outcomes[a].value > outcomes[b].value; });

  InnerEval ev;
  ev.value = outcomes[order[0]].value;
  ev.best_psi = outcomes[order[0]].psi;
  for (int i : order) {
    bool duplicate = false;
    for (const auto& kept : ev.pool)
      if (std::norm(kept.dot(outcomes[i].psi)) > 1.0 - 1e-6) {
        duplicate = true;
        break;
      }
    if (!duplicate) ev.pool.push_back(outcomes[i].psi);
    if (static_cast<int>(ev.pool.size()) >= pool_size) break;
  }
  return ev;
}

struct SeesawOutcome {
  double value = 0.0;
  std::optional<Channel> channel;
  CVec witness;
  int rounds = 0;
  bool converged = false;
  bool settled = false;
};

SeesawOutcome run_seesaw(const SaddleSpec& prob, std::vector<Channel> candidates,
                         const EstimateConfig& cfg) {
  if (candidates.empty()) throw std::invalid_argument("see-saw: no warm-start candidates");

  // Warm-start scores select the channel the descent starts from.
  std::vector<InnerEval> warm_evals(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i)
    warm_evals[i] = inner_max(prob.make_map(candidates[i]), prob.d_e, {}, cfg.inner_starts,
                              parallel::derive_seed(cfg.seed, 1000 + i), cfg.pool_size);
  std::size_t start_idx = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i)
    if (warm_evals[i].value < warm_evals[start_idx].value) start_idx = i;

  Channel current = candidates[start_idx];
  std::vector<CVec> pool = warm_evals[start_idx].pool;

  // The descent objective of record is the best (smallest) round value; it
  // stalls once the channel stops finding better neighborhoods.
  std::vector<double> history;
  double running_best = warm_evals[start_idx].value;
  int rounds_since_improvement = 0;
  bool stalled = false;
  int rounds = 0;
  for (int t = 1; t <= cfg.outer_rounds; ++t) {
    rounds = t;
    HermitianPreservingMap phi = prob.make_map(current);
    InnerEval ev = inner_max(phi, prob.d_e, pool, 1, parallel::derive_seed(cfg.seed, 2000 + t),
                             cfg.pool_size, 80);
    pool = ev.pool;
    history.push_back(ev.value);
    if (ev.value < running_best - cfg.tolerance) {
      running_best = ev.value;
      rounds_since_improvement = 0;
    } else if (++rounds_since_improvement >= limits::seesaw_stall_rounds) {
      stalled = true;
      break;
    }

    CMat x = extend_apply(phi, as_matrix(ev.best_psi, phi.d_in()));
    auto [f, w] = trace_norm_and_sign(x);
    CMat grad = prob.gradient(w, ev.best_psi);
    const double eta = cfg.step0 / t;
    current = project_to_cptp(current.choi() + eta * grad, prob.ch_in, prob.ch_out);
  }

  // Final scores: every warm start plus the descent output, each judged by a
  // fresh full inner maximization.
  candidates.push_back(current);
  double best_value = std::numeric_limits<double>::infinity();
  std::size_t best_idx = 0;
  CVec best_psi;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    InnerEval ev = inner_max(prob.make_map(candidates[i]), prob.d_e, pool, cfg.inner_starts,
                             parallel::derive_seed(cfg.seed, 3000 + i), cfg.pool_size);
    if (ev.value < best_value) {
      best_value = ev.value;
      best_idx = i;
      best_psi = ev.best_psi;
    }
  }

  SeesawOutcome out;
  out.value = best_value;
  out.channel = candidates[best_idx];
  out.witness = best_psi;
  out.rounds = rounds;
  out.converged = stalled;
  // Hitting the round cap while the objective is still moving is the real
  // non-convergence signal.
  out.settled = stalled || (!history.empty() && history.back() <= running_best + 1e-2);
  return out;
}

PureState seesaw_witness_state(const SaddleSpec& prob, const SystemLayout& map_in,
                               const CVec& psi) {
  return PureState(SystemLayout::single("E", prob.d_e).tensor(map_in), psi);
}

void check_estimator_dims(int d_e, int d_in) {
  if (static_cast<long>(d_e) * d_in > limits::max_state_dim)
    throw std::invalid_argument("estimator: witness dimension exceeds the configured cap");
}

} // namespace

MetricEstimate sigma_given_channel(const UnitaryGate& u, const Channel& c, Strategy strategy,
                                   std::uint64_t seed) {
  const auto t0 = clock_type::now();
  const auto recognized = recognize_gate(u);

  auto closed = [&]() -> std::optional<MetricEstimate> {
    if (!recognized) return std::nullopt;
    std::vector<CMat> family;
    if (recognized->kind == GateSpec::Kind::swap_gate) {
      if ((c.choi() - depolarizing_channel(sigma_channel_in(u), sigma_channel_out(u)).choi())
              .cwiseAbs()
              .maxCoeff() > 1e-8)
        return std::nullopt;
      family = weyl_basis(u.da());
    } else {
      if ((c.choi() - measurement_channel(sigma_channel_in(u)).choi()).cwiseAbs().maxCoeff() >
          1e-8)
        return std::nullopt;
      CMat z = pauli_basis()[3];
      family = {CMat::Identity(1, 1)};
      for (int k = 0; k < recognized->n; ++k) {
        std::vector<CMat> next;
        next.reserve(family.size() * 2);
        for (const auto& f : family) {
          next.push_back(kernels::kron(f, CMat::Identity(2, 2)));
          next.push_back(kernels::kron(f, z));
        }
        family = std::move(next);
      }
    }
    const long m = static_cast<long>(family.size());
    RVec p = RVec::Zero(m), q = RVec::Constant(m, 1.0 / double(m));
    p(0) = 1.0;
    DiamondResult r = diamond_closed_form_mixed_unitary(MixedUnitaryForm(family, p, q));
    MetricEstimate est;
    est.metric = Metric::sigma;
    est.value = clamp_metric(r.value);
    est.bound_kind = BoundKind::closed_form;
    est.witness = r.witness;
    est.candidate_channel = c;
    est.seed = seed;
    est.wall_ms = elapsed_ms(t0);
    return est;
  };

  if (strategy == Strategy::closed_form || strategy == Strategy::automatic) {
    if (auto est = closed()) return *est;
    if (strategy == Strategy::closed_form)
      throw std::invalid_argument("sigma_given_channel: no closed form for this pair");
  }

  HermitianPreservingMap phi = sigma_difference_map(u, c);
  MetricEstimate est;
  est.metric = Metric::sigma;
  est.candidate_channel = c;
  est.seed = seed;
  if (strategy == Strategy::reference) {
    DiamondResult r = diamond_reference(phi);
    est.value = clamp_metric(r.value);
    est.bound_kind = BoundKind::upper;
    est.witness = r.witness;
    est.iterations = r.iterations;
  } else {
    DiamondResult r = diamond_lower_ascent(phi, 16, seed);
    est.value = clamp_metric(r.value);
    est.bound_kind = BoundKind::estimate;
    est.witness = r.witness;
    est.iterations = r.iterations;
  }
  est.wall_ms = elapsed_ms(t0);
  return est;
}

MetricEstimate ci_given_channel(const UnitaryGate& u, const Channel& c, Strategy strategy,
                                std::uint64_t seed) {
  const auto t0 = clock_type::now();
  if (strategy == Strategy::closed_form)
    throw std::invalid_argument("ci_given_channel: no closed form is available");
  HermitianPreservingMap phi = ci_difference_map(u, c);
  MetricEstimate est;
  est.metric = Metric::ci;
  est.candidate_channel = c;
  est.seed = seed;
  if (strategy == Strategy::reference) {
    DiamondResult r = diamond_reference(phi);
    est.value = clamp_metric(r.value);
    est.bound_kind = BoundKind::upper;
    est.witness = r.witness;
    est.iterations = r.iterations;
  } else {
    DiamondResult r = diamond_lower_ascent(phi, 16, seed);
    est.value = clamp_metric(r.value);
    est.bound_kind = BoundKind::estimate;
    est.witness = r.witness;
    est.iterations = r.iterations;
  }
  est.wall_ms = elapsed_ms(t0);
  return est;
}

MetricEstimate sigma_estimate(const UnitaryGate& u, const EstimateConfig& cfg) {
  const auto t0 = clock_type::now();
  SaddleSpec prob = sigma_saddle(u);
  check_estimator_dims(prob.d_e, u.dim());

  std::vector<Channel> candidates;
  if (auto spec = recognize_gate(u)) {
    for (auto& c : canonical_channels(*spec)) candidates.push_back(std::move(c));
  }
  candidates.push_back(induced_marginal_channel(u));
  candidates.push_back(depolarizing_channel(sigma_channel_in(u), sigma_channel_out(u)));

  SeesawOutcome out = run_seesaw(prob, std::move(candidates), cfg);

  MetricEstimate est;
  est.metric = Metric::sigma;
  est.value = clamp_metric(out.value);
  est.bound_kind = BoundKind::estimate;
  est.witness = seesaw_witness_state(prob, in_layout_of(u), out.witness);
  est.candidate_channel = out.channel;
  est.iterations = out.rounds;
  est.seed = cfg.seed;
  est.tolerance = cfg.tolerance;
  est.wall_ms = elapsed_ms(t0);
  if (!out.settled)
    throw estimate_convergence_error("sigma_estimate: see-saw did not settle", est);
  return est;
}

MetricEstimate ci_estimate(const UnitaryGate& u, const EstimateConfig& cfg) {
  const auto t0 = clock_type::now();
  const auto recognized = recognize_gate(u);

  // The saturating witnesses settle the recognized gates outright: their
  // objective is 2 for every candidate channel, and 2 is the top of the range.
  if (recognized &&
      (recognized->kind == GateSpec::Kind::cnot_pow ||
       (recognized->kind == GateSpec::Kind::swap_gate && u.da() >= 2))) {
    PureState psi = witness_builder(*recognized, Metric::ci);
    Channel c = induced_localized_channel(u);
    HermitianPreservingMap phi = ci_difference_map(u, c);
    CMat psi_mat = as_matrix(psi.amplitudes, phi.d_in());
    MetricEstimate est;
    est.metric = Metric::ci;
    est.value = clamp_metric(trace_norm(extend_apply(phi, psi_mat)));
    est.bound_kind = BoundKind::lower;
    est.witness = psi;
    est.candidate_channel = c;
    est.seed = cfg.seed;
    est.tolerance = cfg.tolerance;
    est.wall_ms = elapsed_ms(t0);
    return est;
  }

  SaddleSpec prob = ci_saddle(u);
  check_estimator_dims(prob.d_e, u.da() * u.da_out() * u.db_out());

  std::vector<Channel> candidates;
  candidates.push_back(induced_localized_channel(u));
  candidates.push_back(depolarizing_channel(ci_channel_layout(u), ci_channel_layout(u)));
  if (u.da() == u.da_out())
    candidates.push_back(unitary_channel(swap_gate(u.da(), u.da()).matrix, ci_channel_layout(u),
                                         ci_channel_layout(u)));

  SeesawOutcome out = run_seesaw(prob, std::move(candidates), cfg);

  MetricEstimate est;
  est.metric = Metric::ci;
  est.value = clamp_metric(out.value);
  est.bound_kind = BoundKind::estimate;
  est.witness = seesaw_witness_state(prob, shift_layout(u), out.witness);
  est.candidate_channel = out.channel;
  est.iterations = out.rounds;
  est.seed = cfg.seed;
  est.tolerance = cfg.tolerance;
  est.wall_ms = elapsed_ms(t0);
  if (!out.settled) throw estimate_convergence_error("ci_estimate: see-saw did not settle", est);
  return est;
}

std::vector<Channel> canonical_channels(const GateSpec& spec) {
  UnitaryGate u = spec.build();
  switch (spec.kind) {
    case GateSpec::Kind::swap_gate:
      return {depolarizing_channel(sigma_channel_in(u), sigma_channel_out(u))};
    case GateSpec::Kind::cnot_pow: return {measurement_channel(sigma_channel_in(u))};
    default: throw std::invalid_argument("canonical_channels: unsupported gate spec");
  }
}

std::pair<double, double> closed_form_oracle(const GateSpec& spec) {
  switch (spec.kind) {
    case GateSpec::Kind::swap_gate: {
      if (spec.da == 1) return {0.0, 0.0}; // trivial A system: no interaction
      const double d2 = static_cast<double>(spec.da) * spec.da;
      return {2.0 * (d2 - 1.0) / d2, 2.0};
    }
    case GateSpec::Kind::cnot_pow: {
      const double dn = std::pow(2.0, spec.n);
      return {2.0 * (dn - 1.0) / dn, 2.0};
    }
    case GateSpec::Kind::product: return {0.0, 0.0};
    default: throw std::invalid_argument("closed_form_oracle: unsupported gate spec");
  }
}

PureState witness_builder(const GateSpec& spec, Metric metric) {
  if (metric == Metric::sigma) {
    switch (spec.kind) {
      case GateSpec::Kind::swap_gate: return maximally_entangled_state(spec.da);
      case GateSpec::Kind::cnot_pow: return maximally_entangled_state(1 << spec.n);
      default: throw std::invalid_argument("witness_builder: unsupported gate spec");
    }
  }
  if (spec.kind == GateSpec::Kind::swap_gate) {
    if (spec.da < 2)
      throw std::invalid_argument("witness_builder: swap ci witness needs d_A >= 2");
    SystemLayout lay({{"E", 2}, {"A", spec.da}, {"A'", spec.db}, {"B'", spec.da}});
    CVec v = CVec::Zero(lay.total_dim());
    // |0⟩_E |0⟩_A |0⟩_{A'} |1⟩_{B'}: the A and B' components are orthogonal.
    v(1) = 1.0;
    return PureState(lay, std::move(v));
  }
  if (spec.kind == GateSpec::Kind::cnot_pow) {
    const int n = spec.n;
    CVec zero(2), minus(2), plus(2);
    zero << 1, 0;
    minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    CVec copy = CVec::Ones(1);
    for (const CVec* f : {&zero, &minus, &plus, &plus}) {
      CVec next(copy.size() * 2);
      for (long i = 0; i < copy.size(); ++i)
        for (long j = 0; j < 2; ++j) next(i * 2 + j) = copy(i) * (*f)(j);
      copy = next;
    }
    CVec full = CVec::Ones(1);
    for (int k = 0; k < n; ++k) {
      CVec next(full.size() * copy.size());
      for (long i = 0; i < full.size(); ++i)
        for (long j = 0; j < copy.size(); ++j) next(i * copy.size() + j) = full(i) * copy(j);
      full = next;
    }
    // Regroup (E_1 A_1 A'_1 B'_1, ..., E_n A_n A'_n B'_n) -> (Ē, Ā, Ā', B̄').
    std::vector<int> dims(4 * n, 2), perm(4 * n);
    for (int g = 0; g < 4; ++g)
      for (int k = 0; k < n; ++k) perm[g * n + k] = 4 * k + g;
    full = kernels::permute_factors(full, dims, perm);
    const int dn = 1 << n;
    SystemLayout lay({{"E", dn}, {"A", dn}, {"A'", dn}, {"B'", dn}});
    return PureState(lay, std::move(full));
  }
  throw std::invalid_argument("witness_builder: unsupported gate spec");
}

std::vector<SweepRow> asymptotic_sweep(const GateSpec& spec, int n_max) {
  if (n_max < 1) throw std::invalid_argument("asymptotic_sweep: n_max must be >= 1");
  if (spec.kind != GateSpec::Kind::swap_gate && spec.kind != GateSpec::Kind::cnot_pow)
    throw std::invalid_argument("asymptotic_sweep: unsupported gate spec");
  std::vector<SweepRow> rows;
  rows.reserve(n_max);
  for (int n = 1; n <= n_max; ++n) {
    SweepRow row;
    row.n = n;
    if (spec.kind == GateSpec::Kind::swap_gate) {
      // S^⊗n is the swap with d_A replaced by d_A^n.
      if (spec.da == 1) {
        row.sigma = 0.0;
        row.ci = 0.0;
      } else {
        row.sigma = 2.0 - 2.0 / std::pow(static_cast<double>(spec.da), 2.0 * n);
        row.ci = 2.0;
      }
    } else {
      row.sigma = 2.0 - std::pow(2.0, 1.0 - n);
      row.ci = 2.0;
    }
    if (!rows.empty() && row.sigma < rows.back().sigma - 1e-15)
      throw invariant_error("asymptotic_sweep: sigma sequence decreased");
    rows.push_back(row);
  }
  return rows;
}

SequentialDemoReport sequential_nonmonotonicity_demo(const EstimateConfig& cfg) {
  SequentialDemoReport rep;

  // (CNOT⊗I)∘(I⊗CNOT) on wires (A1,B1,A2,B2), regrouped to (A1A2, B1B2).
  CMat cnot = cnot_tensor_gate(1).matrix;
  CMat composed = kernels::kron(cnot, CMat::Identity(4, 4)) *
                  kernels::kron(CMat::Identity(4, 4), cnot);
  composed = kernels::permute_factors(composed, {2, 2, 2, 2}, {0, 2, 1, 3});
  UnitaryGate grouped(composed, {4, 4}, {4, 4});
  rep.sigma_composed = sigma_estimate(grouped, cfg).value;
  rep.sigma_factor_max = closed_form_oracle(GateSpec::make_cnot_pow(1)).first;

  CMat ss = swap_gate(2, 2).matrix * swap_gate(2, 2).matrix;
  UnitaryGate identity_gate(ss, {2, 2}, {2, 2});
  rep.sigma_identity = sigma_estimate(identity_gate, cfg).value;
  rep.ci_identity = ci_estimate(identity_gate, cfg).value;
  rep.min_factor = closed_form_oracle(GateSpec::make_swap(2, 2)).first;

  rep.composition_can_increase =
      rep.sigma_composed >= rep.composed_lower_bound - 5e-3 &&
      rep.composed_lower_bound > rep.sigma_factor_max;
  rep.composition_can_vanish = rep.sigma_identity <= 1e-6 && rep.ci_identity <= 1e-6;
  return rep;
}

BlockSymmetrizationReport block_symmetrization_check(int n, int trials, std::uint64_t seed) {
  if (n != 1 && n != 2) throw std::invalid_argument("block_symmetrization_check: n must be 1 or 2");
  if (trials < 1) throw std::invalid_argument("block_symmetrization_check: trials must be >= 1");
  const int d = 1 << n;     // block count and block size (E ≅ B̄)
  const int total = d * d;

  // Sampled state pool, with the maximally entangled state pinned: it attains
  // the maximum of ‖ρ₁‖₁ over all states.
  std::vector<CMat> off_blocks;
  {
    CVec omega = CVec::Zero(total);
    for (int i = 0; i < d; ++i) omega(static_cast<long>(i) * d + i) = 1.0 / std::sqrt(double(d));
    off_blocks.push_back(omega * omega.adjoint());
  }
  for (int k = 0; k < 40; ++k) {
    std::mt19937_64 rng(parallel::derive_seed(seed, 500 + k));
    CVec psi = random_unit_vector(total, rng);
    off_blocks.push_back(psi * psi.adjoint());
  }
  auto strip_diag_blocks = [&](CMat& x) {
    for (int b = 0; b < d; ++b)
      x.block(static_cast<long>(b) * d, static_cast<long>(b) * d, d, d).setZero();
  };
  for (auto& x : off_blocks) strip_diag_blocks(x);

  auto g_of = [&](const CMat& noise) {
    double best = 0.0;
    for (const auto& r1 : off_blocks) best = std::max(best, trace_norm(r1 + noise));
    return best;
  };

  BlockSymmetrizationReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.g_zero = g_of(CMat::Zero(total, total));
  rep.min_g = std::numeric_limits<double>::infinity();
  rep.averaged_stays_optimal = true;

  std::mt19937_64 rng(parallel::derive_seed(seed, 77));
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double scales[3] = {0.05, 0.25, 1.0};
  for (int t = 0; t < trials; ++t) {
    CMat noise = CMat::Zero(total, total);
    for (int b = 0; b < d; ++b) {
      CMat blk(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) blk(i, j) = Complex(gauss(rng), gauss(rng));
      noise.block(static_cast<long>(b) * d, static_cast<long>(b) * d, d, d) = hermitize(blk);
    }
    noise -= (noise.trace().real() / total) * CMat::Identity(total, total);
    noise *= scales[t % 3] / std::max(noise.norm(), 1e-12);

    const double g = g_of(noise);
    rep.min_g = std::min(rep.min_g, g);
    rep.worst_violation = std::max(rep.worst_violation, rep.g_zero - g);

    // Two-stage permutation average: blocks flatten to (tr/d)·I, then the
    // block weights average to Tr(N)/total = 0.
    CMat stage1 = CMat::Zero(total, total);
    double mean_weight = 0.0;
    for (int b = 0; b < d; ++b) {
      const double w =
          noise.block(static_cast<long>(b) * d, static_cast<long>(b) * d, d, d).trace().real() / d;
      stage1.block(static_cast<long>(b) * d, static_cast<long>(b) * d, d, d) =
          w * CMat::Identity(d, d);
      mean_weight += w / d;
    }
    CMat stage2 = stage1 - mean_weight * CMat::Identity(total, total);
    rep.max_average_residual = std::max(rep.max_average_residual, stage2.cwiseAbs().maxCoeff());
    if (g_of(stage1) < rep.g_zero - 1e-6) rep.averaged_stays_optimal = false;
  }
  rep.min_at_zero = rep.worst_violation <= 1e-6;
  return rep;
}

} // namespace causalmetrics
