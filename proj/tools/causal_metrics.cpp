// Command-line front end: compute signalling / causal-influence metrics for
// named gates, reproduce the closed-form table, run sweeps and verification
// suites, emit JSON/CSV reports.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "causalmetrics/kernels.hpp"
#include "causalmetrics/parallel.hpp"
#include "causalmetrics/metrics.hpp"
#include "causalmetrics/report.hpp"
#include "causalmetrics/verify.hpp"

using namespace causalmetrics;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitArgs = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitInvariant = 4;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << text;
}

UnitaryGate gate_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open gate file: " + path);
  ordered_json j = ordered_json::parse(in);
  const int da = j.at("dA").get<int>();
  const int db = j.at("dB").get<int>();
  const int da_out = j.value("dA_out", da);
  const int db_out = j.value("dB_out", db);
  const auto& rows = j.at("matrix");
  const long dim = static_cast<long>(rows.size());
  CMat m(dim, dim);
  for (long r = 0; r < dim; ++r) {
    const auto& row = rows.at(r);
    if (static_cast<long>(row.size()) != dim)
      throw std::invalid_argument("gate file: matrix is not square");
    for (long c = 0; c < dim; ++c)
      m(r, c) = Complex(row.at(c).at(0).get<double>(), row.at(c).at(1).get<double>());
  }
  return UnitaryGate(std::move(m), {da, db}, {da_out, db_out});
}

struct GateArgs {
  std::string gate = "swap";
  int da = 2, db = 2, n = 1;
  std::uint64_t seed = 1;
};

GateSpec resolve_spec(const GateArgs& a) {
  if (a.gate == "swap") return GateSpec::make_swap(a.da, a.db);
  if (a.gate == "cnot") return GateSpec::make_cnot_pow(a.n);
  if (a.gate == "product")
    return GateSpec::make_product(haar_random_unitary(a.da, parallel::derive_seed(a.seed, 1)),
                                  haar_random_unitary(a.db, parallel::derive_seed(a.seed, 2)));
  if (a.gate.rfind("file:", 0) == 0)
    return GateSpec::make_custom(gate_from_file(a.gate.substr(5)));
  throw std::invalid_argument("unknown gate '" + a.gate + "'");
}

MetricEstimate closed_estimate(const GateSpec& spec, Metric metric) {
  auto [sigma, ci] = closed_form_oracle(spec);
  MetricEstimate est;
  est.metric = metric;
  est.value = metric == Metric::sigma ? sigma : ci;
  est.bound_kind = BoundKind::closed_form;
  if (spec.kind == GateSpec::Kind::swap_gate || spec.kind == GateSpec::Kind::cnot_pow) {
    est.witness = witness_builder(spec, metric);
    if (metric == Metric::sigma) est.candidate_channel = canonical_channels(spec)[0];
  }
  return est;
}

int cmd_compute(const GateArgs& gate_args, const std::string& metric, const std::string& method,
                double tolerance, const std::string& out_path, const std::string& format) {
  GateSpec spec = resolve_spec(gate_args);
  UnitaryGate gate = spec.build();

  std::vector<Metric> metrics;
  if (metric == "sigma" || metric == "both") metrics.push_back(Metric::sigma);
  if (metric == "ci" || metric == "both") metrics.push_back(Metric::ci);
  if (metrics.empty()) throw std::invalid_argument("unknown metric '" + metric + "'");

  const bool closed_available =
      spec.kind == GateSpec::Kind::swap_gate || spec.kind == GateSpec::Kind::cnot_pow ||
      spec.kind == GateSpec::Kind::product;
  std::string resolved = method;
  if (method == "auto") resolved = closed_available ? "closed" : "estimate";
  if (resolved == "closed" && !closed_available)
    throw std::invalid_argument("closed-form method is unsupported for this gate");

  std::vector<ReportRecord> records;
  for (Metric m : metrics) {
    MetricEstimate est;
    if (resolved == "closed") {
      est = closed_estimate(spec, m);
    } else if (resolved == "estimate") {
      EstimateConfig cfg;
      cfg.seed = gate_args.seed;
      cfg.tolerance = tolerance;
      est = m == Metric::sigma ? sigma_estimate(gate, cfg) : ci_estimate(gate, cfg);
    } else {
      throw std::invalid_argument("unknown method '" + method + "'");
    }
    est.seed = gate_args.seed;
    est.tolerance = tolerance;
    records.push_back(ReportRecord::from_estimate(spec, gate, est, resolved));
  }

  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : records) {
      ordered_json j = to_json(r);
      validate_record_json(j);
      arr.push_back(std::move(j));
    }
    write_output(out_path, arr.dump(2) + "\n");
  } else if (format == "csv") {
    std::string text = csv_header() + "\n";
    for (const auto& r : records) text += csv_row(r) + "\n";
    write_output(out_path, text);
  } else {
    throw std::invalid_argument("unknown format '" + format + "'");
  }
  return kExitOk;
}

int cmd_table(int max_n, int max_d, std::uint64_t seed, const std::string& out_path) {
  if (max_d < 2 || max_d > 4)
    throw std::invalid_argument("table: --max-d must lie in [2,4] (estimator dimension cap)");
  if (max_n < 1 || max_n > 2)
    throw std::invalid_argument("table: --max-n must lie in [1,2] (estimator dimension cap)");

  std::vector<GateSpec> specs;
  specs.push_back(GateSpec::make_cnot_pow(1));
  specs.push_back(GateSpec::make_swap(2, 2));
  for (int d = 2; d <= max_d; ++d) specs.push_back(GateSpec::make_swap(d, d));
  for (int n = 1; n <= max_n; ++n) specs.push_back(GateSpec::make_cnot_pow(n));

  std::string text = "gate,n,dA,dB,metric,closed_form,estimate,gap\n";
  int row_index = 0;
  for (const auto& spec : specs) {
    UnitaryGate gate = spec.build();
    auto [sigma_closed, ci_closed] = closed_form_oracle(spec);
    EstimateConfig cfg;
    cfg.seed = parallel::derive_seed(seed, 10 + row_index++);
    double sigma_est = sigma_estimate(gate, cfg).value;
    double ci_est = ci_estimate(gate, cfg).value;

    auto row = [&](const char* metric, double closed, double est) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%s,%d,%d,%d,%s,%.12g,%.12g,%.3e\n", spec.name().c_str(),
                    spec.kind == GateSpec::Kind::cnot_pow ? spec.n : 1, gate.da(), gate.db(),
                    metric, closed, est, std::abs(closed - est));
      text += buf;
    };
    row("sigma", sigma_closed, sigma_est);
    row("ci", ci_closed, ci_est);
  }
  write_output(out_path, text);
  return kExitOk;
}

int cmd_sweep(const std::string& gate, int n_max, int da, int db, const std::string& out_path) {
  GateSpec spec = gate == "swap" ? GateSpec::make_swap(da, db)
                : gate == "cnot" ? GateSpec::make_cnot_pow(1)
                                 : throw std::invalid_argument("sweep: unknown gate '" + gate + "'");
  auto rows = asymptotic_sweep(spec, n_max);
  std::string text = "n,sigma,ci\n";
  for (const auto& r : rows) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g\n", r.n, r.sigma, r.ci);
    text += buf;
  }
  write_output(out_path, text);
  return kExitOk;
}

int cmd_verify(const std::string& suite, int samples, std::uint64_t seed) {
  auto results = run_suite(suite, samples, seed);
  bool all_pass = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << "  margin=" << r.margin << "  ("
              << r.detail << ")\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? kExitOk : kExitInvariant;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"signalling and causal-influence metrics for bipartite unitary channels"};
  app.require_subcommand(1);

  GateArgs gate_args;
  std::string metric = "both", method = "auto", out_path, format = "json";
  double tolerance = 1e-7;

  auto* compute = app.add_subcommand("compute", "compute metrics for one gate");
  compute->add_option("--gate", gate_args.gate, "swap | cnot | product | file:PATH");
  compute->add_option("--da", gate_args.da, "dimension of A");
  compute->add_option("--db", gate_args.db, "dimension of B");
  compute->add_option("--n", gate_args.n, "tensor power for cnot");
  compute->add_option("--metric", metric, "sigma | ci | both");
  compute->add_option("--method", method, "auto | closed | estimate");
  compute->add_option("--seed", gate_args.seed, "random seed");
  compute->add_option("--tol", tolerance, "estimator stall tolerance")
      ->check(CLI::Range(1e-12, 1e-1));
  compute->add_option("--out", out_path, "output path (stdout when empty)");
  compute->add_option("--format", format, "json | csv");

  int max_n = 2, max_d = 3, sweep_n = 8;
  std::uint64_t seed = 1;
  auto* table = app.add_subcommand("table", "closed forms vs estimates for the gate families");
  table->add_option("--max-n", max_n, "largest cnot tensor power");
  table->add_option("--max-d", max_d, "largest swap dimension");
  table->add_option("--seed", seed, "random seed");
  table->add_option("--out", out_path, "output path (stdout when empty)");

  std::string sweep_gate = "cnot";
  auto* sweep = app.add_subcommand("sweep", "closed-form tensor-power sweep");
  sweep->add_option("--gate", sweep_gate, "swap | cnot");
  sweep->add_option("--n", sweep_n, "largest tensor power");
  sweep->add_option("--da", gate_args.da, "swap dimension of A");
  sweep->add_option("--db", gate_args.db, "swap dimension of B");
  sweep->add_option("--out", out_path, "output path (stdout when empty)");

  std::string suite = "all";
  int samples = 25;
  auto* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("--suite", suite, "norms | bounds | monotonicity | dominance | appendixB | all");
  verify->add_option("--samples", samples, "sample count for randomized suites");
  verify->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    app.exit(e);
    return kExitArgs;
  }

  try {
    if (compute->parsed())
      return cmd_compute(gate_args, metric, method, tolerance, out_path, format);
    if (table->parsed()) return cmd_table(max_n, max_d, seed, out_path);
    if (sweep->parsed())
      return cmd_sweep(sweep_gate, sweep_n, gate_args.da, gate_args.db, out_path);
    if (verify->parsed()) return cmd_verify(suite, samples, seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitArgs;
  } catch (const estimate_convergence_error& e) {
    std::cerr << "convergence failure: " << e.what()
              << " (best value " << e.best_estimate.value << ")\n";
    return kExitConvergence;
  } catch (const convergence_error& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const invariant_error& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitArgs;
}
