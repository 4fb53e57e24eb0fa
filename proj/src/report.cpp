#include "causalmetrics/report.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

namespace causalmetrics {

using nlohmann::ordered_json;

double round12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

ReportRecord ReportRecord::from_estimate(const GateSpec& spec, const UnitaryGate& gate,
                                         const MetricEstimate& est, const std::string& method) {
  ReportRecord r;
  r.gate = spec.name();
  r.n = spec.kind == GateSpec::Kind::cnot_pow ? spec.n : 1;
  r.da = gate.da();
  r.db = gate.db();
  r.da_out = gate.da_out();
  r.db_out = gate.db_out();
  r.metric = to_string(est.metric);
  r.value = round12(est.value);
  r.bound_kind = to_string(est.bound_kind);
  r.method = method;
  if (est.witness) {
    r.witness.reserve(est.witness->amplitudes.size());
    for (long i = 0; i < est.witness->amplitudes.size(); ++i) {
      const Complex a = est.witness->amplitudes(i);
      r.witness.emplace_back(round12(a.real()), round12(a.imag()));
    }
  }
  if (est.candidate_channel) {
    const CMat& j = est.candidate_channel->choi();
    r.channel_choi.resize(j.rows());
    for (long row = 0; row < j.rows(); ++row) {
      r.channel_choi[row].reserve(j.cols());
      for (long col = 0; col < j.cols(); ++col)
        r.channel_choi[row].emplace_back(round12(j(row, col).real()),
                                         round12(j(row, col).imag()));
    }
  }
  r.iterations = est.iterations;
  r.tolerance = round12(est.tolerance);
  r.wall_ms = round12(est.wall_ms);
  r.seed = est.seed;
  return r;
}

namespace {

const std::set<std::string>& record_fields() {
  static const std::set<std::string> fields = {
      "gate",       "n",          "dA",         "dB",      "dA_out", "dB_out",
      "metric",     "value",      "bound_kind", "method",  "witness", "channel_choi",
      "iterations", "tolerance",  "wall_ms",    "seed",    "tool_version"};
  return fields;
}

ordered_json complex_list(const std::vector<std::pair<double, double>>& v) {
  ordered_json arr = ordered_json::array();
  for (const auto& [re, im] : v) arr.push_back(ordered_json::array({re, im}));
  return arr;
}

std::vector<std::pair<double, double>> complex_list_from(const ordered_json& arr) {
  std::vector<std::pair<double, double>> v;
  v.reserve(arr.size());
  for (const auto& e : arr) v.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  return v;
}

} // namespace

ordered_json to_json(const ReportRecord& r) {
  ordered_json j;
  j["gate"] = r.gate;
  j["n"] = r.n;
  j["dA"] = r.da;
  j["dB"] = r.db;
  j["dA_out"] = r.da_out;
  j["dB_out"] = r.db_out;
  j["metric"] = r.metric;
  j["value"] = r.value;
  j["bound_kind"] = r.bound_kind;
  j["method"] = r.method;
  j["witness"] = complex_list(r.witness);
  ordered_json choi = ordered_json::array();
  for (const auto& row : r.channel_choi) choi.push_back(complex_list(row));
  j["channel_choi"] = choi;
  j["iterations"] = r.iterations;
  j["tolerance"] = r.tolerance;
  j["wall_ms"] = r.wall_ms;
  j["seed"] = r.seed;
  j["tool_version"] = r.tool_version;
  return j;
}

void validate_record_json(const ordered_json& j) {
  if (!j.is_object()) throw std::invalid_argument("record: not a JSON object");
  const auto& fields = record_fields();
  for (const auto& [key, _] : j.items())
    if (!fields.count(key)) throw std::invalid_argument("record: unknown field '" + key + "'");
  for (const auto& field : fields)
    if (!j.contains(field)) throw std::invalid_argument("record: missing field '" + field + "'");
  const double value = j.at("value").get<double>();
  if (value < 0.0 || value > 2.0)
    throw std::invalid_argument("record: value outside [0,2]");
}

ReportRecord record_from_json(const ordered_json& j) {
  validate_record_json(j);
  ReportRecord r;
  r.gate = j.at("gate").get<std::string>();
  r.n = j.at("n").get<int>();
  r.da = j.at("dA").get<int>();
  r.db = j.at("dB").get<int>();
  r.da_out = j.at("dA_out").get<int>();
  r.db_out = j.at("dB_out").get<int>();
  r.metric = j.at("metric").get<std::string>();
  r.value = j.at("value").get<double>();
  r.bound_kind = j.at("bound_kind").get<std::string>();
  r.method = j.at("method").get<std::string>();
  r.witness = complex_list_from(j.at("witness"));
  for (const auto& row : j.at("channel_choi")) r.channel_choi.push_back(complex_list_from(row));
  r.iterations = j.at("iterations").get<int>();
  r.tolerance = j.at("tolerance").get<double>();
  r.wall_ms = j.at("wall_ms").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.tool_version = j.at("tool_version").get<std::string>();
  return r;
}

std::string csv_header() { return "gate,n,dA,dB,metric,value,bound_kind,method,seed"; }

std::string csv_row(const ReportRecord& r) {
  std::ostringstream os;
  char value[64];
  std::snprintf(value, sizeof(value), "%.12g", r.value);
  os << r.gate << ',' << r.n << ',' << r.da << ',' << r.db << ',' << r.metric << ',' << value
     << ',' << r.bound_kind << ',' << r.method << ',' << r.seed;
  return os.str();
}

} // namespace causalmetrics
