#ifndef CAUSALMETRICS_REPORT_HPP
#define CAUSALMETRICS_REPORT_HPP

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "causalmetrics/metrics.hpp"

namespace causalmetrics {

inline constexpr const char* kToolVersion = "0.1.0";

/// One (gate, metric) computation, ready for serialization. Doubles carry 12
/// significant digits so serialized records round-trip losslessly.
struct ReportRecord {
  std::string gate;
  int n = 1;
  int da = 2, db = 2, da_out = 2, db_out = 2;
  std::string metric;
  double value = 0.0;
  std::string bound_kind;
  std::string method;
  std::vector<std::pair<double, double>> witness;             // [re, im] amplitudes
  std::vector<std::vector<std::pair<double, double>>> channel_choi; // rows of [re, im]
  int iterations = 0;
  double tolerance = 0.0;
  double wall_ms = 0.0;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;

  static ReportRecord from_estimate(const GateSpec& spec, const UnitaryGate& gate,
                                    const MetricEstimate& est, const std::string& method);
};

/// Round to 12 significant digits (the serialization precision).
double round12(double v);

nlohmann::ordered_json to_json(const ReportRecord& r);
ReportRecord record_from_json(const nlohmann::ordered_json& j);

/// Rejects records with missing or unknown fields.
void validate_record_json(const nlohmann::ordered_json& j);

/// Fixed CSV header: gate,n,dA,dB,metric,value,bound_kind,method,seed.
std::string csv_header();
std::string csv_row(const ReportRecord& r);

} // namespace causalmetrics

#endif
