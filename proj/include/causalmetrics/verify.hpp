#ifndef CAUSALMETRICS_VERIFY_HPP
#define CAUSALMETRICS_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace causalmetrics {

struct PropertyResult {
  std::string name;
  bool pass = false;
  double margin = 0.0; // slack to the threshold; negative means failed
  std::string detail;
};

/// Named property suites behind `verify`. Suites: norms, bounds,
/// monotonicity, dominance, appendixB, all.
std::vector<PropertyResult> run_suite(const std::string& suite, int samples, std::uint64_t seed);

} // namespace causalmetrics

#endif
