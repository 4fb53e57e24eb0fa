#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "causalmetrics/report.hpp"

using nlohmann::ordered_json;

namespace {

std::string binary() {
  const char* p = std::getenv("CAUSAL_METRICS_BIN");
  REQUIRE_MESSAGE(p != nullptr, "CAUSAL_METRICS_BIN must point at the CLI binary");
  return p;
}

int run(const std::string& args, const std::string& out_file = "") {
  std::string cmd = binary() + " " + args;
  if (!out_file.empty()) cmd += " > " + out_file + " 2>/dev/null";
  else cmd += " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ordered_json strip_wall_ms(ordered_json arr) {
  for (auto& rec : arr) rec["wall_ms"] = 0.0;
  return arr;
}

} // namespace

TEST_CASE("compute closed swap sigma") {
  REQUIRE(run("compute --gate swap --da 2 --db 2 --metric sigma --method closed",
              "/tmp/cm_swap.json") == 0);
  ordered_json arr = ordered_json::parse(slurp("/tmp/cm_swap.json"));
  REQUIRE(arr.size() == 1);
  causalmetrics::validate_record_json(arr[0]);
  CHECK(arr[0]["value"].get<double>() == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(arr[0]["bound_kind"] == "closed_form");
  CHECK(arr[0]["gate"] == "swap");
}

TEST_CASE("compute cnot both auto") {
  REQUIRE(run("compute --gate cnot --n 1 --metric both --method auto", "/tmp/cm_cnot.json") == 0);
  ordered_json arr = ordered_json::parse(slurp("/tmp/cm_cnot.json"));
  REQUIRE(arr.size() == 2);
  CHECK(arr[0]["metric"] == "sigma");
  CHECK(arr[0]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(arr[1]["metric"] == "ci");
  CHECK(arr[1]["value"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("compute product estimates vanish") {
  REQUIRE(run("compute --gate product --da 2 --db 2 --metric both --seed 7 --method estimate",
              "/tmp/cm_prod.json") == 0);
  ordered_json arr = ordered_json::parse(slurp("/tmp/cm_prod.json"));
  REQUIRE(arr.size() == 2);
  CHECK(arr[0]["value"].get<double>() <= 1e-6);
  CHECK(arr[1]["value"].get<double>() <= 1e-6);
}

TEST_CASE("determinism modulo wall_ms") {
  REQUIRE(run("compute --gate cnot --n 1 --metric sigma --method estimate --seed 11",
              "/tmp/cm_det1.json") == 0);
  REQUIRE(run("compute --gate cnot --n 1 --metric sigma --method estimate --seed 11",
              "/tmp/cm_det2.json") == 0);
  ordered_json a = strip_wall_ms(ordered_json::parse(slurp("/tmp/cm_det1.json")));
  ordered_json b = strip_wall_ms(ordered_json::parse(slurp("/tmp/cm_det2.json")));
  CHECK(a.dump() == b.dump());
}

TEST_CASE("records round trip and reject unknown fields") {
  REQUIRE(run("compute --gate swap --da 3 --db 2 --metric sigma --method closed",
              "/tmp/cm_rt.json") == 0);
  ordered_json arr = ordered_json::parse(slurp("/tmp/cm_rt.json"));
  causalmetrics::ReportRecord rec = causalmetrics::record_from_json(arr[0]);
  ordered_json again = causalmetrics::to_json(rec);
  CHECK(again.dump() == arr[0].dump());

  ordered_json corrupted = arr[0];
  corrupted["extra_field"] = 1;
  CHECK_THROWS_AS(causalmetrics::validate_record_json(corrupted), std::invalid_argument);
  ordered_json missing = arr[0];
  missing.erase("seed");
  CHECK_THROWS_AS(causalmetrics::validate_record_json(missing), std::invalid_argument);
}

TEST_CASE("csv output") {
  REQUIRE(run("compute --gate swap --da 2 --db 2 --metric both --method closed --format csv",
              "/tmp/cm_csv.txt") == 0);
  std::string text = slurp("/tmp/cm_csv.txt");
  CHECK(text.rfind("gate,n,dA,dB,metric,value,bound_kind,method,seed\n", 0) == 0);
  CHECK(text.find("swap,1,2,2,sigma,1.5,closed_form,closed,1") != std::string::npos);
}

TEST_CASE("exit code 2 on invalid arguments") {
  CHECK(run("compute --gate nosuch --metric sigma") == 2);
  CHECK(run("compute --gate swap --metric nosuch") == 2);
  CHECK(run("compute --gate file:/tmp/does_not_exist.json --metric sigma --method estimate") ==
        2);
  CHECK(run("sweep --gate swap --n 0") == 2);
  CHECK(run("nosuchcommand") == 2);
  CHECK(run("table --max-d 9") == 2);
}

TEST_CASE("custom gate file") {
  // the swap written out by hand
  ordered_json j;
  j["dA"] = 2;
  j["dB"] = 2;
  j["dA_out"] = 2;
  j["dB_out"] = 2;
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < 4; ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < 4; ++c) {
      int i = r / 2, jj = r % 2;
      double re = (c == jj * 2 + i) ? 1.0 : 0.0;
      row.push_back(ordered_json::array({re, 0.0}));
    }
    rows.push_back(row);
  }
  j["matrix"] = rows;
  std::ofstream("/tmp/cm_gate.json") << j.dump();

  REQUIRE(run("compute --gate file:/tmp/cm_gate.json --metric sigma --method estimate --seed 3",
              "/tmp/cm_file.json") == 0);
  ordered_json arr = ordered_json::parse(slurp("/tmp/cm_file.json"));
  CHECK(arr[0]["value"].get<double>() == doctest::Approx(1.5).epsilon(5e-3));

  // non-unitary matrix is an argument error
  j["matrix"][0][0] = ordered_json::array({2.0, 0.0});
  std::ofstream("/tmp/cm_gate_bad.json") << j.dump();
  CHECK(run("compute --gate file:/tmp/cm_gate_bad.json --metric sigma --method estimate") == 2);
}

TEST_CASE("sweep emits the closed-form columns") {
  REQUIRE(run("sweep --gate cnot --n 8", "/tmp/cm_sweep.csv") == 0);
  std::string text = slurp("/tmp/cm_sweep.csv");
  CHECK(text.rfind("n,sigma,ci\n", 0) == 0);
  CHECK(text.find("8,1.9921875,2") != std::string::npos);

  REQUIRE(run("sweep --gate swap --da 2 --db 2 --n 4", "/tmp/cm_sweep_swap.csv") == 0);
  std::string swap_text = slurp("/tmp/cm_sweep_swap.csv");
  CHECK(swap_text.find("1,1.5,2") != std::string::npos);
  CHECK(swap_text.find("4,1.9999694824") != std::string::npos);
}

TEST_CASE("verify appendixB suite passes") {
  CHECK(run("verify --suite appendixB --samples 30 --seed 7") == 0);
}

TEST_CASE("table closed vs estimated") {
  REQUIRE(run("table --max-d 2 --max-n 1 --seed 5", "/tmp/cm_table.csv") == 0);
  std::string text = slurp("/tmp/cm_table.csv");
  CHECK(text.rfind("gate,n,dA,dB,metric,closed_form,estimate,gap\n", 0) == 0);
  CHECK(text.find("cnot,1,2,2,sigma,1,") != std::string::npos);
  CHECK(text.find("cnot,1,2,2,ci,2,") != std::string::npos);
  CHECK(text.find("swap,1,2,2,sigma,1.5,") != std::string::npos);

  // every estimated value sits within 5e-3 of its closed form
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line); // header
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    auto last_comma = line.rfind(',');
    double gap = std::stod(line.substr(last_comma + 1));
    CHECK(gap <= 5e-3);
  }
}
