#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mmw/harness/config.hpp"
#include "mmw/harness/metrics.hpp"
#include "mmw/harness/report.hpp"
#include "mmw/harness/runner.hpp"
#include "mmw/harness/scenarios.hpp"

using namespace mmw;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    rows.push_back(f);
  }
  return rows;
}

std::map<std::string, std::string> read_summary(const fs::path& p) {
  std::map<std::string, std::string> kv;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mmw_harness_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("nearest-rank percentile") {
  CHECK(percentile({}, 0.5) == 0.0);
  CHECK(percentile({3, 1, 2}, 0.5) == 2);
  CHECK(percentile({1, 2, 3, 4}, 0.5) == 2);
  CHECK(percentile({1, 2, 3, 4}, 0.95) == 4);
  std::vector<double> v;
  for (int i = 1; i <= 100; ++i) v.push_back(i);
  CHECK(percentile(v, 0.95) == 95);
  CHECK(percentile(v, 0.01) == 1);
  CHECK(percentile(v, 1.0) == 100);
}

TEST_CASE("every scenario builds and survives a serialize/parse round trip") {
  for (const auto& name : scenario_names()) {
    CAPTURE(name);
    const ScenarioConfig cfg = build_scenario(name, {{"seed", "17"}});
    CHECK(cfg.seed == 17);
    const std::string text = serialize_config(cfg);
    const ScenarioConfig back = parse_config(text);
    CHECK(back == cfg);
    CHECK(serialize_config(back) == text);
  }
  CHECK_THROWS_AS(build_scenario("s9"), ConfigError);
}

TEST_CASE("overrides apply to one build only") {
  const ScenarioConfig base = build_scenario("s2");
  const ScenarioConfig a = build_scenario("s2", {{"rlc_buffer_bytes", "3000000"}, {"transport", "cubic"}});
  CHECK(a.ran.rlc_buffer_bytes == 3'000'000);
  CHECK(a.transport == TransportKind::Cubic);
  const ScenarioConfig again = build_scenario("s2");
  CHECK(again == base);
  CHECK(again.ran.rlc_buffer_bytes == 10'000'000);
}

TEST_CASE("config parsing: comments, lists, clear, and errors with line numbers") {
  const std::string text =
      "# comment\n"
      "seed = 9\n"
      "\n"
      "outage = 1 1.5   # trailing comment\n"
      "outage = 3 4\n"
      "tti = fixed\n";
  ScenarioConfig c = parse_config(text);
  CHECK(c.seed == 9);
  REQUIRE(c.forced_outages.size() == 2);
  CHECK(c.forced_outages[1].start == seconds(3.0));
  CHECK(c.ran.tti_mode == TtiMode::Fixed);
  apply_setting(c, "clear", "outage");
  CHECK(c.forced_outages.empty());

  auto message = [](const std::string& t) -> std::string {
    try {
      parse_config(t);
    } catch (const ConfigError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(message("seed = 1\nbogus = 2\n").find("line 2") != std::string::npos);
  CHECK(message("seed = 1\nbogus = 2\n").find("bogus") != std::string::npos);
  CHECK(message("rate_bps = fast\n").find("line 1") != std::string::npos);
  CHECK(message("just words\n").find("line 1") != std::string::npos);
  CHECK(message("seed = -1\n") != "");
  CHECK(message("transport = tcp\n") != "");
  CHECK(message("waypoint = 1 2\n") != "");
  CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("validation rejects inconsistent configs") {
  ScenarioConfig c = build_scenario("s1");
  c.ran.fixed_dl_slots = 8;
  CHECK_THROWS(c.validate());
  c = build_scenario("s1");
  c.duration = seconds(-1.0);
  CHECK_THROWS(c.validate());
  c = build_scenario("trace");
  c.trace_file = "does_not_exist.csv";
  CHECK_THROWS(run_scenario(c));
}

TEST_CASE("zero duration produces empty but well-formed output") {
  ScenarioConfig c = build_scenario("s1", {{"duration_s", "0"}, {"seed", "1"}});
  const RunResult r = run_scenario(c);
  CHECK(r.summary.windows == 0);
  CHECK(r.summary.ledger.sent_packets == 0);
  CHECK(r.summary.ledger.balanced());
  const fs::path out = scratch("zero");
  export_report(r, out);
  CHECK(slurp(out / "throughput.csv") == "t_s,throughput_bps,rlc_queue_bytes,cwnd_bytes,ssthresh_bytes\n");
}

TEST_CASE("runs are deterministic to the byte and the ledger balances") {
  const ScenarioConfig c = build_scenario("s1", {{"duration_s", "1.5"}, {"seed", "5"}, {"transport", "newreno"}});
  const RunResult a = run_scenario(c);
  const RunResult b = run_scenario(c);
  CHECK(a.summary.ledger.balanced());
  CHECK(a.summary.ledger.sent_packets > 0);
  CHECK(a.stream_consistent);
  CHECK(a.stream_digest == b.stream_digest);
  const fs::path da = scratch("det_a"), db = scratch("det_b");
  export_report(a, da);
  export_report(b, db);
  for (const char* f : {"throughput.csv", "latency.csv", "sinr.csv", "tcp.csv", "summary.txt"}) {
    CAPTURE(f);
    CHECK(slurp(da / f) == slurp(db / f));
  }
  const RunResult other = run_scenario(build_scenario("s1", {{"duration_s", "1.5"}, {"seed", "6"}, {"transport", "newreno"}}));
  const fs::path dc = scratch("det_c");
  export_report(other, dc);
  CHECK(slurp(dc / "sinr.csv") != slurp(da / "sinr.csv"));
}

TEST_CASE("summary statistics are reproducible from the CSV files") {
  const ScenarioConfig c = build_scenario("s1", {{"duration_s", "2"}, {"seed", "3"}, {"transport", "udp"}});
  const RunResult r = run_scenario(c);
  const fs::path out = scratch("recompute");
  export_report(r, out);
  const auto summary = read_summary(out / "summary.txt");

  const auto tput = read_csv(out / "throughput.csv");
  REQUIRE(tput.size() == 20);
  double sum = 0.0;
  for (std::size_t i = 0; i < tput.size(); ++i) {
    CHECK(std::stod(tput[i][0]) == doctest::Approx(0.1 * static_cast<double>(i)));
    sum += std::stod(tput[i][1]);
  }
  CHECK(sum / 20.0 == doctest::Approx(std::stod(summary.at("mean_throughput_bps"))).epsilon(1e-8));

  const auto lat = read_csv(out / "latency.csv");
  REQUIRE(lat.size() == std::stoull(summary.at("latency_samples")));
  std::vector<double> one_way, ran;
  for (const auto& row : lat) {
    one_way.push_back(std::stod(row[1]));
    ran.push_back(std::stod(row[2]));
    REQUIRE((row[3] == "LOS" || row[3] == "NLOS" || row[3] == "OUT"));
  }
  std::sort(one_way.begin(), one_way.end());
  std::sort(ran.begin(), ran.end());
  auto rank = [](const std::vector<double>& v, double p) {
    return v[static_cast<std::size_t>(std::ceil(p * static_cast<double>(v.size()))) - 1];
  };
  CHECK(rank(one_way, 0.95) == doctest::Approx(std::stod(summary.at("latency_p95_s"))).epsilon(1e-8));
  CHECK(rank(ran, 0.50) == doctest::Approx(std::stod(summary.at("ran_latency_p50_s"))).epsilon(1e-8));

  // Delivered bytes in the ledger equal the goodput integral.
  CHECK(static_cast<double>(r.summary.ledger.delivered_bytes) * 8.0 == doctest::Approx(sum * 0.1).epsilon(1e-9));
  CHECK(summary.at("ledger_balanced") == "true");

  const auto sinr = read_csv(out / "sinr.csv");
  CHECK(sinr.size() == 16'000);  // one row per 125 us slot
}

TEST_CASE("report refuses an unwritable destination") {
  const fs::path blocker = scratch("blocker");
  std::ofstream(blocker) << "file, not a directory";
  RunResult r;
  CHECK_THROWS_AS(export_report(r, blocker / "sub"), ReportError);
  fs::remove(blocker);
}
