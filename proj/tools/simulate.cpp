// Batch runner: one scenario per invocation, results written as CSV.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mmw/harness/report.hpp"
#include "mmw/harness/runner.hpp"
#include "mmw/harness/scenarios.hpp"

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Packet-level mmWave end-to-end simulator"};
  app.option_defaults()->always_capture_default();

  std::string scenario;
  std::optional<std::string> transport, tti, trace_file, config_file;
  std::optional<double> rate, core_delay, speed, duration;
  std::optional<std::uint64_t> rlc_buffer;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::vector<std::string> sets;
  bool print_config = false;

  app.add_option("--scenario", scenario, "Scenario name")->required()->check(CLI::IsMember({"s1", "s2", "s3", "trace"}));
  app.add_option("--transport", transport, "newreno, cubic or udp")->check(CLI::IsMember({"newreno", "cubic", "udp"}));
  app.add_option("--rate", rate, "Source rate in bit/s (TCP: application write rate, 0 = bulk)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--rlc-buffer", rlc_buffer, "RLC buffer in bytes")->check(CLI::PositiveNumber);
  app.add_option("--tti", tti, "flexible or fixed")->check(CLI::IsMember({"flexible", "fixed"}));
  app.add_option("--core-delay", core_delay, "One-way core delay in seconds")->check(CLI::NonNegativeNumber);
  app.add_option("--speed", speed, "UE speed in m/s (trace replay time base)")->check(CLI::NonNegativeNumber);
  app.add_option("--trace-file", trace_file, "Channel trace CSV (t_s,pos_m,state,sinr_db)");
  app.add_option("--duration", duration, "Simulated seconds")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", seed, "Master seed")->required();
  app.add_option("--out", out_dir, "Output directory")->required();
  app.add_option("--config", config_file, "key = value file applied over the scenario defaults");
  app.add_option("--set", sets, "Extra key=value override (repeatable)");
  app.add_flag("--print-config", print_config, "Write the resolved config to <out>/config.txt");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    // Precedence: scenario file < --config file < --set < dedicated flags.
    std::map<std::string, std::string> flags;
    if (transport) flags["transport"] = *transport;
    if (rate) flags["rate_bps"] = fmt_double(*rate);
    if (rlc_buffer) flags["rlc_buffer_bytes"] = std::to_string(*rlc_buffer);
    if (tti) flags["tti"] = *tti;
    if (core_delay) flags["core_delay_s"] = fmt_double(*core_delay);
    if (speed) flags["speed_mps"] = fmt_double(*speed);
    if (trace_file) flags["trace_file"] = *trace_file;
    if (duration) flags["duration_s"] = fmt_double(*duration);
    flags["seed"] = std::to_string(seed);

    mmw::ScenarioConfig cfg = mmw::build_scenario(scenario);
    if (config_file) cfg = mmw::load_config(*config_file, cfg);
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw mmw::ConfigError("--set expects key=value, got '" + s + "'");
      mmw::apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    for (const auto& [k, v] : flags) mmw::apply_setting(cfg, k, v);
    cfg.validate();

    const mmw::RunResult result = mmw::run_scenario(cfg);
    mmw::export_report(result, out_dir);
    if (print_config) {
      std::ofstream(std::filesystem::path(out_dir) / "config.txt") << mmw::serialize_config(cfg);
    }
    std::fputs(mmw::format_summary(result.summary).c_str(), stdout);
    return 0;
  } catch (const mmw::TraceParseError& e) {
    std::fprintf(stderr, "simulate: trace error: %s\n", e.what());
  } catch (const mmw::ConfigError& e) {
    std::fprintf(stderr, "simulate: config error: %s\n", e.what());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "simulate: %s\n", e.what());
  }
  return 1;
}
