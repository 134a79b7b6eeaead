#include "mmw/harness/scenarios.hpp"

#include <algorithm>
#include <cstdlib>

namespace mmw {

std::filesystem::path scenario_dir() {
  if (const char* env = std::getenv("MMW_SCENARIO_DIR")) return env;
  return MMW_SCENARIO_DIR;
}

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("MMW_DATA_DIR")) return env;
  return MMW_DATA_DIR;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"s1", "s2", "s3", "trace"};
  return names;
}

ScenarioConfig build_scenario(const std::string& name, const std::map<std::string, std::string>& overrides) {
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw ConfigError("unknown scenario '" + name + "' (expected s1, s2, s3 or trace)");
  }
  ScenarioConfig cfg = load_config((scenario_dir() / (name + ".cfg")).string());
  for (const auto& [key, value] : overrides) apply_setting(cfg, key, value);
  cfg.validate();
  return cfg;
}

std::filesystem::path resolve_trace_path(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute() || std::filesystem::exists(p)) return p;
  const auto in_data = data_dir() / p;
  if (std::filesystem::exists(in_data)) return in_data;
  return p;
}

std::unique_ptr<ChannelModel> make_channel(const ScenarioConfig& cfg, RngService& rng) {
  if (cfg.channel == ChannelSource::Trace) {
    auto samples = load_trace(resolve_trace_path(cfg.trace_file));
    return std::make_unique<TraceChannel>(std::move(samples), cfg.phy, rng, cfg.speed_mps, cfg.forced_outages,
                                          cfg.fading);
  }
  GeometricSetup setup = cfg.geometry;
  setup.route.speed_mps = cfg.speed_mps;
  return std::make_unique<GeometricChannel>(std::move(setup), cfg.phy, rng, cfg.forced_outages, cfg.fading);
}

}  // namespace mmw
