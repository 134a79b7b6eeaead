#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mmw/harness/config.hpp"

namespace mmw {

/// Directory holding `<name>.cfg` scenario files. MMW_SCENARIO_DIR in the
/// environment overrides the built-in location.
std::filesystem::path scenario_dir();
/// Directory searched for relative trace paths after the working directory.
std::filesystem::path data_dir();

const std::vector<std::string>& scenario_names();

/// Loads the named scenario file and applies `overrides` (config keys) on top.
/// Throws ConfigError for an unknown name or an invalid result.
ScenarioConfig build_scenario(const std::string& name, const std::map<std::string, std::string>& overrides = {});

/// Resolves a trace path against the working directory, then data_dir().
std::filesystem::path resolve_trace_path(const std::string& path);

/// Builds the channel described by `cfg`, drawing from `rng`.
std::unique_ptr<ChannelModel> make_channel(const ScenarioConfig& cfg, RngService& rng);

}  // namespace mmw
