#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmw/channel/channel_model.hpp"
#include "mmw/corenet/core_link.hpp"
#include "mmw/ran/ran_config.hpp"
#include "mmw/transport/tcp.hpp"

namespace mmw {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ChannelSource { Geometric, Trace };
enum class TransportKind { NewReno, Cubic, Udp };

const char* to_string(ChannelSource s);
const char* to_string(TransportKind t);

/// Everything a run needs. Serializes to `key = value` lines; list-valued
/// fields (waypoint, obstacle, outage) repeat their key once per entry.
struct ScenarioConfig {
  std::string name = "custom";
  std::uint64_t seed = 0;
  SimTime duration = seconds(10.0);

  ChannelSource channel = ChannelSource::Geometric;
  GeometricSetup geometry;
  std::string trace_file;
  /// Replay speed for traces; also the route speed for geometric channels.
  double speed_mps = 1.5;
  bool fading = true;
  std::vector<OutageInterval> forced_outages;

  TransportKind transport = TransportKind::NewReno;
  /// Offered load: UDP CBR rate, or the TCP application write rate (0 = bulk).
  double rate_bps = 1e9;
  std::uint32_t udp_packet_bytes = 1400;

  PhyConfig phy;
  RanConfig ran;
  TcpConfig tcp;
  CoreLink::Config core;

  SimTime throughput_window = milliseconds(100);

  /// Throws ConfigError describing the first invalid field.
  void validate() const;
};

/// Applies one `key = value` assignment. Throws ConfigError for unknown keys
/// or malformed values. List keys append.
void apply_setting(ScenarioConfig& cfg, const std::string& key, const std::string& value);

/// Parses a config file body. Blank lines and `#` comments are ignored.
ScenarioConfig parse_config(const std::string& text, ScenarioConfig base = {});
ScenarioConfig load_config(const std::string& path, ScenarioConfig base = {});

/// Lossless text form: parse_config(serialize_config(c)) reproduces c exactly.
std::string serialize_config(const ScenarioConfig& cfg);

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b);

}  // namespace mmw
