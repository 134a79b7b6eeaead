#include "mmw/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace mmw {

const char* to_string(ChannelSource s) { return s == ChannelSource::Geometric ? "geometric" : "trace"; }

const char* to_string(TransportKind t) {
  switch (t) {
    case TransportKind::NewReno: return "newreno";
    case TransportKind::Cubic: return "cubic";
    case TransportKind::Udp: return "udp";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_time(SimTime t) { return fmt(t.seconds()); }

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || p != end || !std::isfinite(out)) throw ConfigError(key + ": not a number: '" + v + "'");
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || p != end) throw ConfigError(key + ": not a non-negative integer: '" + v + "'");
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || p != end) throw ConfigError(key + ": not an integer: '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(key + ": expected true or false: '" + v + "'");
}

std::vector<double> to_doubles(const std::string& key, const std::string& v, std::size_t n) {
  std::istringstream in(v);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(to_double(key, tok));
  if (out.size() != n) throw ConfigError(key + ": expected " + std::to_string(n) + " numbers: '" + v + "'");
  return out;
}

std::string fmt_vec(const Vec3& v) { return fmt(v.x()) + " " + fmt(v.y()) + " " + fmt(v.z()); }

struct Field {
  const char* key;
  std::function<void(ScenarioConfig&, const std::string&)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

#define MMW_DOUBLE(KEY, MEMBER)                                                             \
  Field {                                                                                   \
    KEY, [](ScenarioConfig& c, const std::string& v) { c.MEMBER = to_double(KEY, v); },     \
        [](const ScenarioConfig& c) { return fmt(c.MEMBER); }                               \
  }
#define MMW_TIME(KEY, MEMBER)                                                               \
  Field {                                                                                   \
    KEY, [](ScenarioConfig& c, const std::string& v) { c.MEMBER = seconds(to_double(KEY, v)); }, \
        [](const ScenarioConfig& c) { return fmt_time(c.MEMBER); }                          \
  }
#define MMW_INT(KEY, MEMBER)                                                                \
  Field {                                                                                   \
    KEY, [](ScenarioConfig& c, const std::string& v) { c.MEMBER = to_int(KEY, v); },        \
        [](const ScenarioConfig& c) { return std::to_string(c.MEMBER); }                    \
  }
#define MMW_U64(KEY, MEMBER)                                                                \
  Field {                                                                                   \
    KEY,                                                                                    \
        [](ScenarioConfig& c, const std::string& v) {                                       \
          c.MEMBER = static_cast<decltype(c.MEMBER)>(to_u64(KEY, v));                       \
        },                                                                                  \
        [](const ScenarioConfig& c) { return std::to_string(c.MEMBER); }                    \
  }
#define MMW_BOOL(KEY, MEMBER)                                                               \
  Field {                                                                                   \
    KEY, [](ScenarioConfig& c, const std::string& v) { c.MEMBER = to_bool(KEY, v); },       \
        [](const ScenarioConfig& c) { return std::string(c.MEMBER ? "true" : "false"); }    \
  }

const std::vector<Field>& scalar_fields() {
  static const std::vector<Field> fields = {
      {"name", [](ScenarioConfig& c, const std::string& v) { c.name = v; },
       [](const ScenarioConfig& c) { return c.name; }},
      MMW_U64("seed", seed),
      MMW_TIME("duration_s", duration),
      {"channel",
       [](ScenarioConfig& c, const std::string& v) {
         if (v == "geometric") c.channel = ChannelSource::Geometric;
         else if (v == "trace") c.channel = ChannelSource::Trace;
         else throw ConfigError("channel: expected geometric or trace: '" + v + "'");
       },
       [](const ScenarioConfig& c) { return std::string(to_string(c.channel)); }},
      {"bs_position", [](ScenarioConfig& c, const std::string& v) {
         const auto p = to_doubles("bs_position", v, 3);
         c.geometry.bs_position = Vec3(p[0], p[1], p[2]);
       },
       [](const ScenarioConfig& c) { return fmt_vec(c.geometry.bs_position); }},
      {"trace_file", [](ScenarioConfig& c, const std::string& v) { c.trace_file = v; },
       [](const ScenarioConfig& c) { return c.trace_file; }},
      MMW_DOUBLE("speed_mps", speed_mps),
      MMW_BOOL("fading", fading),
      {"transport",
       [](ScenarioConfig& c, const std::string& v) {
         if (v == "newreno") c.transport = TransportKind::NewReno;
         else if (v == "cubic") c.transport = TransportKind::Cubic;
         else if (v == "udp") c.transport = TransportKind::Udp;
         else throw ConfigError("transport: expected newreno, cubic or udp: '" + v + "'");
       },
       [](const ScenarioConfig& c) { return std::string(to_string(c.transport)); }},
      MMW_DOUBLE("rate_bps", rate_bps),
      MMW_U64("udp_packet_bytes", udp_packet_bytes),

      MMW_DOUBLE("carrier_hz", phy.carrier_hz),
      MMW_DOUBLE("bandwidth_hz", phy.bandwidth_hz),
      MMW_DOUBLE("tx_power_dbm", phy.tx_power_dbm),
      MMW_INT("tx_antennas", phy.tx_antennas),
      MMW_INT("rx_antennas", phy.rx_antennas),
      MMW_DOUBLE("noise_figure_db", phy.noise_figure_db),
      MMW_DOUBLE("outage_threshold_db", phy.outage_threshold_db),
      MMW_DOUBLE("shadow_sigma_los_db", phy.shadow_sigma_los_db),
      MMW_DOUBLE("shadow_sigma_nlos_db", phy.shadow_sigma_nlos_db),
      MMW_DOUBLE("rician_k_db", phy.rician_k_db),
      MMW_INT("sinusoids_per_cluster", phy.sinusoids_per_cluster),
      MMW_DOUBLE("cluster_angular_spread_rad", phy.cluster_angular_spread_rad),
      MMW_DOUBLE("pl_los_alpha_db", phy.path_loss.los_alpha_db),
      MMW_DOUBLE("pl_los_beta", phy.path_loss.los_beta),
      MMW_DOUBLE("pl_nlos_alpha_db", phy.path_loss.nlos_alpha_db),
      MMW_DOUBLE("pl_nlos_beta", phy.path_loss.nlos_beta),

      {"tti",
       [](ScenarioConfig& c, const std::string& v) {
         if (v == "flexible") c.ran.tti_mode = TtiMode::Flexible;
         else if (v == "fixed") c.ran.tti_mode = TtiMode::Fixed;
         else throw ConfigError("tti: expected flexible or fixed: '" + v + "'");
       },
       [](const ScenarioConfig& c) { return std::string(to_string(c.ran.tti_mode)); }},
      MMW_TIME("slot_s", ran.slot),
      MMW_INT("slots_per_frame", ran.slots_per_frame),
      MMW_INT("fixed_dl_slots", ran.fixed_dl_slots),
      MMW_DOUBLE("overhead_factor", ran.overhead_factor),
      MMW_DOUBLE("max_spectral_efficiency", ran.max_spectral_efficiency),
      MMW_DOUBLE("amc_backoff_db", ran.amc_backoff_db),
      MMW_TIME("cqi_period_s", ran.cqi_period),
      MMW_TIME("cqi_delay_s", ran.cqi_delay),
      MMW_INT("harq_processes", ran.harq_processes),
      MMW_INT("harq_feedback_slots", ran.harq_feedback_slots),
      MMW_INT("max_harq_tx", ran.max_harq_tx),
      MMW_DOUBLE("harq_combining_gain_db", ran.harq_combining_gain_db),
      MMW_U64("rlc_buffer_bytes", ran.rlc_buffer_bytes),
      {"rlc_mode",
       [](ScenarioConfig& c, const std::string& v) {
         if (v == "am") c.ran.rlc_am = true;
         else if (v == "um") c.ran.rlc_am = false;
         else throw ConfigError("rlc_mode: expected am or um: '" + v + "'");
       },
       [](const ScenarioConfig& c) { return std::string(c.ran.rlc_am ? "am" : "um"); }},
      MMW_TIME("rlc_status_period_s", ran.rlc_status_period),
      MMW_TIME("rlc_um_reordering_s", ran.rlc_um_reordering),

      MMW_U64("mss_bytes", tcp.mss),
      MMW_U64("tcp_header_bytes", tcp.header_bytes),
      MMW_U64("initial_cwnd_segments", tcp.initial_cwnd_segments),
      MMW_U64("rwnd_bytes", tcp.rwnd_bytes),
      MMW_TIME("min_rto_s", tcp.min_rto),
      MMW_TIME("max_rto_s", tcp.max_rto),
      MMW_INT("dupack_threshold", tcp.dupack_threshold),
      MMW_U64("app_backlog_bytes", tcp.app_backlog_bytes),
      MMW_BOOL("cwnd_validation", tcp.cwnd_validation),
      MMW_DOUBLE("cubic_c", tcp.cubic.c),
      MMW_DOUBLE("cubic_beta", tcp.cubic.beta),

      MMW_TIME("core_delay_s", core.one_way_delay),
      MMW_DOUBLE("core_capacity_bps", core.capacity_bps),
      MMW_TIME("throughput_window_s", throughput_window),
  };
  return fields;
}

#undef MMW_DOUBLE
#undef MMW_TIME
#undef MMW_INT
#undef MMW_U64
#undef MMW_BOOL

}  // namespace

void apply_setting(ScenarioConfig& cfg, const std::string& key_in, const std::string& value_in) {
  const std::string key = trim(key_in);
  const std::string value = trim(value_in);
  if (key == "waypoint") {
    const auto p = to_doubles(key, value, 3);
    cfg.geometry.route.waypoints.emplace_back(p[0], p[1], p[2]);
    return;
  }
  if (key == "obstacle") {
    const auto p = to_doubles(key, value, 6);
    try {
      cfg.geometry.obstacles.emplace_back(Vec3(p[0], p[1], p[2]), Vec3(p[3], p[4], p[5]));
    } catch (const std::exception& e) {
      throw ConfigError(std::string("obstacle: ") + e.what());
    }
    return;
  }
  if (key == "outage") {
    const auto p = to_doubles(key, value, 2);
    cfg.forced_outages.push_back({seconds(p[0]), seconds(p[1])});
    return;
  }
  if (key == "clear") {
    // Resets a list so an override file can replace, rather than extend, it.
    if (value == "waypoint") cfg.geometry.route.waypoints.clear();
    else if (value == "obstacle") cfg.geometry.obstacles.clear();
    else if (value == "outage") cfg.forced_outages.clear();
    else throw ConfigError("clear: expected waypoint, obstacle or outage: '" + value + "'");
    return;
  }
  for (const auto& f : scalar_fields()) {
    if (key == f.key) {
      f.set(cfg, value);
      return;
    }
  }
  throw ConfigError("unknown key '" + key + "'");
}

ScenarioConfig parse_config(const std::string& text, ScenarioConfig base) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    try {
      apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

ScenarioConfig load_config(const std::string& path, ScenarioConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str(), std::move(base));
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string serialize_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  for (const auto& f : scalar_fields()) out << f.key << " = " << f.get(cfg) << '\n';
  for (const auto& w : cfg.geometry.route.waypoints) out << "waypoint = " << fmt_vec(w) << '\n';
  for (const auto& o : cfg.geometry.obstacles) out << "obstacle = " << fmt_vec(o.center) << ' ' << fmt_vec(o.size) << '\n';
  for (const auto& o : cfg.forced_outages) out << "outage = " << fmt_time(o.start) << ' ' << fmt_time(o.end) << '\n';
  return out.str();
}

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b) {
  // Scalars compare through their canonical lossless text.
  for (const auto& f : scalar_fields()) {
    if (f.get(a) != f.get(b)) return false;
  }
  const auto& wa = a.geometry.route.waypoints;
  const auto& wb = b.geometry.route.waypoints;
  if (wa.size() != wb.size() || a.geometry.obstacles.size() != b.geometry.obstacles.size() ||
      a.forced_outages.size() != b.forced_outages.size())
    return false;
  for (std::size_t i = 0; i < wa.size(); ++i) {
    if (wa[i] != wb[i]) return false;
  }
  for (std::size_t i = 0; i < a.geometry.obstacles.size(); ++i) {
    if (a.geometry.obstacles[i].center != b.geometry.obstacles[i].center ||
        a.geometry.obstacles[i].size != b.geometry.obstacles[i].size)
      return false;
  }
  for (std::size_t i = 0; i < a.forced_outages.size(); ++i) {
    if (a.forced_outages[i].start != b.forced_outages[i].start || a.forced_outages[i].end != b.forced_outages[i].end)
      return false;
  }
  return true;
}

void ScenarioConfig::validate() const {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(duration >= SimTime{}, "duration_s must be non-negative");
  require(speed_mps >= 0.0, "speed_mps must be non-negative");
  require(rate_bps >= 0.0, "rate_bps must be non-negative");
  require(udp_packet_bytes > 0, "udp_packet_bytes must be positive");
  require(throughput_window > SimTime{}, "throughput_window_s must be positive");
  require(core.capacity_bps > 0.0, "core_capacity_bps must be positive");
  require(core.one_way_delay >= SimTime{}, "core_delay_s must be non-negative");
  require(ran.rlc_buffer_bytes > 0, "rlc_buffer_bytes must be positive");
  if (channel == ChannelSource::Geometric) {
    require(speed_mps > 0.0, "speed_mps must be positive for a geometric route");
    require(geometry.route.waypoints.size() >= 2, "a geometric scenario needs at least two waypoints");
  } else {
    require(!trace_file.empty(), "trace_file is required for a trace scenario");
  }
  for (const auto& o : forced_outages) require(o.start < o.end, "outage intervals need start < end");
  try {
    phy.validate();
    ran.validate();
    if (transport != TransportKind::Udp) tcp.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace mmw
