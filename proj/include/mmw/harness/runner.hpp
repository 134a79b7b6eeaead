#pragma once

#include <cstdint>

#include "mmw/harness/config.hpp"
#include "mmw/harness/metrics.hpp"

namespace mmw {

struct RunResult {
  MetricsSeries metrics;
  Summary summary;
  std::uint64_t events = 0;
  /// TCP receiver stream checks (trivially true for UDP runs).
  bool stream_consistent = true;
  std::uint64_t stream_digest = 0;
  std::uint64_t receiver_duplicates = 0;
};

/// Runs one scenario to cfg.duration. Deterministic for a given config.
/// Throws ConfigError or TraceParseError on bad input.
RunResult run_scenario(const ScenarioConfig& cfg);

}  // namespace mmw
