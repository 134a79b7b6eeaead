#pragma once

#include <cstdint>

#include "mmw/sim/time.hpp"

namespace mmw {

enum class TtiMode { Flexible, Fixed };
enum class Direction { DL, UL };

const char* to_string(TtiMode m);

struct RanConfig {
  SimTime slot = microseconds(125);
  int slots_per_frame = 8;
  int fixed_dl_slots = 6;
  TtiMode tti_mode = TtiMode::Flexible;

  double bandwidth_hz = 1e9;
  double overhead_factor = 0.8;
  double max_spectral_efficiency = 4.375;  // b/s/Hz
  double amc_backoff_db = 1.0;
  double outage_threshold_db = -5.0;

  SimTime cqi_period = milliseconds(2);
  SimTime cqi_delay = milliseconds(2);

  int harq_processes = 8;
  int harq_feedback_slots = 4;
  int max_harq_tx = 3;
  double harq_combining_gain_db = 3.0;

  std::uint64_t rlc_buffer_bytes = 10'000'000;
  bool rlc_am = true;
  SimTime rlc_status_period = milliseconds(5);
  SimTime rlc_um_reordering = milliseconds(10);

  void validate() const;
};

}  // namespace mmw
