#include "mmw/ran/amc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmw {

const char* to_string(TtiMode m) { return m == TtiMode::Flexible ? "flexible" : "fixed"; }

void RanConfig::validate() const {
  if (slot.ns <= 0) throw std::invalid_argument("slot duration must be positive");
  if (slots_per_frame < 2) throw std::invalid_argument("frame needs at least two slots");
  if (fixed_dl_slots < 1 || fixed_dl_slots >= slots_per_frame) throw std::invalid_argument("bad fixed DL slot count");
  if (!(bandwidth_hz > 0) || !(overhead_factor > 0) || !(max_spectral_efficiency > 0)) {
    throw std::invalid_argument("bandwidth, overhead and MCS cap must be positive");
  }
  if (harq_processes < 1 || harq_feedback_slots < 1 || max_harq_tx < 1) throw std::invalid_argument("bad HARQ config");
  if (rlc_buffer_bytes == 0) throw std::invalid_argument("RLC buffer must be non-empty");
  if (cqi_period.ns <= 0 || cqi_delay.ns < 0) throw std::invalid_argument("bad CQI timing");
  if (rlc_status_period.ns <= 0) throw std::invalid_argument("bad RLC status period");
}

double lowest_mcs_efficiency(const RanConfig& cfg) {
  return std::log2(1.0 + std::pow(10.0, (cfg.outage_threshold_db - cfg.amc_backoff_db) / 10.0));
}

double amc_select(const std::optional<CqiReport>& cqi, const RanConfig& cfg) {
  if (!cqi) return lowest_mcs_efficiency(cfg);
  if (cqi->measured_state == LinkState::OUTAGE || cqi->measured_sinr_db < cfg.outage_threshold_db) return 0.0;
  const double lin = std::pow(10.0, (cqi->measured_sinr_db - cfg.amc_backoff_db) / 10.0);
  return std::min(std::log2(1.0 + lin), cfg.max_spectral_efficiency);
}

std::uint64_t slot_capacity_bytes(double eff, const RanConfig& cfg) {
  if (eff <= 0.0) return 0;
  const double bits = eff * cfg.bandwidth_hz * cfg.slot.seconds() * cfg.overhead_factor;
  return static_cast<std::uint64_t>(std::floor(bits / 8.0));
}

double supportable_efficiency(double true_sinr_db, int attempt, double combining_gain_db) {
  const double sinr = true_sinr_db + combining_gain_db * (attempt - 1);
  return std::log2(1.0 + std::pow(10.0, sinr / 10.0));
}

bool harq_attempt_succeeds(double assigned_eff, double true_sinr_db, LinkState true_state, int attempt,
                           double combining_gain_db) {
  if (true_state == LinkState::OUTAGE) return false;
  return supportable_efficiency(true_sinr_db, attempt, combining_gain_db) >= assigned_eff;
}

}  // namespace mmw
