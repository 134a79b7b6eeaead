#pragma once

#include <cstdint>
#include <optional>

#include "mmw/channel/geometry.hpp"
#include "mmw/ran/ran_config.hpp"

namespace mmw {

struct CqiReport {
  double measured_sinr_db = 0.0;
  LinkState measured_state = LinkState::LOS;
  SimTime measured_at;
  SimTime applied_at;
};

/// Capped Shannon efficiency after backoff. Returns 0 (no grant) when the report
/// shows outage and the lowest MCS when no report has arrived yet.
double amc_select(const std::optional<CqiReport>& cqi, const RanConfig& cfg);

/// Lowest usable efficiency, used before the first CQI report arrives.
double lowest_mcs_efficiency(const RanConfig& cfg);

/// Transport-block bytes one slot carries at `spectral_efficiency`.
std::uint64_t slot_capacity_bytes(double spectral_efficiency, const RanConfig& cfg);

/// Efficiency the channel supports on transmission attempt `attempt` (1-based),
/// including chase-combining gain from earlier attempts.
double supportable_efficiency(double true_sinr_db, int attempt, double combining_gain_db);

/// Decode rule: the TB fails iff the supportable efficiency is below the
/// assigned one, or the link is in outage.
bool harq_attempt_succeeds(double assigned_eff, double true_sinr_db, LinkState true_state, int attempt,
                           double combining_gain_db);

}  // namespace mmw
