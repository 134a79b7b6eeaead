#pragma once

#include <cmath>

#include "mmw/channel/geometry.hpp"

namespace mmw {

/// PL(d) = alpha + 10 * beta * log10(d), per link state.
struct PathLossParams {
  double los_alpha_db = 61.4;
  double los_beta = 2.0;
  double nlos_alpha_db = 72.0;
  double nlos_beta = 2.92;
};

/// Radio constants for the link budget. Defaults: 28 GHz, 1 GHz bandwidth,
/// 30 dBm transmit power, 64x16 aligned beamforming.
struct PhyConfig {
  double carrier_hz = 28e9;
  double bandwidth_hz = 1e9;
  double tx_power_dbm = 30.0;
  int tx_antennas = 64;
  int rx_antennas = 16;
  double noise_figure_db = 5.0;
  double outage_threshold_db = -5.0;
  double shadow_sigma_los_db = 4.0;
  double shadow_sigma_nlos_db = 7.0;
  double rician_k_db = 10.0;
  int sinusoids_per_cluster = 20;
  /// Half-width of the arrival-angle spread around each cluster centre.
  double cluster_angular_spread_rad = 0.8;
  PathLossParams path_loss;

  double beamforming_gain_db() const {
    return 10.0 * std::log10(static_cast<double>(tx_antennas)) + 10.0 * std::log10(static_cast<double>(rx_antennas));
  }
  /// Thermal noise: -174 dBm/Hz + NF + 10 log10(W).
  double noise_power_dbm() const { return -174.0 + noise_figure_db + 10.0 * std::log10(bandwidth_hz); }
  /// Maximum Doppler shift at the given UE speed.
  double max_doppler_hz(double speed_mps) const { return speed_mps * carrier_hz / 299'792'458.0; }

  void validate() const;
};

/// Distance path loss in dB; distances below 1 m are clamped to 1 m.
/// OUTAGE is treated like NLOS.
double path_loss_db(double distance_m, LinkState state, const PathLossParams& params = {});

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace mmw
