#include "mmw/channel/pathloss.hpp"

#include <algorithm>
#include <stdexcept>

namespace mmw {

double path_loss_db(double distance_m, LinkState state, const PathLossParams& p) {
  const double d = std::max(distance_m, 1.0);
  if (state == LinkState::LOS) return p.los_alpha_db + 10.0 * p.los_beta * std::log10(d);
  return p.nlos_alpha_db + 10.0 * p.nlos_beta * std::log10(d);
}

void PhyConfig::validate() const {
  if (!(carrier_hz > 0)) throw std::invalid_argument("carrier frequency must be positive");
  if (!(bandwidth_hz > 0)) throw std::invalid_argument("bandwidth must be positive");
  if (tx_antennas < 1 || rx_antennas < 1) throw std::invalid_argument("antenna counts must be >= 1");
  if (shadow_sigma_los_db < 0 || shadow_sigma_nlos_db < 0) throw std::invalid_argument("shadowing sigma must be >= 0");
  if (sinusoids_per_cluster < 1) throw std::invalid_argument("need at least one sinusoid per cluster");
}

}  // namespace mmw
