#pragma once

#include <vector>

#include "mmw/channel/geometry.hpp"
#include "mmw/sim/rng.hpp"

namespace mmw {

struct FadingPath {
  double doppler_cos = 0.0;  // cosine of arrival angle relative to motion
  double phase = 0.0;
  double amplitude = 0.0;
};

struct FadingCluster {
  double power_fraction = 0.0;
  double angle_offset = 0.0;
  std::vector<FadingPath> paths;
};

/// Large-scale parameters drawn once per run: cluster powers and angles plus
/// the sum-of-sinusoids terms that realize small-scale fading on top of them.
struct LargeScaleRealization {
  std::vector<FadingCluster> clusters;
  double los_doppler_cos = 1.0;
  double los_phase = 0.0;
  double rician_k_linear = 10.0;
};

struct FadingDrawOptions {
  int min_clusters = 2;
  int max_clusters = 6;
  int sinusoids_per_cluster = 20;
  double cluster_angular_spread_rad = 0.8;
  double rician_k_db = 10.0;
};

/// Cluster count/powers/angles come from `large_scale`, sinusoid phases and
/// angles from `fading`.
LargeScaleRealization draw_realization(RngStream& large_scale, RngStream& fading, const FadingDrawOptions& opts);

/// Linear power gain |h(t)|^2, unit mean. LOS adds a Rician dominant term;
/// NLOS and OUTAGE use the scattered clusters only.
double fading_gain_linear(SimTime t, LinkState state, const LargeScaleRealization& r, double max_doppler_hz);

inline double fading_gain_db(SimTime t, LinkState state, const LargeScaleRealization& r, double max_doppler_hz) {
  return 10.0 * std::log10(fading_gain_linear(t, state, r, max_doppler_hz));
}

}  // namespace mmw
