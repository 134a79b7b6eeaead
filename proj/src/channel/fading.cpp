#include "mmw/channel/fading.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace mmw {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

LargeScaleRealization draw_realization(RngStream& large_scale, RngStream& fading, const FadingDrawOptions& opts) {
  if (opts.min_clusters < 1 || opts.max_clusters < opts.min_clusters) {
    throw std::invalid_argument("invalid cluster count range");
  }
  if (opts.sinusoids_per_cluster < 1) throw std::invalid_argument("need at least one sinusoid");

  LargeScaleRealization r;
  r.rician_k_linear = std::pow(10.0, opts.rician_k_db / 10.0);
  const auto n_clusters = static_cast<int>(large_scale.uniform_int(opts.min_clusters, opts.max_clusters));

  double total = 0.0;
  r.clusters.resize(static_cast<std::size_t>(n_clusters));
  for (auto& c : r.clusters) {
    // Exponentially distributed cluster powers.
    c.power_fraction = -std::log(1.0 - large_scale.uniform());
    c.angle_offset = large_scale.uniform(0.0, kTwoPi);
    total += c.power_fraction;
  }
  for (auto& c : r.clusters) {
    c.power_fraction /= total;
    const double amp = std::sqrt(c.power_fraction / opts.sinusoids_per_cluster);
    c.paths.resize(static_cast<std::size_t>(opts.sinusoids_per_cluster));
    for (auto& p : c.paths) {
      const double angle = c.angle_offset + opts.cluster_angular_spread_rad * (fading.uniform() - 0.5) * 2.0;
      p.doppler_cos = std::cos(angle);
      p.phase = fading.uniform(0.0, kTwoPi);
      p.amplitude = amp;
    }
  }
  r.los_doppler_cos = std::cos(large_scale.uniform(0.0, kTwoPi));
  r.los_phase = fading.uniform(0.0, kTwoPi);
  return r;
}

double fading_gain_linear(SimTime t, LinkState state, const LargeScaleRealization& r, double max_doppler_hz) {
  const double w = kTwoPi * max_doppler_hz * t.seconds();
  std::complex<double> scattered{0.0, 0.0};
  for (const auto& c : r.clusters) {
    for (const auto& p : c.paths) scattered += std::polar(p.amplitude, w * p.doppler_cos + p.phase);
  }
  if (state != LinkState::LOS) return std::norm(scattered);
  const double k = r.rician_k_linear;
  const std::complex<double> h = std::polar(std::sqrt(k / (k + 1.0)), w * r.los_doppler_cos + r.los_phase) +
                                 std::sqrt(1.0 / (k + 1.0)) * scattered;
  return std::norm(h);
}

}  // namespace mmw
