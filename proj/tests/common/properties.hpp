// Independent property checks shared by the unit and acceptance suites.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "mmw/channel/fading.hpp"
#include "mmw/channel/geometry.hpp"
#include "mmw/channel/pathloss.hpp"
#include "mmw/sim/rng.hpp"
#include "mmw/transport/cubic.hpp"
#include "mmw/transport/rtt_estimator.hpp"

namespace mmw::props {

// Does any of n evenly spaced interior points of a->b lie strictly inside the box?
inline bool sampled_hit(const Vec3& a, const Vec3& b, const Vec3& lo, const Vec3& hi, int n) {
  for (int i = 1; i < n; ++i) {
    const Vec3 p = a + (b - a) * (static_cast<double>(i) / n);
    if ((p.array() > lo.array()).all() && (p.array() < hi.array()).all()) return true;
  }
  return false;
}

struct AabbResult {
  int cases = 0;
  int hits = 0;
  int disagreements = 0;
};

// Random segment/box pairs; a mismatch at coarse sampling is re-checked at a
// spacing fine enough to catch short chords.
inline AabbResult aabb_vs_sampling(int cases, std::uint64_t seed) {
  RngStream rng(seed, "aabb");
  AabbResult r;
  for (int c = 0; c < cases; ++c) {
    const Vec3 center(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3));
    const Vec3 size(rng.uniform(0.2, 4), rng.uniform(0.2, 4), rng.uniform(0.2, 4));
    const Vec3 a(rng.uniform(-6, 6), rng.uniform(-6, 6), rng.uniform(-6, 6));
    const Vec3 b(rng.uniform(-6, 6), rng.uniform(-6, 6), rng.uniform(-6, 6));
    const Vec3 lo = center - 0.5 * size, hi = center + 0.5 * size;
    const bool slab = segment_intersects_box<double>(a, b, lo, hi);
    bool brute = sampled_hit(a, b, lo, hi, 512);
    if (slab != brute) brute = sampled_hit(a, b, lo, hi, 1 << 18);
    r.disagreements += slab != brute;
    r.hits += slab;
    ++r.cases;
  }
  return r;
}

struct FadingStats {
  double nlos_mean = 0.0;
  double los_mean = 0.0;
  double ks_exponential = 1.0;
};

// NLOS power gains pooled over realizations, compared with Exp(1).
inline FadingStats fading_stats(int realizations = 40, int samples = 1000) {
  PhyConfig phy;
  const double doppler = phy.max_doppler_hz(1.5);
  std::vector<double> nlos;
  double los_sum = 0.0;
  for (int k = 1; k <= realizations; ++k) {
    RngService rng(static_cast<std::uint64_t>(k));
    const auto r = draw_realization(rng.register_stream("large_scale"), rng.register_stream("fading"), {});
    for (int i = 0; i < samples; ++i) {
      const SimTime t = milliseconds(37 * i);
      nlos.push_back(fading_gain_linear(t, LinkState::NLOS, r, doppler));
      los_sum += fading_gain_linear(t, LinkState::LOS, r, doppler);
    }
  }
  FadingStats s;
  for (double g : nlos) s.nlos_mean += g;
  s.nlos_mean /= static_cast<double>(nlos.size());
  s.los_mean = los_sum / static_cast<double>(nlos.size());
  std::sort(nlos.begin(), nlos.end());
  const double n = static_cast<double>(nlos.size());
  double d = 0.0;
  for (std::size_t i = 0; i < nlos.size(); ++i) {
    const double f = 1.0 - std::exp(-nlos[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - f)});
  }
  s.ks_exponential = d;
  return s;
}

// Hand-computed: samples 100, 200, 100 ms with a 1 ms floor, then two backoffs.
inline bool rtt_sequence_ok() {
  RttEstimator e(milliseconds(1), seconds(60.0), seconds(1.0));
  bool ok = e.rto() == seconds(1.0);
  ok &= e.update(milliseconds(100)) == seconds(0.3);
  ok &= e.update(milliseconds(200)) == seconds(0.3625);
  ok &= e.update(milliseconds(100)) == seconds(0.3109375);
  ok &= e.backoff() == seconds(0.621875);
  ok &= e.backoff() == seconds(1.24375);
  RttEstimator floor;
  ok &= floor.update(milliseconds(40)) == seconds(1.0);
  ok &= floor.backoff() == seconds(2.0);
  return ok;
}

// Largest relative error of cubic_window_segments against a long double
// evaluation of C (t - K)^3 + W_max at `points` random points.
inline long double cubic_max_error(int points, std::uint64_t seed) {
  RngStream rng(seed, "cubic");
  long double worst = 0.0L;
  for (int i = 0; i < points; ++i) {
    CubicParams p{rng.uniform(0.1, 1.0), rng.uniform(0.5, 0.9)};
    const double w_max = rng.uniform(2.0, 10'000.0);
    const double t = rng.uniform(0.0, 60.0);
    const long double k = std::cbrt(static_cast<long double>(w_max) * (1.0L - p.beta) / p.c);
    const long double expect = p.c * std::pow(static_cast<long double>(t) - k, 3.0L) + w_max;
    const long double err = std::abs(static_cast<long double>(cubic_window_segments(w_max, t, p)) - expect) /
                            std::max(1.0L, std::abs(expect));
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace mmw::props
