#include "mmw/transport/cubic.hpp"

#include <algorithm>
#include <cmath>

namespace mmw {

double cubic_k(double w_max, const CubicParams& p) { return std::cbrt(w_max * (1.0 - p.beta) / p.c); }

double cubic_curve_segments(double w_max, double k, double t, const CubicParams& p) {
  const double dt = t - k;
  return p.c * dt * dt * dt + w_max;
}

double cubic_window_segments(double w_max, double t, const CubicParams& p) {
  return cubic_curve_segments(w_max, cubic_k(w_max, p), t, p);
}

double cubic_window_bytes(double w_max_bytes, double t, std::uint32_t mss, const CubicParams& p) {
  const double w = cubic_window_segments(w_max_bytes / mss, t, p);
  return std::max(w, 2.0) * mss;
}

}  // namespace mmw
