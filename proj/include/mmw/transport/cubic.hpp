#pragma once

#include <cstdint>

namespace mmw {

struct CubicParams {
  double c = 0.4;
  double beta = 0.7;
};

/// Time for the cubic curve to climb back to w_max: cbrt(w_max (1 - beta) / C).
double cubic_k(double w_max_segments, const CubicParams& p = {});

/// W(t) = C (t - K)^3 + w_max, in segments, with K from cubic_k.
double cubic_window_segments(double w_max_segments, double t_since_epoch_s, const CubicParams& p = {});

/// Same curve with an explicit K, in segments.
double cubic_curve_segments(double w_max_segments, double k_s, double t_since_epoch_s, const CubicParams& p = {});

/// Congestion window in bytes: max(W(t), 2) segments.
double cubic_window_bytes(double w_max_bytes, double t_since_epoch_s, std::uint32_t mss, const CubicParams& p = {});

}  // namespace mmw
