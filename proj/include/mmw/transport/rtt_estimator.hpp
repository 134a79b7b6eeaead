#pragma once

#include "mmw/sim/time.hpp"

namespace mmw {

/// Smoothed RTT and retransmission timeout: alpha = 1/8, beta = 1/4, K = 4,
/// RTO floored at `min_rto` and capped at `max_rto`, doubled on each timeout.
class RttEstimator {
 public:
  explicit RttEstimator(SimTime min_rto = seconds(1.0), SimTime max_rto = seconds(60.0),
                        SimTime initial_rto = seconds(1.0));

  /// Feeds one sample (caller applies Karn's rule) and returns the new RTO.
  SimTime update(SimTime sample);
  /// Exponential backoff after a timeout.
  SimTime backoff();

  SimTime rto() const { return rto_; }
  bool has_sample() const { return has_sample_; }
  double srtt_s() const { return srtt_; }
  double rttvar_s() const { return rttvar_; }
  SimTime min_rto() const { return min_rto_; }

 private:
  SimTime min_rto_;
  SimTime max_rto_;
  SimTime rto_;
  bool has_sample_ = false;
  double srtt_ = 0.0;
  double rttvar_ = 0.0;
};

}  // namespace mmw
