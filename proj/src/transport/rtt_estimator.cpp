#include "mmw/transport/rtt_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmw {

RttEstimator::RttEstimator(SimTime min_rto, SimTime max_rto, SimTime initial_rto)
    : min_rto_(min_rto), max_rto_(max_rto), rto_(std::clamp(initial_rto, min_rto, max_rto)) {
  if (min_rto.ns <= 0 || max_rto < min_rto) throw std::invalid_argument("bad RTO bounds");
}

SimTime RttEstimator::update(SimTime sample) {
  const double r = sample.seconds();
  if (!has_sample_) {
    srtt_ = r;
    rttvar_ = r / 2.0;
    has_sample_ = true;
  } else {
    rttvar_ = 0.75 * rttvar_ + 0.25 * std::abs(srtt_ - r);
    srtt_ = 0.875 * srtt_ + 0.125 * r;
  }
  rto_ = std::clamp(seconds(srtt_ + 4.0 * rttvar_), min_rto_, max_rto_);
  return rto_;
}

SimTime RttEstimator::backoff() {
  rto_ = std::min(rto_ * 2, max_rto_);
  return rto_;
}

}  // namespace mmw
