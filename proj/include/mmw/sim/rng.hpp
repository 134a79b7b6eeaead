#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

namespace mmw {

/// Deterministic random stream keyed by (seed, stream_id). Draws are derived
/// only from std::mt19937_64 output bits, so sequences are identical across
/// platforms and standard-library implementations.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string stream_id);

  const std::string& stream_id() const { return stream_id_; }
  std::uint64_t seed() const { return seed_; }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller.
  double normal();
  double normal(double mean, double sigma) { return mean + sigma * normal(); }
  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t seed_;
  std::string stream_id_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

class UnknownStreamError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Owns one named stream per stochastic subsystem of a run.
class RngService {
 public:
  explicit RngService(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Creates the stream if needed and returns it.
  RngStream& register_stream(const std::string& stream_id);
  /// Throws UnknownStreamError for unregistered ids.
  RngStream& stream(const std::string& stream_id);
  double draw_uniform(const std::string& stream_id) { return stream(stream_id).uniform(); }

 private:
  std::uint64_t seed_;
  std::map<std::string, RngStream> streams_;
};

/// SplitMix64 finalizer; used to derive well-mixed 64-bit keys.
std::uint64_t mix64(std::uint64_t x);

}  // namespace mmw
