#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmw/channel/geometry.hpp"

namespace mmw {

/// One row of a channel trace file (`t_s,pos_m,state,sinr_db`).
struct TraceSample {
  double t_s = 0.0;
  double pos_m = 0.0;
  LinkState state = LinkState::LOS;
  double sinr_db = 0.0;
};

class TraceParseError : public std::runtime_error {
 public:
  TraceParseError(std::size_t row, const std::string& what);
  /// 1-based line number in the file; the header is row 1.
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

std::vector<TraceSample> parse_trace(std::istream& in);
std::vector<TraceSample> load_trace(const std::filesystem::path& path);
void write_trace(std::ostream& out, const std::vector<TraceSample>& samples);

/// Interpolated view over a trace. The replay axis is either trace time or,
/// when `speed_mps` > 0, position divided by speed.
class TraceReplay {
 public:
  explicit TraceReplay(std::vector<TraceSample> samples, double speed_mps = 0.0);

  struct Point {
    double pos_m;
    LinkState state;
    double sinr_db;
  };

  /// SINR is linear between rows; state steps at each row. Holds the first
  /// and last rows outside the covered interval.
  Point at(SimTime t) const;
  SimTime duration() const;
  const std::vector<TraceSample>& samples() const { return samples_; }

 private:
  double axis(const TraceSample& s) const { return speed_mps_ > 0.0 ? s.pos_m / speed_mps_ : s.t_s; }

  std::vector<TraceSample> samples_;
  std::vector<double> axis_;
  double speed_mps_;
};

}  // namespace mmw
