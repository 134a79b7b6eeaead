#pragma once

#include <Eigen/Core>
#include <limits>
#include <vector>

#include "mmw/sim/time.hpp"

namespace mmw {

using Vec3 = Eigen::Vector3d;

enum class LinkState { LOS, NLOS, OUTAGE };

const char* to_string(LinkState s);

/// Axis-aligned box; every component of `size` must be positive.
struct Obstacle {
  Vec3 center;
  Vec3 size;

  Obstacle(Vec3 center, Vec3 size);
  Vec3 lower() const { return center - 0.5 * size; }
  Vec3 upper() const { return center + 0.5 * size; }
};

/// Slab test: does the open segment a->b pass through the open interior of
/// the box [lo, hi]? Touching a face or edge does not count.
template <typename Scalar>
bool segment_intersects_box(const Eigen::Matrix<Scalar, 3, 1>& a, const Eigen::Matrix<Scalar, 3, 1>& b,
                            const Eigen::Matrix<Scalar, 3, 1>& lo, const Eigen::Matrix<Scalar, 3, 1>& hi) {
  const Eigen::Matrix<Scalar, 3, 1> d = b - a;
  Scalar t_enter = Scalar(0);
  Scalar t_exit = Scalar(1);
  for (int axis = 0; axis < 3; ++axis) {
    if (d[axis] == Scalar(0)) {
      if (!(a[axis] > lo[axis] && a[axis] < hi[axis])) return false;
      continue;
    }
    Scalar t0 = (lo[axis] - a[axis]) / d[axis];
    Scalar t1 = (hi[axis] - a[axis]) / d[axis];
    if (t0 > t1) std::swap(t0, t1);
    t_enter = std::max(t_enter, t0);
    t_exit = std::min(t_exit, t1);
    if (!(t_enter < t_exit)) return false;
  }
  return t_enter < t_exit;
}

/// NLOS iff the segment tx->rx crosses any obstacle. Symmetric in tx/rx.
LinkState los_state(const Vec3& tx, const Vec3& rx, const std::vector<Obstacle>& obstacles);

struct RouteSpec {
  std::vector<Vec3> waypoints;
  double speed_mps = 1.0;

  /// Throws std::invalid_argument unless speed > 0 and there are >= 2 waypoints.
  void validate() const;
  double length_m() const;
  SimTime duration() const { return seconds(length_m() / speed_mps); }
};

/// Piecewise-linear position at constant speed; the UE stops at the last waypoint.
Vec3 advance_route(const RouteSpec& route, SimTime t);

/// Distance travelled along the route at time t (clamped to the route length).
double route_distance(const RouteSpec& route, SimTime t);

}  // namespace mmw
