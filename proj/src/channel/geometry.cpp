#include "mmw/channel/geometry.hpp"

#include <stdexcept>

namespace mmw {

const char* to_string(LinkState s) {
  switch (s) {
    case LinkState::LOS: return "LOS";
    case LinkState::NLOS: return "NLOS";
    case LinkState::OUTAGE: return "OUT";
  }
  return "?";
}

Obstacle::Obstacle(Vec3 c, Vec3 s) : center(std::move(c)), size(std::move(s)) {
  if ((size.array() <= 0.0).any()) throw std::invalid_argument("obstacle size must be positive");
}

LinkState los_state(const Vec3& tx, const Vec3& rx, const std::vector<Obstacle>& obstacles) {
  for (const auto& ob : obstacles) {
    if (segment_intersects_box<double>(tx, rx, ob.lower(), ob.upper())) return LinkState::NLOS;
  }
  return LinkState::LOS;
}

void RouteSpec::validate() const {
  if (!(speed_mps > 0.0)) throw std::invalid_argument("route speed must be positive");
  if (waypoints.size() < 2) throw std::invalid_argument("route needs at least two waypoints");
}

double RouteSpec::length_m() const {
  double len = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) len += (waypoints[i] - waypoints[i - 1]).norm();
  return len;
}

double route_distance(const RouteSpec& route, SimTime t) {
  const double d = route.speed_mps * std::max(0.0, t.seconds());
  return std::min(d, route.length_m());
}

Vec3 advance_route(const RouteSpec& route, SimTime t) {
  double remaining = route.speed_mps * std::max(0.0, t.seconds());
  for (std::size_t i = 1; i < route.waypoints.size(); ++i) {
    const Vec3 leg = route.waypoints[i] - route.waypoints[i - 1];
    const double len = leg.norm();
    if (remaining <= len) {
      if (len == 0.0) return route.waypoints[i];
      return route.waypoints[i - 1] + (remaining / len) * leg;
    }
    remaining -= len;
  }
  return route.waypoints.back();
}

}  // namespace mmw
