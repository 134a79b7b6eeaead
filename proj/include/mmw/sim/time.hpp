#pragma once

#include <compare>
#include <cstdint>

namespace mmw {

/// Simulation time and durations, in integer nanoseconds since simulation start.
struct SimTime {
  std::int64_t ns = 0;

  constexpr auto operator<=>(const SimTime&) const = default;

  constexpr double seconds() const { return static_cast<double>(ns) / 1e9; }

  constexpr SimTime& operator+=(SimTime d) {
    ns += d.ns;
    return *this;
  }
  constexpr SimTime& operator-=(SimTime d) {
    ns -= d.ns;
    return *this;
  }
  friend constexpr SimTime operator+(SimTime a, SimTime b) { return {a.ns + b.ns}; }
  friend constexpr SimTime operator-(SimTime a, SimTime b) { return {a.ns - b.ns}; }
  friend constexpr SimTime operator*(SimTime a, std::int64_t k) { return {a.ns * k}; }
  friend constexpr SimTime operator*(std::int64_t k, SimTime a) { return {a.ns * k}; }
};

constexpr SimTime nanoseconds(std::int64_t v) { return {v}; }
constexpr SimTime microseconds(std::int64_t v) { return {v * 1'000}; }
constexpr SimTime milliseconds(std::int64_t v) { return {v * 1'000'000}; }

/// Rounds to the nearest nanosecond.
constexpr SimTime seconds(double s) {
  const double ns = s * 1e9;
  return {static_cast<std::int64_t>(ns < 0 ? ns - 0.5 : ns + 0.5)};
}

/// Time to serialize `bytes` at `bits_per_second`, rounded to the nearest ns.
constexpr SimTime transmission_time(std::int64_t bytes, double bits_per_second) {
  return seconds(static_cast<double>(bytes) * 8.0 / bits_per_second);
}

}  // namespace mmw
