#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "mmw/sim/time.hpp"

namespace mmw {

/// Thrown by Simulator::run_until when the per-run event cap is exceeded.
class RunawayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Opaque ticket for a scheduled event. A default-constructed handle refers
/// to nothing and cancelling it is a no-op.
class EventHandle {
 public:
  EventHandle() = default;
  bool valid() const { return seq_ != 0; }
  std::uint64_t seq() const { return seq_; }

 private:
  friend class Simulator;
  explicit EventHandle(std::uint64_t seq) : seq_(seq) {}
  std::uint64_t seq_ = 0;
};

/// Single-threaded discrete-event scheduler. Events with equal fire time run
/// in insertion order.
class Simulator {
 public:
  using Action = std::function<void()>;

  static constexpr std::uint64_t kDefaultEventCap = 1'000'000'000ULL;

  explicit Simulator(std::uint64_t event_cap = kDefaultEventCap) : event_cap_(event_cap) {}

  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  SimTime now() const { return now_; }

  /// Queues `action` at now + delay. Throws std::invalid_argument if delay < 0.
  EventHandle schedule(SimTime delay, Action action);
  EventHandle schedule_at(SimTime when, Action action);

  /// Idempotent; cancelling an already fired or cancelled event does nothing.
  void cancel(EventHandle& handle);
  bool pending(const EventHandle& handle) const;

  /// Executes every event with fire time <= t_end, then sets now to t_end.
  /// Returns the number of events executed by this call.
  std::uint64_t run_until(SimTime t_end);

  std::size_t queued() const { return queue_.size() - cancelled_.size(); }
  std::uint64_t executed_total() const { return executed_total_; }

 private:
  struct Entry {
    SimTime fire_at;
    std::uint64_t seq;
    Action action;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
      return a.seq > b.seq;
    }
  };

  SimTime now_{};
  std::uint64_t next_seq_ = 1;
  std::uint64_t executed_total_ = 0;
  std::uint64_t event_cap_;
  std::priority_queue<Entry, std::vector<Entry>, Later> queue_;
  std::unordered_set<std::uint64_t> live_;
  std::unordered_set<std::uint64_t> cancelled_;
};

}  // namespace mmw
