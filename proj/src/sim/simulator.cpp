#include "mmw/sim/simulator.hpp"

#include <cassert>
#include <string>

namespace mmw {

EventHandle Simulator::schedule(SimTime delay, Action action) {
  if (delay.ns < 0) throw std::invalid_argument("negative event delay");
  return schedule_at(now_ + delay, std::move(action));
}

EventHandle Simulator::schedule_at(SimTime when, Action action) {
  if (when < now_) throw std::invalid_argument("event scheduled in the past");
  const std::uint64_t seq = next_seq_++;
  queue_.push(Entry{when, seq, std::move(action)});
  live_.insert(seq);
  return EventHandle(seq);
}

void Simulator::cancel(EventHandle& handle) {
  if (!handle.valid()) return;
  if (live_.erase(handle.seq_) > 0) cancelled_.insert(handle.seq_);
  handle = EventHandle();
}

bool Simulator::pending(const EventHandle& handle) const {
  return handle.valid() && live_.count(handle.seq_) > 0;
}

std::uint64_t Simulator::run_until(SimTime t_end) {
  if (t_end < now_) throw std::invalid_argument("run_until target precedes now");
  std::uint64_t executed = 0;
  while (!queue_.empty() && queue_.top().fire_at <= t_end) {
    // priority_queue::top is const; the action is moved out before pop.
    Entry entry = std::move(const_cast<Entry&>(queue_.top()));
    queue_.pop();
    if (cancelled_.erase(entry.seq) > 0) continue;
    live_.erase(entry.seq);
    assert(entry.fire_at >= now_);
    now_ = entry.fire_at;
    if (++executed_total_ > event_cap_) {
      throw RunawayError("event cap of " + std::to_string(event_cap_) + " exceeded at t=" +
                         std::to_string(now_.seconds()) + " s");
    }
    ++executed;
    entry.action();
  }
  now_ = t_end;
  return executed;
}

}  // namespace mmw
