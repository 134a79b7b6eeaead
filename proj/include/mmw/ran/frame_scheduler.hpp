#pragma once

#include <cstdint>
#include <vector>

#include "mmw/ran/ran_config.hpp"

namespace mmw {

struct SlotPlan {
  int slot_index = 0;
  Direction direction = Direction::DL;
  std::uint64_t granted_bytes = 0;  // filled only when slot capacity is known
};

/// Direction pattern for one frame.
///
/// FIXED is the static [DL x fixed_dl_slots, UL x rest] pattern. FLEXIBLE
/// follows queued demand: all slots go DL (UL) when the other side is idle;
/// otherwise each direction with demand gets at least one slot and the split
/// tracks dl:ul proportionally. When `slot_capacity` is non-zero the split is
/// chosen among those that serve the most bytes, closest to the proportional
/// target, so a flexible frame never serves less than the fixed one.
std::vector<SlotPlan> schedule_frame(TtiMode mode, std::uint64_t dl_demand, std::uint64_t ul_demand,
                                     std::uint64_t slot_capacity = 0, int slots_per_frame = 8, int fixed_dl_slots = 6);

/// Bytes a plan serves for the given demands at uniform slot capacity.
std::uint64_t served_bytes(const std::vector<SlotPlan>& plan, std::uint64_t dl_demand, std::uint64_t ul_demand,
                           std::uint64_t slot_capacity);

}  // namespace mmw
