#include "mmw/ran/frame_scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmw {

namespace {

std::uint64_t served(int dl_slots, int ul_slots, std::uint64_t dl, std::uint64_t ul, std::uint64_t cap) {
  return std::min<std::uint64_t>(dl, static_cast<std::uint64_t>(dl_slots) * cap) +
         std::min<std::uint64_t>(ul, static_cast<std::uint64_t>(ul_slots) * cap);
}

std::vector<SlotPlan> make_plan(int dl_slots, int total, std::uint64_t dl, std::uint64_t ul, std::uint64_t cap) {
  std::vector<SlotPlan> plan(static_cast<std::size_t>(total));
  std::uint64_t dl_left = dl, ul_left = ul;
  for (int i = 0; i < total; ++i) {
    auto& p = plan[static_cast<std::size_t>(i)];
    p.slot_index = i;
    p.direction = i < dl_slots ? Direction::DL : Direction::UL;
    if (cap > 0) {
      auto& left = p.direction == Direction::DL ? dl_left : ul_left;
      p.granted_bytes = std::min(left, cap);
      left -= p.granted_bytes;
    }
  }
  return plan;
}

}  // namespace

std::vector<SlotPlan> schedule_frame(TtiMode mode, std::uint64_t dl, std::uint64_t ul, std::uint64_t cap, int total,
                                     int fixed_dl_slots) {
  if (total < 2 || fixed_dl_slots < 1 || fixed_dl_slots >= total) throw std::invalid_argument("bad frame layout");
  if (mode == TtiMode::Fixed) return make_plan(fixed_dl_slots, total, dl, ul, cap);

  if (ul == 0 && dl == 0) return make_plan(total - 1, total, dl, ul, cap);
  if (ul == 0) return make_plan(total, total, dl, ul, cap);
  if (dl == 0) return make_plan(0, total, dl, ul, cap);

  const double target_ul = static_cast<double>(total) * static_cast<double>(ul) / static_cast<double>(dl + ul);
  int best_ul = std::clamp(static_cast<int>(std::lround(target_ul)), 1, total - 1);
  if (cap > 0) {
    std::uint64_t best_served = served(total - best_ul, best_ul, dl, ul, cap);
    for (int u = 1; u < total; ++u) {
      const std::uint64_t s = served(total - u, u, dl, ul, cap);
      const bool closer = std::abs(u - target_ul) < std::abs(best_ul - target_ul);
      if (s > best_served || (s == best_served && closer)) {
        best_served = s;
        best_ul = u;
      }
    }
  }
  return make_plan(total - best_ul, total, dl, ul, cap);
}

std::uint64_t served_bytes(const std::vector<SlotPlan>& plan, std::uint64_t dl, std::uint64_t ul, std::uint64_t cap) {
  int dl_slots = 0, ul_slots = 0;
  for (const auto& p : plan) (p.direction == Direction::DL ? dl_slots : ul_slots)++;
  return served(dl_slots, ul_slots, dl, ul, cap);
}

}  // namespace mmw
