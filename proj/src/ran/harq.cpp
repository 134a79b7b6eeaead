#include "mmw/ran/harq.hpp"

#include <stdexcept>

#include "mmw/ran/amc.hpp"

namespace mmw {

HarqEntity::HarqEntity(int processes, int feedback_slots, int max_tx, double combining_gain_db)
    : procs_(static_cast<std::size_t>(processes)),
      feedback_slots_(feedback_slots),
      max_tx_(max_tx),
      combining_gain_db_(combining_gain_db) {
  if (processes < 1 || feedback_slots < 1 || max_tx < 1) throw std::invalid_argument("bad HARQ parameters");
}

std::optional<int> HarqEntity::free_process() const {
  for (std::size_t i = 0; i < procs_.size(); ++i) {
    if (procs_[i].state == State::Idle) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::optional<int> HarqEntity::ready_retransmission() const {
  std::optional<int> best;
  for (std::size_t i = 0; i < procs_.size(); ++i) {
    if (procs_[i].state != State::PendingRetx) continue;
    if (!best || procs_[i].tb.first_tx_slot < procs_[static_cast<std::size_t>(*best)].tb.first_tx_slot) {
      best = static_cast<int>(i);
    }
  }
  return best;
}

bool HarqEntity::attempt(Process& p, std::uint64_t slot, double true_sinr_db, LinkState true_state) {
  ++p.tb.tx_count;
  ++transmissions_;
  p.decoded = harq_attempt_succeeds(p.tb.mcs_eff, true_sinr_db, true_state, p.tb.tx_count, combining_gain_db_);
  if (!p.decoded) ++failures_;
  p.feedback_slot = slot + static_cast<std::uint64_t>(feedback_slots_);
  p.state = State::AwaitingFeedback;
  return p.decoded;
}

bool HarqEntity::transmit_new(int process, TransportBlock tb, std::uint64_t slot, double true_sinr_db,
                              LinkState true_state) {
  Process& p = procs_.at(static_cast<std::size_t>(process));
  if (p.state != State::Idle) throw std::logic_error("HARQ process busy");
  p.tb = std::move(tb);
  p.tb.harq_process = process;
  p.tb.tx_count = 0;
  p.tb.first_tx_slot = slot;
  return attempt(p, slot, true_sinr_db, true_state);
}

bool HarqEntity::retransmit(int process, std::uint64_t slot, double true_sinr_db, LinkState true_state) {
  Process& p = procs_.at(static_cast<std::size_t>(process));
  if (p.state != State::PendingRetx) throw std::logic_error("HARQ process has nothing to retransmit");
  return attempt(p, slot, true_sinr_db, true_state);
}

std::vector<HarqResolution> HarqEntity::process_feedback(std::uint64_t slot) {
  std::vector<HarqResolution> done;
  for (auto& p : procs_) {
    if (p.state != State::AwaitingFeedback || p.feedback_slot > slot) continue;
    if (p.decoded) {
      done.push_back({std::move(p.tb), true});
      p = Process{};
    } else if (p.tb.tx_count < max_tx_) {
      p.state = State::PendingRetx;
    } else {
      ++exhausted_;
      done.push_back({std::move(p.tb), false});
      p = Process{};
    }
  }
  return done;
}

}  // namespace mmw
