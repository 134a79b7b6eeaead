#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mmw/channel/geometry.hpp"
#include "mmw/ran/rlc.hpp"

namespace mmw {

struct TransportBlock {
  std::uint64_t tb_bytes = 0;
  std::vector<RlcSegment> segments;
  double mcs_eff = 0.0;
  int harq_process = -1;
  int tx_count = 0;
  std::uint64_t first_tx_slot = 0;
};

/// A TB whose HARQ life is over: decoded, or dropped after max_harq_tx attempts.
struct HarqResolution {
  TransportBlock tb;
  bool delivered = false;
};

/// Bank of stop-and-wait HARQ processes for one link direction.
class HarqEntity {
 public:
  HarqEntity(int processes, int feedback_slots, int max_tx, double combining_gain_db);

  std::optional<int> free_process() const;
  /// Process holding a NACKed TB, oldest first.
  std::optional<int> ready_retransmission() const;

  /// First transmission of `tb` on `process`. Returns whether the receiver decoded it.
  bool transmit_new(int process, TransportBlock tb, std::uint64_t slot, double true_sinr_db, LinkState true_state);
  /// Retransmits the TB held by `process`.
  bool retransmit(int process, std::uint64_t slot, double true_sinr_db, LinkState true_state);
  const TransportBlock& block(int process) const { return procs_.at(static_cast<std::size_t>(process)).tb; }

  /// Applies feedback due at `slot`. Returns TBs that finished.
  std::vector<HarqResolution> process_feedback(std::uint64_t slot);

  bool has_pending_retransmission() const { return ready_retransmission().has_value(); }
  std::uint64_t transmissions() const { return transmissions_; }
  std::uint64_t failures() const { return failures_; }
  std::uint64_t exhausted() const { return exhausted_; }
  int max_tx() const { return max_tx_; }

 private:
  enum class State { Idle, AwaitingFeedback, PendingRetx };
  struct Process {
    State state = State::Idle;
    TransportBlock tb;
    std::uint64_t feedback_slot = 0;
    bool decoded = false;
  };
  bool attempt(Process& p, std::uint64_t slot, double true_sinr_db, LinkState true_state);

  std::vector<Process> procs_;
  int feedback_slots_;
  int max_tx_;
  double combining_gain_db_;
  std::uint64_t transmissions_ = 0;
  std::uint64_t failures_ = 0;
  std::uint64_t exhausted_ = 0;
};

}  // namespace mmw
