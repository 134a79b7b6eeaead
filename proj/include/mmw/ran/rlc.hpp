#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <vector>

#include "mmw/packet.hpp"

namespace mmw {

/// A byte range of one RLC SDU (an IP packet) carried in a transport block.
struct RlcSegment {
  std::uint64_t sn = 0;
  std::uint32_t offset = 0;
  std::uint32_t length = 0;
  std::uint32_t sdu_size = 0;
  Packet packet;
};

struct RlcNack {
  std::uint64_t sn = 0;
  std::uint32_t offset = 0;
  std::uint32_t length = 0;
};

/// Receiver status: every SN below `ack_sn` was received; `nacks` lists the
/// missing ranges of SNs up to the highest SN seen so far.
struct StatusReport {
  std::uint64_t ack_sn = 0;
  std::vector<RlcNack> nacks;
  bool any_received = false;
  std::uint64_t highest_sn = 0;
  std::uint32_t highest_end = 0;  // end offset of the highest SN's furthest byte received
};

enum class EnqueueResult { Accepted, Dropped };

/// Transmitting side of an RLC entity. In AM mode HARQ-failed segments are
/// retransmitted once a status report confirms they are missing; in UM mode
/// they are discarded.
class RlcTransmitter {
 public:
  RlcTransmitter(std::uint64_t buffer_capacity_bytes, bool acknowledged_mode);

  /// Drop-tail admission against the new-data buffer.
  EnqueueResult enqueue(const Packet& pkt);

  /// Builds a TB payload of at most `grant_bytes`, serving retransmissions
  /// first. Packets straddling the boundary are split; the rest stays queued.
  std::vector<RlcSegment> segment(std::uint64_t grant_bytes);

  /// HARQ outcome for segments previously returned by segment().
  void on_harq_result(const std::vector<RlcSegment>& segments, bool delivered);

  void on_status(const StatusReport& report);

  std::uint64_t buffered_bytes() const { return new_bytes_; }
  std::uint64_t retx_bytes() const { return retx_bytes_; }
  std::uint64_t queued_bytes() const { return new_bytes_ + retx_bytes_; }
  std::uint64_t capacity() const { return capacity_; }
  bool acknowledged_mode() const { return am_; }
  /// SDUs awaiting acknowledgement (AM) or HARQ resolution (UM).
  std::size_t outstanding_sdus() const { return sdus_.size(); }
  std::uint64_t outstanding_bytes() const;
  std::uint64_t next_sn() const { return next_sn_; }
  /// Bytes of SDUs still held with SN >= first_sn.
  std::uint64_t bytes_from_sn(std::uint64_t first_sn) const;

  /// Packets lost inside the RAN (UM mode only).
  std::uint64_t lost_packets() const { return lost_packets_; }
  std::uint64_t lost_bytes() const { return lost_bytes_; }
  std::uint64_t arq_retransmitted_bytes() const { return arq_retx_bytes_; }
  void set_loss_callback(std::function<void(const Packet&)> cb) { on_loss_ = std::move(cb); }

 private:
  enum class SegState { InHarq, Delivered, Failed, QueuedRetx };
  struct TxSeg {
    std::uint32_t offset;
    std::uint32_t length;
    SegState state;
  };
  struct SduTx {
    Packet packet;
    std::uint32_t size = 0;
    std::uint32_t unsent_offset = 0;
    std::vector<TxSeg> segs;
  };
  struct Pending {
    std::uint64_t sn;
  };

  TxSeg* find_seg(SduTx& sdu, std::uint32_t offset, std::uint32_t length);
  void resolve_um(std::uint64_t sn);

  std::uint64_t capacity_;
  bool am_;
  std::uint64_t next_sn_ = 0;
  std::uint64_t new_bytes_ = 0;
  std::uint64_t retx_bytes_ = 0;
  std::deque<std::uint64_t> new_queue_;  // SNs with untransmitted bytes, FIFO
  std::deque<RlcNack> retx_queue_;
  std::map<std::uint64_t, SduTx> sdus_;
  std::uint64_t lost_packets_ = 0;
  std::uint64_t lost_bytes_ = 0;
  std::uint64_t arq_retx_bytes_ = 0;
  std::function<void(const Packet&)> on_loss_;
};

/// Receiving side: reassembles SDUs and releases them to PDCP strictly in SN
/// order. UM mode skips a hole after the reordering timeout.
class RlcReceiver {
 public:
  using DeliverFn = std::function<void(const Packet&)>;

  RlcReceiver(bool acknowledged_mode, SimTime um_reordering, DeliverFn deliver);

  void on_segment(const RlcSegment& seg, SimTime now);
  /// Periodic housekeeping (UM reordering timer).
  void tick(SimTime now);
  StatusReport status() const;

  std::uint64_t rx_next() const { return rx_next_; }
  std::uint64_t delivered_sdus() const { return delivered_; }
  std::uint64_t duplicate_segments() const { return duplicates_; }
  std::size_t pending_sdus() const { return sdus_.size(); }

 private:
  struct SduRx {
    std::uint32_t size = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ranges;  // merged [begin, end)
    std::uint32_t received = 0;
    Packet packet;
    bool complete() const { return received == size; }
  };

  void deliver_in_order(SimTime now);

  bool am_;
  SimTime um_reordering_;
  DeliverFn deliver_;
  std::uint64_t rx_next_ = 0;
  std::map<std::uint64_t, SduRx> sdus_;
  bool any_received_ = false;
  std::uint64_t highest_sn_ = 0;
  std::uint64_t delivered_ = 0;
  std::uint64_t duplicates_ = 0;
  SimTime reordering_started_ = kUnset;
};

}  // namespace mmw
