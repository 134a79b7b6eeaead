#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <vector>

#include "mmw/channel/channel_model.hpp"
#include "mmw/ran/amc.hpp"
#include "mmw/ran/frame_scheduler.hpp"
#include "mmw/ran/harq.hpp"
#include "mmw/ran/ran_config.hpp"
#include "mmw/ran/rlc.hpp"
#include "mmw/sim/simulator.hpp"

namespace mmw {

/// Single-BS, single-UE radio stack: RLC (AM or UM) in both directions over a
/// slotted MAC with AMC from delayed CQI and HARQ. PDCP is a pass-through.
class RadioLink {
 public:
  using DeliverFn = std::function<void(const Packet&)>;

  struct Observer {
    std::function<void(const ChannelSample&)> on_slot;
    std::function<void(Direction, const Packet&)> on_drop;
    std::function<void(Direction, const Packet&)> on_ran_loss;
  };

  RadioLink(Simulator& sim, const ChannelModel& channel, RanConfig cfg, DeliverFn dl_deliver, DeliverFn ul_deliver,
            Observer observer = {});

  RadioLink(const RadioLink&) = delete;
  RadioLink& operator=(const RadioLink&) = delete;

  /// Schedules the slot loop, starting at the current time.
  void start();

  EnqueueResult send_dl(Packet pkt);
  EnqueueResult send_ul(Packet pkt);

  const RlcTransmitter& dl_tx() const { return dl_.tx; }
  const RlcTransmitter& ul_tx() const { return ul_.tx; }
  const RlcReceiver& dl_rx() const { return dl_.rx; }
  const RlcReceiver& ul_rx() const { return ul_.rx; }
  const HarqEntity& dl_harq() const { return dl_.harq; }
  const HarqEntity& ul_harq() const { return ul_.harq; }
  const std::optional<CqiReport>& current_cqi() const { return cqi_; }
  std::uint64_t slots_run() const { return slot_; }
  std::uint64_t dl_slots() const { return dl_slot_count_; }
  std::uint64_t ul_slots() const { return ul_slot_count_; }
  const RanConfig& config() const { return cfg_; }

 private:
  struct Side {
    Side(const RanConfig& cfg, Simulator& sim, DeliverFn deliver);
    RlcTransmitter tx;
    RlcReceiver rx;
    HarqEntity harq;
    std::vector<std::vector<RlcSegment>> decoded;  // TB payloads reaching the receiver next slot
    std::deque<std::pair<SimTime, StatusReport>> status_in_flight;
  };

  void on_slot();
  void transmit(Side& side, const ChannelSample& sample);
  EnqueueResult admit(Side& side, Direction dir, Packet pkt);

  Simulator& sim_;
  const ChannelModel& channel_;
  RanConfig cfg_;
  Observer observer_;
  Side dl_;
  Side ul_;
  std::uint64_t slot_ = 0;
  std::vector<SlotPlan> plan_;
  std::optional<CqiReport> cqi_;
  LinkState last_base_state_ = LinkState::LOS;
  std::deque<CqiReport> cqi_pipeline_;
  std::int64_t cqi_period_slots_;
  std::int64_t status_period_slots_;
  std::uint64_t dl_slot_count_ = 0;
  std::uint64_t ul_slot_count_ = 0;
};

}  // namespace mmw
