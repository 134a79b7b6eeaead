#pragma once

#include <functional>

#include "mmw/packet.hpp"
#include "mmw/sim/simulator.hpp"

namespace mmw {

enum class CoreDirection { Downlink, Uplink };

/// Wired path between the remote host and the BS (gateways collapsed into one
/// pipe): per-direction FIFO serialization at `capacity_bps` followed by a
/// fixed one-way delay. Lossless and order-preserving.
class CoreLink {
 public:
  using DeliverFn = std::function<void(Packet)>;

  struct Config {
    SimTime one_way_delay = milliseconds(20);
    double capacity_bps = 10e9;
  };

  /// Throws std::invalid_argument for non-positive capacity or negative delay.
  CoreLink(Simulator& sim, Config cfg, DeliverFn to_bs, DeliverFn to_host);

  /// Returns the scheduled delivery time.
  SimTime send(Packet pkt, CoreDirection direction);

  const Config& config() const { return cfg_; }

 private:
  Simulator& sim_;
  Config cfg_;
  DeliverFn to_bs_;
  DeliverFn to_host_;
  SimTime dl_busy_until_{};
  SimTime ul_busy_until_{};
};

}  // namespace mmw
