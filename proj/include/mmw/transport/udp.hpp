#pragma once

#include <cstdint>
#include <functional>

#include "mmw/packet.hpp"
#include "mmw/sim/simulator.hpp"

namespace mmw {

/// Constant-bit-rate source: one `packet_bytes` datagram every
/// packet_bytes * 8 / rate seconds, no jitter. A zero rate emits nothing.
class UdpSource {
 public:
  using OutputFn = std::function<void(Packet)>;

  UdpSource(Simulator& sim, double rate_bps, std::uint32_t packet_bytes, int flow, OutputFn output);

  void start();
  void stop();

  SimTime interval() const { return interval_; }
  std::uint64_t packets_sent() const { return sent_; }
  std::uint64_t bytes_sent() const { return sent_ * packet_bytes_; }

 private:
  void tick();

  Simulator& sim_;
  double rate_bps_;
  std::uint32_t packet_bytes_;
  int flow_;
  OutputFn output_;
  SimTime interval_{};
  std::uint64_t sent_ = 0;
  EventHandle timer_;
};

/// Counts datagrams and reports each one to `on_receive`.
class UdpSink {
 public:
  using ReceiveFn = std::function<void(const Packet&)>;

  explicit UdpSink(ReceiveFn on_receive = {}) : on_receive_(std::move(on_receive)) {}

  void on_packet(const Packet& p);
  std::uint64_t packets() const { return packets_; }
  std::uint64_t bytes() const { return bytes_; }

 private:
  ReceiveFn on_receive_;
  std::uint64_t packets_ = 0;
  std::uint64_t bytes_ = 0;
};

}  // namespace mmw
