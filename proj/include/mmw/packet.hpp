#pragma once

#include <cstdint>

#include "mmw/channel/geometry.hpp"
#include "mmw/sim/time.hpp"

namespace mmw {

enum class PacketKind : std::uint8_t { TcpData, TcpAck, Udp };

inline constexpr SimTime kUnset{-1};

/// IP-layer datagram with the timestamp trail used for latency accounting.
struct Packet {
  std::uint64_t id = 0;
  int flow = 0;
  PacketKind kind = PacketKind::Udp;
  std::uint32_t size_bytes = 0;  // on the wire, headers included

  // TCP fields (bytes). `seq` is the first payload byte, `ack` the next expected byte.
  std::uint64_t seq = 0;
  std::uint32_t payload = 0;
  std::uint64_t ack = 0;
  bool retransmission = false;

  SimTime created = kUnset;   // handed to the network by the sender
  SimTime gateway_in = kUnset;
  SimTime rlc_in = kUnset;
  SimTime delivered = kUnset;  // out of PDCP at the far end of the radio link
  LinkState state_at_rlc_in = LinkState::LOS;
  std::uint64_t rlc_backlog_at_in = 0;  // bytes already queued ahead of this packet
};

}  // namespace mmw
