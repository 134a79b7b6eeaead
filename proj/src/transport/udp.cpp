#include "mmw/transport/udp.hpp"

#include <stdexcept>

namespace mmw {

UdpSource::UdpSource(Simulator& sim, double rate_bps, std::uint32_t packet_bytes, int flow, OutputFn output)
    : sim_(sim), rate_bps_(rate_bps), packet_bytes_(packet_bytes), flow_(flow), output_(std::move(output)) {
  if (rate_bps_ < 0) throw std::invalid_argument("UDP rate must be >= 0");
  if (packet_bytes_ == 0) throw std::invalid_argument("UDP packet size must be positive");
  if (rate_bps_ > 0) interval_ = transmission_time(packet_bytes_, rate_bps_);
}

void UdpSource::start() {
  if (rate_bps_ <= 0) return;
  timer_ = sim_.schedule(SimTime{}, [this] { tick(); });
}

void UdpSource::stop() { sim_.cancel(timer_); }

void UdpSource::tick() {
  Packet p;
  p.id = ++sent_;
  p.flow = flow_;
  p.kind = PacketKind::Udp;
  p.seq = p.id;
  p.size_bytes = packet_bytes_;
  p.payload = packet_bytes_;
  p.created = sim_.now();
  output_(std::move(p));
  timer_ = sim_.schedule(interval_, [this] { tick(); });
}

void UdpSink::on_packet(const Packet& p) {
  ++packets_;
  bytes_ += p.size_bytes;
  if (on_receive_) on_receive_(p);
}

}  // namespace mmw
