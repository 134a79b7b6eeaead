#include "mmw/corenet/core_link.hpp"

#include <algorithm>
#include <stdexcept>

namespace mmw {

CoreLink::CoreLink(Simulator& sim, Config cfg, DeliverFn to_bs, DeliverFn to_host)
    : sim_(sim), cfg_(cfg), to_bs_(std::move(to_bs)), to_host_(std::move(to_host)) {
  if (!(cfg_.capacity_bps > 0.0)) throw std::invalid_argument("core link capacity must be positive");
  if (cfg_.one_way_delay.ns < 0) throw std::invalid_argument("core link delay must be non-negative");
}

SimTime CoreLink::send(Packet pkt, CoreDirection direction) {
  if (pkt.size_bytes == 0) throw std::invalid_argument("core link packet must have positive length");
  const bool down = direction == CoreDirection::Downlink;
  SimTime& busy = down ? dl_busy_until_ : ul_busy_until_;
  const SimTime start = std::max(sim_.now(), busy);
  busy = start + transmission_time(pkt.size_bytes, cfg_.capacity_bps);
  const SimTime arrival = busy + cfg_.one_way_delay;
  if (down) pkt.gateway_in = sim_.now();
  auto& sink = down ? to_bs_ : to_host_;
  sim_.schedule_at(arrival, [&sink, p = std::move(pkt)]() mutable { sink(std::move(p)); });
  return arrival;
}

}  // namespace mmw
