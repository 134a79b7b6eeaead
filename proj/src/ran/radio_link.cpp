#include "mmw/ran/radio_link.hpp"

#include <algorithm>

namespace mmw {

namespace {
std::int64_t period_in_slots(SimTime period, SimTime slot) { return std::max<std::int64_t>(1, period.ns / slot.ns); }
}  // namespace

RadioLink::Side::Side(const RanConfig& cfg, Simulator& sim, DeliverFn deliver)
    : tx(cfg.rlc_buffer_bytes, cfg.rlc_am),
      rx(cfg.rlc_am, cfg.rlc_um_reordering,
         [&sim, deliver = std::move(deliver)](const Packet& p) {
           Packet out = p;
           out.delivered = sim.now();
           if (deliver) deliver(out);
         }),
      harq(cfg.harq_processes, cfg.harq_feedback_slots, cfg.max_harq_tx, cfg.harq_combining_gain_db) {}

RadioLink::RadioLink(Simulator& sim, const ChannelModel& channel, RanConfig cfg, DeliverFn dl_deliver,
                     DeliverFn ul_deliver, Observer observer)
    : sim_(sim),
      channel_(channel),
      cfg_((cfg.validate(), cfg)),
      observer_(std::move(observer)),
      dl_(cfg_, sim, std::move(dl_deliver)),
      ul_(cfg_, sim, std::move(ul_deliver)),
      cqi_period_slots_(period_in_slots(cfg_.cqi_period, cfg_.slot)),
      status_period_slots_(period_in_slots(cfg_.rlc_status_period, cfg_.slot)) {
  if (observer_.on_ran_loss) {
    dl_.tx.set_loss_callback([this](const Packet& p) { observer_.on_ran_loss(Direction::DL, p); });
    ul_.tx.set_loss_callback([this](const Packet& p) { observer_.on_ran_loss(Direction::UL, p); });
  }
}

void RadioLink::start() {
  sim_.schedule(SimTime{}, [this] { on_slot(); });
}

EnqueueResult RadioLink::admit(Side& side, Direction dir, Packet pkt) {
  pkt.rlc_in = sim_.now();
  pkt.state_at_rlc_in = last_base_state_;
  pkt.rlc_backlog_at_in = side.tx.queued_bytes();
  const auto result = side.tx.enqueue(pkt);
  if (result == EnqueueResult::Dropped && observer_.on_drop) observer_.on_drop(dir, pkt);
  return result;
}

EnqueueResult RadioLink::send_dl(Packet pkt) { return admit(dl_, Direction::DL, std::move(pkt)); }
EnqueueResult RadioLink::send_ul(Packet pkt) { return admit(ul_, Direction::UL, std::move(pkt)); }

void RadioLink::on_slot() {
  const SimTime now = sim_.now();

  // Payloads decoded during the previous slot arrive now.
  for (Side* side : {&dl_, &ul_}) {
    auto batch = std::move(side->decoded);
    side->decoded.clear();
    for (const auto& tb : batch) {
      for (const auto& seg : tb) side->rx.on_segment(seg, now);
    }
    while (!side->status_in_flight.empty() && side->status_in_flight.front().first <= now) {
      side->tx.on_status(side->status_in_flight.front().second);
      side->status_in_flight.pop_front();
    }
  }

  const ChannelSample sample = channel_.sample(now);
  last_base_state_ = sample.base_state;
  if (observer_.on_slot) observer_.on_slot(sample);

  if (static_cast<std::int64_t>(slot_ % static_cast<std::uint64_t>(cqi_period_slots_)) == 0) {
    cqi_pipeline_.push_back({sample.sinr_db, sample.state, now, now + cfg_.cqi_delay});
  }
  while (!cqi_pipeline_.empty() && cqi_pipeline_.front().applied_at <= now) {
    cqi_ = cqi_pipeline_.front();
    cqi_pipeline_.pop_front();
  }

  dl_.rx.tick(now);
  ul_.rx.tick(now);

  for (Side* side : {&dl_, &ul_}) {
    for (auto& res : side->harq.process_feedback(slot_)) side->tx.on_harq_result(res.tb.segments, res.delivered);
  }

  const auto frame_slot = static_cast<int>(slot_ % static_cast<std::uint64_t>(cfg_.slots_per_frame));
  if (frame_slot == 0) {
    const std::uint64_t cap = slot_capacity_bytes(amc_select(cqi_, cfg_), cfg_);
    auto demand = [](const Side& s) {
      return s.tx.queued_bytes() + (s.harq.has_pending_retransmission() ? 1 : 0);
    };
    plan_ = schedule_frame(cfg_.tti_mode, demand(dl_), demand(ul_), cap, cfg_.slots_per_frame, cfg_.fixed_dl_slots);
  }
  if (plan_[static_cast<std::size_t>(frame_slot)].direction == Direction::DL) {
    ++dl_slot_count_;
    transmit(dl_, sample);
  } else {
    ++ul_slot_count_;
    transmit(ul_, sample);
  }

  if (cfg_.rlc_am && static_cast<std::int64_t>(slot_ % static_cast<std::uint64_t>(status_period_slots_)) == 0 &&
      sample.state != LinkState::OUTAGE) {
    for (Side* side : {&dl_, &ul_}) side->status_in_flight.emplace_back(now + cfg_.slot, side->rx.status());
  }

  ++slot_;
  sim_.schedule(cfg_.slot, [this] { on_slot(); });
}

void RadioLink::transmit(Side& side, const ChannelSample& sample) {
  const double eff = amc_select(cqi_, cfg_);
  if (eff <= 0.0) return;  // scheduler believes the link is down

  if (auto proc = side.harq.ready_retransmission()) {
    if (side.harq.retransmit(*proc, slot_, sample.sinr_db, sample.state)) {
      side.decoded.push_back(side.harq.block(*proc).segments);
    }
    return;
  }
  const auto proc = side.harq.free_process();
  if (!proc) return;  // all processes waiting on feedback
  const std::uint64_t grant = slot_capacity_bytes(eff, cfg_);
  auto segments = side.tx.segment(grant);
  if (segments.empty()) return;
  TransportBlock tb;
  tb.tb_bytes = grant;
  tb.mcs_eff = eff;
  tb.segments = std::move(segments);
  if (side.harq.transmit_new(*proc, std::move(tb), slot_, sample.sinr_db, sample.state)) {
    side.decoded.push_back(side.harq.block(*proc).segments);
  }
}

}  // namespace mmw
