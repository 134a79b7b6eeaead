#include "mmw/harness/runner.hpp"

#include <memory>
#include <optional>

#include "mmw/corenet/core_link.hpp"
#include "mmw/harness/scenarios.hpp"
#include "mmw/ran/radio_link.hpp"
#include "mmw/transport/tcp.hpp"
#include "mmw/transport/udp.hpp"

namespace mmw {

namespace {

constexpr int kFlow = 1;

TcpConfig tcp_config(const ScenarioConfig& cfg) {
  TcpConfig t = cfg.tcp;
  t.variant = cfg.transport == TransportKind::Cubic ? TcpVariant::Cubic : TcpVariant::NewReno;
  t.app_rate_bps = cfg.rate_bps;
  return t;
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  RunResult result;
  MetricsSeries& m = result.metrics;
  m = MetricsSeries(cfg.throughput_window);
  m.target_rate_bps = cfg.rate_bps;

  Simulator sim;
  RngService rng(cfg.seed);
  const auto channel = make_channel(cfg, rng);
  const bool is_tcp = cfg.transport != TransportKind::Udp;

  TcpEventLog tcp_log;
  std::unique_ptr<TcpSender> sender;
  std::unique_ptr<TcpReceiver> receiver;
  std::unique_ptr<UdpSource> udp_source;
  UdpSink udp_sink([&](const Packet& p) { m.add_goodput(sim.now(), p.size_bytes); });

  std::unique_ptr<CoreLink> core;
  std::unique_ptr<RadioLink> radio;
  std::uint64_t core_dl_packets = 0;
  std::uint64_t core_dl_bytes = 0;
  std::uint64_t ran_dl_packets = 0;  // admitted, not yet delivered or lost
  std::uint64_t ran_dl_bytes = 0;

  auto to_ue = [&](const Packet& p) {
    --ran_dl_packets;
    ran_dl_bytes -= p.size_bytes;
    ++m.ledger.delivered_packets;
    m.ledger.delivered_bytes += p.size_bytes;
    const SimTime now = sim.now();
    m.latency.push_back({now, now - p.created, now - p.rlc_in, p.state_at_rlc_in, p.rlc_backlog_at_in > 0});
    if (p.kind == PacketKind::TcpData) receiver->on_data(p);
    else udp_sink.on_packet(p);
  };
  auto to_core_ul = [&](const Packet& p) { core->send(p, CoreDirection::Uplink); };

  RadioLink::Observer observer;
  observer.on_slot = [&](const ChannelSample& s) { m.sinr.push_back({s.t, s.sinr_db, s.state}); };
  observer.on_drop = [&](Direction dir, const Packet& p) {
    if (dir == Direction::UL) {
      ++m.ul_drops;
      return;
    }
    ++m.ledger.dropped_packets;
    m.ledger.dropped_bytes += p.size_bytes;
    m.dl_drops.push_back({sim.now(), p.kind == PacketKind::Udp ? p.id : p.seq});
  };
  observer.on_ran_loss = [&](Direction dir, const Packet& p) {
    ++m.ran_losses;
    if (dir == Direction::UL) return;
    --ran_dl_packets;
    ran_dl_bytes -= p.size_bytes;
    ++m.ledger.dropped_packets;
    m.ledger.dropped_bytes += p.size_bytes;
  };

  RanConfig ran = cfg.ran;
  ran.bandwidth_hz = cfg.phy.bandwidth_hz;
  ran.outage_threshold_db = cfg.phy.outage_threshold_db;
  radio = std::make_unique<RadioLink>(sim, *channel, ran, to_ue, to_core_ul, observer);

  auto to_bs = [&](Packet p) {
    --core_dl_packets;
    core_dl_bytes -= p.size_bytes;
    if (radio->send_dl(p) == EnqueueResult::Accepted) {
      ++ran_dl_packets;
      ran_dl_bytes += p.size_bytes;
    }
  };
  auto to_host = [&](Packet p) {
    if (sender) sender->on_ack(p);
  };
  core = std::make_unique<CoreLink>(sim, cfg.core, to_bs, to_host);

  auto host_send = [&](Packet p) {
    if (m.first_send == kUnset) m.first_send = sim.now();
    ++m.ledger.sent_packets;
    m.ledger.sent_bytes += p.size_bytes;
    ++core_dl_packets;
    core_dl_bytes += p.size_bytes;
    core->send(std::move(p), CoreDirection::Downlink);
  };

  if (is_tcp) {
    sender = std::make_unique<TcpSender>(sim, tcp_config(cfg), kFlow, host_send, &tcp_log);
    receiver = std::make_unique<TcpReceiver>(
        sim, kFlow, [&](Packet ack) { radio->send_ul(std::move(ack)); },
        [&](std::uint64_t bytes) { m.add_goodput(sim.now(), bytes); });
  } else {
    udp_source = std::make_unique<UdpSource>(sim, cfg.rate_bps, cfg.udp_packet_bytes, kFlow, host_send);
  }

  // 1 ms snapshots of the DL queue and window.
  std::function<void()> snapshot = [&] {
    m.queue.push_back({sim.now(), radio->dl_tx().queued_bytes(), sender ? sender->cwnd() : 0,
                       sender ? sender->ssthresh() : 0});
    sim.schedule(milliseconds(1), snapshot);
  };

  // The run covers [0, duration); a zero duration starts nothing.
  if (cfg.duration > SimTime{}) {
    radio->start();
    if (sender) sender->start();
    if (udp_source) udp_source->start();
    sim.schedule(SimTime{}, snapshot);
    sim.run_until(cfg.duration - nanoseconds(1));
  }
  result.events = sim.executed_total();

  // In-flight DL data. In AM mode the RAN share comes from RLC state: every SN
  // at or above the receiver's next expected SN is still held by the sender.
  const auto& tx = radio->dl_tx();
  const auto& rx = radio->dl_rx();
  std::uint64_t ran_packets = ran_dl_packets;
  std::uint64_t ran_bytes = ran_dl_bytes;
  if (cfg.ran.rlc_am) {
    ran_packets = tx.next_sn() - rx.rx_next();
    ran_bytes = tx.bytes_from_sn(rx.rx_next());
  }
  m.ledger.inflight_packets = core_dl_packets + ran_packets;
  m.ledger.inflight_bytes = core_dl_bytes + ran_bytes;

  m.harq_failures = radio->dl_harq().failures() + radio->ul_harq().failures();
  m.arq_retransmitted_bytes = tx.arq_retransmitted_bytes();
  if (sender) {
    m.tcp = sender->counters();
    m.tcp_log = tcp_log.rows();
    result.stream_consistent = receiver->stream_consistent();
    result.stream_digest = receiver->stream_digest();
    result.receiver_duplicates = receiver->duplicate_segments();
  }
  m.finish(cfg.duration);
  result.summary = summarize(m, cfg.duration);
  return result;
}

}  // namespace mmw
