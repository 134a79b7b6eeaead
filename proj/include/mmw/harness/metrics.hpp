#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmw/channel/geometry.hpp"
#include "mmw/sim/time.hpp"
#include "mmw/transport/tcp.hpp"

namespace mmw {

/// One application packet received at the UE.
struct LatencyRecord {
  SimTime t_rx;
  SimTime one_way;  // sender hand-off to receiver
  SimTime ran;      // RLC ingress to PDCP delivery
  LinkState state_at_rlc_in = LinkState::LOS;
  bool backlogged = false;  // other bytes were queued at RLC ingress
};

struct SinrRecord {
  SimTime t;
  double sinr_db;
  LinkState state;
};

/// Periodic snapshot of sender and RLC state.
struct QueueRecord {
  SimTime t;
  std::uint64_t dl_rlc_bytes;
  std::uint64_t cwnd_bytes;
  std::uint64_t ssthresh_bytes;
};

/// Downlink data accounting: every packet the sender hands to the network is
/// delivered to the UE, dropped, or still inside the core or RAN.
struct ByteLedger {
  std::uint64_t sent_packets = 0;
  std::uint64_t sent_bytes = 0;
  std::uint64_t delivered_packets = 0;
  std::uint64_t delivered_bytes = 0;
  std::uint64_t dropped_packets = 0;
  std::uint64_t dropped_bytes = 0;
  std::uint64_t inflight_packets = 0;
  std::uint64_t inflight_bytes = 0;

  bool balanced() const {
    return sent_packets == delivered_packets + dropped_packets + inflight_packets &&
           sent_bytes == delivered_bytes + dropped_bytes + inflight_bytes;
  }
};

struct DropRecord {
  SimTime t;
  std::uint64_t seq;  // TCP sequence number, or packet id for UDP
};

class MetricsSeries {
 public:
  explicit MetricsSeries(SimTime window = milliseconds(100)) : window_(window) {}

  void add_goodput(SimTime t, std::uint64_t bytes);
  /// Sizes the window series to cover [0, duration).
  void finish(SimTime duration);

  SimTime window() const { return window_; }
  const std::vector<std::uint64_t>& window_bytes() const { return window_bytes_; }
  std::vector<double> throughput_bps() const;

  std::vector<LatencyRecord> latency;
  std::vector<SinrRecord> sinr;
  std::vector<QueueRecord> queue;
  std::vector<TcpLogRow> tcp_log;
  std::vector<DropRecord> dl_drops;

  ByteLedger ledger;
  std::uint64_t ul_drops = 0;
  std::uint64_t ran_losses = 0;
  std::uint64_t harq_failures = 0;
  std::uint64_t arq_retransmitted_bytes = 0;
  TcpCounters tcp;
  SimTime first_send = kUnset;
  double target_rate_bps = 0.0;

 private:
  SimTime window_;
  std::vector<std::uint64_t> window_bytes_;
};

/// Nearest-rank percentile (p in (0, 1]) of an unsorted sample; 0 if empty.
double percentile(std::vector<double> values, double p);

struct Summary {
  double duration_s = 0.0;
  std::size_t windows = 0;
  double mean_throughput_bps = 0.0;
  double peak_throughput_bps = 0.0;
  std::size_t latency_samples = 0;
  double latency_mean_s = 0.0;
  double latency_p50_s = 0.0;
  double latency_p95_s = 0.0;
  double latency_p99_s = 0.0;
  double ran_latency_p50_s = 0.0;
  double ran_latency_p95_s = 0.0;
  double ran_latency_p99_s = 0.0;
  std::uint64_t lost_packets = 0;
  double loss_rate = 0.0;
  std::uint64_t retransmissions = 0;
  std::uint64_t fast_retransmits = 0;
  std::uint64_t rto_events = 0;
  double target_rate_bps = 0.0;
  double first_send_s = -1.0;
  /// Start of the first window at >= 95% of the target rate, measured from
  /// the first send; -1 if never reached.
  double time_to_rate_s = -1.0;
  ByteLedger ledger;
};

/// Computes the summary from the series alone.
Summary summarize(const MetricsSeries& m, SimTime duration);

/// Key-value text form written to summary.txt.
std::string format_summary(const Summary& s);

}  // namespace mmw
