#include "mmw/harness/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace mmw {

void MetricsSeries::add_goodput(SimTime t, std::uint64_t bytes) {
  const auto idx = static_cast<std::size_t>(t.ns / window_.ns);
  if (idx >= window_bytes_.size()) window_bytes_.resize(idx + 1, 0);
  window_bytes_[idx] += bytes;
}

void MetricsSeries::finish(SimTime duration) {
  const auto n = static_cast<std::size_t>((duration.ns + window_.ns - 1) / window_.ns);
  window_bytes_.resize(n, 0);
}

std::vector<double> MetricsSeries::throughput_bps() const {
  std::vector<double> out;
  out.reserve(window_bytes_.size());
  for (auto b : window_bytes_) out.push_back(static_cast<double>(b) * 8.0 / window_.seconds());
  return out;
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(values.size())));
  return values[std::clamp<std::size_t>(rank, 1, values.size()) - 1];
}

Summary summarize(const MetricsSeries& m, SimTime duration) {
  Summary s;
  s.duration_s = duration.seconds();
  const auto tput = m.throughput_bps();
  s.windows = tput.size();
  if (!tput.empty()) {
    s.mean_throughput_bps = std::accumulate(tput.begin(), tput.end(), 0.0) / static_cast<double>(tput.size());
    s.peak_throughput_bps = *std::max_element(tput.begin(), tput.end());
  }

  std::vector<double> one_way;
  std::vector<double> ran;
  one_way.reserve(m.latency.size());
  ran.reserve(m.latency.size());
  for (const auto& r : m.latency) {
    one_way.push_back(r.one_way.seconds());
    ran.push_back(r.ran.seconds());
  }
  s.latency_samples = one_way.size();
  if (!one_way.empty()) {
    s.latency_mean_s = std::accumulate(one_way.begin(), one_way.end(), 0.0) / static_cast<double>(one_way.size());
  }
  s.latency_p50_s = percentile(one_way, 0.50);
  s.latency_p95_s = percentile(one_way, 0.95);
  s.latency_p99_s = percentile(one_way, 0.99);
  s.ran_latency_p50_s = percentile(ran, 0.50);
  s.ran_latency_p95_s = percentile(ran, 0.95);
  s.ran_latency_p99_s = percentile(ran, 0.99);

  s.ledger = m.ledger;
  s.lost_packets = m.ledger.dropped_packets;
  s.loss_rate = m.ledger.sent_packets == 0
                    ? 0.0
                    : static_cast<double>(m.ledger.dropped_packets) / static_cast<double>(m.ledger.sent_packets);
  s.retransmissions = m.tcp.retransmitted_segments;
  s.fast_retransmits = m.tcp.fast_retransmits;
  s.rto_events = m.tcp.rto_events;

  s.target_rate_bps = m.target_rate_bps;
  if (m.first_send != kUnset) {
    s.first_send_s = m.first_send.seconds();
    if (s.target_rate_bps > 0.0) {
      for (std::size_t i = 0; i < tput.size(); ++i) {
        if (tput[i] >= 0.95 * s.target_rate_bps) {
          s.time_to_rate_s = std::max(0.0, static_cast<double>(i) * m.window().seconds() - s.first_send_s);
          break;
        }
      }
    }
  }
  return s;
}

std::string format_summary(const Summary& s) {
  std::string out;
  char buf[160];
  auto line = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%s=%.9g\n", key, v);
    out += buf;
  };
  auto uline = [&](const char* key, std::uint64_t v) {
    std::snprintf(buf, sizeof buf, "%s=%llu\n", key, static_cast<unsigned long long>(v));
    out += buf;
  };
  line("duration_s", s.duration_s);
  uline("windows", s.windows);
  line("mean_throughput_bps", s.mean_throughput_bps);
  line("peak_throughput_bps", s.peak_throughput_bps);
  uline("latency_samples", s.latency_samples);
  line("latency_mean_s", s.latency_mean_s);
  line("latency_p50_s", s.latency_p50_s);
  line("latency_p95_s", s.latency_p95_s);
  line("latency_p99_s", s.latency_p99_s);
  line("ran_latency_p50_s", s.ran_latency_p50_s);
  line("ran_latency_p95_s", s.ran_latency_p95_s);
  line("ran_latency_p99_s", s.ran_latency_p99_s);
  uline("lost_packets", s.lost_packets);
  line("loss_rate", s.loss_rate);
  uline("retransmissions", s.retransmissions);
  uline("fast_retransmits", s.fast_retransmits);
  uline("rto_events", s.rto_events);
  line("target_rate_bps", s.target_rate_bps);
  line("first_send_s", s.first_send_s);
  line("time_to_rate_s", s.time_to_rate_s);
  uline("ledger_sent_packets", s.ledger.sent_packets);
  uline("ledger_delivered_packets", s.ledger.delivered_packets);
  uline("ledger_dropped_packets", s.ledger.dropped_packets);
  uline("ledger_inflight_packets", s.ledger.inflight_packets);
  uline("ledger_sent_bytes", s.ledger.sent_bytes);
  uline("ledger_delivered_bytes", s.ledger.delivered_bytes);
  uline("ledger_dropped_bytes", s.ledger.dropped_bytes);
  uline("ledger_inflight_bytes", s.ledger.inflight_bytes);
  out += std::string("ledger_balanced=") + (s.ledger.balanced() ? "true" : "false") + "\n";
  return out;
}

}  // namespace mmw
