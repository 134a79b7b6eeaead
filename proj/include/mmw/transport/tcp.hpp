#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <vector>

#include "mmw/packet.hpp"
#include "mmw/sim/simulator.hpp"
#include "mmw/transport/cubic.hpp"
#include "mmw/transport/rtt_estimator.hpp"

namespace mmw {

enum class TcpVariant { NewReno, Cubic };

const char* to_string(TcpVariant v);

struct TcpConfig {
  TcpVariant variant = TcpVariant::NewReno;
  std::uint32_t mss = 1400;
  std::uint32_t header_bytes = 40;
  std::uint32_t initial_cwnd_segments = 10;
  std::uint64_t initial_ssthresh_bytes = UINT64_MAX / 4;
  std::uint64_t rwnd_bytes = 6'000'000;
  SimTime min_rto = seconds(1.0);
  SimTime max_rto = seconds(60.0);
  int dupack_threshold = 3;
  /// Application write rate; 0 means an infinite-backlog bulk transfer.
  double app_rate_bps = 0.0;
  /// Written-but-unsent bytes the socket holds before the writer blocks.
  std::uint64_t app_backlog_bytes = 1'000'000;
  /// Grow cwnd only while the window, not the application, limits sending.
  bool cwnd_validation = true;
  CubicParams cubic;

  void validate() const;
};

enum class TcpEvent { ACK, DUPACK, FASTRTX, PARTIAL, RTO, DELIVER };

const char* to_string(TcpEvent e);

struct TcpLogRow {
  SimTime t;
  TcpEvent event;
  std::uint64_t cwnd_bytes;
  std::uint64_t ssthresh_bytes;
  double rto_s;
  std::uint64_t inflight_bytes;
};

/// Per-connection event log. ACK and DELIVER rows are thinned to at most one
/// per `routine_interval`; all other events are always kept.
class TcpEventLog {
 public:
  explicit TcpEventLog(SimTime routine_interval = milliseconds(1)) : interval_(routine_interval) {}
  /// `always` bypasses thinning (used for the ACK that ends a recovery).
  void record(const TcpLogRow& row, bool always = false);
  const std::vector<TcpLogRow>& rows() const { return rows_; }

 private:
  SimTime interval_;
  SimTime last_ack_ = kUnset;
  SimTime last_deliver_ = kUnset;
  std::vector<TcpLogRow> rows_;
};

struct TcpCounters {
  std::uint64_t segments_sent = 0;
  std::uint64_t retransmitted_segments = 0;
  std::uint64_t fast_retransmits = 0;
  std::uint64_t partial_acks = 0;
  std::uint64_t rto_events = 0;
  std::uint64_t spurious_rtos = 0;
  std::uint64_t rtt_samples = 0;
  std::uint64_t karn_skipped = 0;
  double min_rtt_s = 0.0;  // 0 until the first sample
  /// Fast-recovery rounds: time from each hole's retransmission to the ACK
  /// covering it. Instrumentation only; Karn's rule keeps these out of the RTO.
  std::uint64_t recovery_rounds = 0;
  double recovery_round_sum_s = 0.0;
};

/// NewReno (RFC 6582, restarting the RTO on every partial ACK) or Cubic
/// sender over a byte sequence space.
class TcpSender {
 public:
  using OutputFn = std::function<void(Packet)>;

  TcpSender(Simulator& sim, TcpConfig cfg, int flow, OutputFn output, TcpEventLog* log = nullptr);

  TcpSender(const TcpSender&) = delete;
  TcpSender& operator=(const TcpSender&) = delete;

  /// Starts the application writer and sends the initial window.
  void start();
  void on_ack(const Packet& ack);
  void log_event(TcpEvent e, bool always = false);

  std::uint64_t cwnd() const { return static_cast<std::uint64_t>(cwnd_); }
  double cwnd_exact() const { return cwnd_; }
  std::uint64_t ssthresh() const { return ssthresh_; }
  std::uint64_t snd_una() const { return snd_una_; }
  std::uint64_t snd_nxt() const { return snd_nxt_; }
  std::uint64_t snd_max() const { return snd_max_; }
  std::uint64_t inflight() const { return snd_nxt_ - snd_una_; }
  std::uint64_t app_written() const;
  bool in_recovery() const { return in_recovery_; }
  bool in_slow_start() const { return cwnd_ < static_cast<double>(ssthresh_); }
  const RttEstimator& rtt() const { return rtt_; }
  const TcpCounters& counters() const { return counters_; }
  const TcpConfig& config() const { return cfg_; }
  double cubic_w_max() const { return w_max_; }
  bool rto_pending() const { return sim_.pending(rto_timer_); }

  /// Test hooks: place the connection in a given window state.
  void force_window(double cwnd_bytes, std::uint64_t ssthresh_bytes);

 private:
  struct SentSegment {
    std::uint64_t seq;
    std::uint32_t len;
    SimTime sent;
    bool retransmitted;
  };

  void app_write();
  void try_send();
  void send_segment(std::uint64_t seq, bool retransmission);
  void on_new_ack(std::uint64_t ack);
  void on_dupack();
  void on_rto();
  void grow_window();
  void restart_rto_timer();
  SentSegment* find_segment(std::uint64_t seq);

  Simulator& sim_;
  TcpConfig cfg_;
  int flow_;
  OutputFn output_;
  TcpEventLog* log_;
  RttEstimator rtt_;

  double cwnd_;
  std::uint64_t ssthresh_;
  std::uint64_t snd_una_ = 0;
  std::uint64_t snd_nxt_ = 0;
  std::uint64_t snd_max_ = 0;
  std::uint64_t recover_ = 0;
  bool in_recovery_ = false;
  /// F-RTO detection (without the window undo). After a timeout the first new
  /// ACK sends new data instead of resending the flight; if the next ACK also
  /// advances, the original flight survived and go-back-N is skipped. A
  /// duplicate ACK in between falls back to go-back-N.
  int rto_probe_ = 0;
  int dupacks_ = 0;
  bool cwnd_limited_ = true;

  // Cubic epoch; the epoch starts on the first congestion-avoidance ACK after a loss.
  double w_max_ = 0.0;
  double cubic_k_ = 0.0;
  SimTime epoch_start_ = kUnset;

  std::uint64_t app_written_ = 0;
  std::deque<SentSegment> segments_;
  EventHandle rto_timer_;
  EventHandle app_timer_;
  std::uint64_t next_packet_id_ = 1;
  TcpCounters counters_;
};

/// Cumulative-ACK receiver with out-of-order buffering; ACKs every segment.
class TcpReceiver {
 public:
  using OutputFn = std::function<void(Packet)>;
  /// Called for every in-order advance with the number of new bytes.
  using DeliverFn = std::function<void(std::uint64_t new_bytes)>;

  TcpReceiver(Simulator& sim, int flow, OutputFn output, DeliverFn deliver = {}, std::uint32_t ack_bytes = 40);

  void on_data(const Packet& pkt);

  std::uint64_t rcv_nxt() const { return rcv_nxt_; }
  std::uint64_t duplicate_segments() const { return duplicates_; }
  std::uint64_t data_segments() const { return data_segments_; }
  /// False if any in-order delivery ever overlapped or skipped stream bytes.
  bool stream_consistent() const { return consistent_; }
  /// Order-sensitive digest of the delivered (seq, len) sequence.
  std::uint64_t stream_digest() const { return digest_; }

 private:
  void deliver(std::uint64_t seq, std::uint32_t len);

  Simulator& sim_;
  int flow_;
  OutputFn output_;
  DeliverFn on_deliver_;
  std::uint32_t ack_bytes_;
  std::uint64_t rcv_nxt_ = 0;
  std::map<std::uint64_t, std::uint32_t> out_of_order_;
  std::uint64_t duplicates_ = 0;
  std::uint64_t data_segments_ = 0;
  std::uint64_t next_packet_id_ = 1;
  bool consistent_ = true;
  std::uint64_t digest_ = 0;
};

}  // namespace mmw
