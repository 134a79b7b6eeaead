#include "mmw/transport/tcp.hpp"

#include <algorithm>
#include <stdexcept>

#include "mmw/sim/rng.hpp"

namespace mmw {

const char* to_string(TcpVariant v) { return v == TcpVariant::NewReno ? "newreno" : "cubic"; }

const char* to_string(TcpEvent e) {
  switch (e) {
    case TcpEvent::ACK: return "ACK";
    case TcpEvent::DUPACK: return "DUPACK";
    case TcpEvent::FASTRTX: return "FASTRTX";
    case TcpEvent::PARTIAL: return "PARTIAL";
    case TcpEvent::RTO: return "RTO";
    case TcpEvent::DELIVER: return "DELIVER";
  }
  return "?";
}

void TcpConfig::validate() const {
  if (mss == 0) throw std::invalid_argument("MSS must be positive");
  if (initial_cwnd_segments == 0) throw std::invalid_argument("initial cwnd must be at least one segment");
  if (rwnd_bytes < mss) throw std::invalid_argument("receive window smaller than one MSS");
  if (app_rate_bps < 0) throw std::invalid_argument("application rate must be >= 0");
  if (dupack_threshold < 1) throw std::invalid_argument("dupack threshold must be >= 1");
  if (!(cubic.c > 0) || !(cubic.beta > 0 && cubic.beta < 1)) throw std::invalid_argument("bad cubic parameters");
}

void TcpEventLog::record(const TcpLogRow& row, bool always) {
  if (!always && (row.event == TcpEvent::ACK || row.event == TcpEvent::DELIVER)) {
    SimTime& last = row.event == TcpEvent::ACK ? last_ack_ : last_deliver_;
    if (last != kUnset && row.t - last < interval_) return;
    last = row.t;
  }
  rows_.push_back(row);
}

TcpSender::TcpSender(Simulator& sim, TcpConfig cfg, int flow, OutputFn output, TcpEventLog* log)
    : sim_(sim),
      cfg_((cfg.validate(), cfg)),
      flow_(flow),
      output_(std::move(output)),
      log_(log),
      rtt_(cfg_.min_rto, cfg_.max_rto, cfg_.min_rto),
      cwnd_(static_cast<double>(cfg_.initial_cwnd_segments) * cfg_.mss),
      ssthresh_(cfg_.initial_ssthresh_bytes) {}

void TcpSender::force_window(double cwnd_bytes, std::uint64_t ssthresh_bytes) {
  cwnd_ = cwnd_bytes;
  ssthresh_ = ssthresh_bytes;
}

std::uint64_t TcpSender::app_written() const {
  return cfg_.app_rate_bps > 0.0 ? app_written_ : UINT64_MAX / 2;
}

void TcpSender::start() {
  if (cfg_.app_rate_bps > 0.0) {
    app_write();
  } else {
    try_send();
  }
}

void TcpSender::app_write() {
  if (app_written_ - snd_max_ + cfg_.mss <= cfg_.app_backlog_bytes) app_written_ += cfg_.mss;
  try_send();
  app_timer_ = sim_.schedule(transmission_time(cfg_.mss, cfg_.app_rate_bps), [this] { app_write(); });
}

void TcpSender::log_event(TcpEvent e, bool always) {
  if (log_ == nullptr) return;
  log_->record({sim_.now(), e, cwnd(), ssthresh_, rtt_.rto().seconds(), inflight()}, always);
}

TcpSender::SentSegment* TcpSender::find_segment(std::uint64_t seq) {
  auto it = std::lower_bound(segments_.begin(), segments_.end(), seq,
                             [](const SentSegment& s, std::uint64_t v) { return s.seq < v; });
  if (it == segments_.end() || it->seq != seq) return nullptr;
  return &*it;
}

void TcpSender::send_segment(std::uint64_t seq, bool retransmission) {
  const std::uint32_t len = cfg_.mss;
  if (seq < snd_max_) {
    if (SentSegment* s = find_segment(seq)) {
      s->retransmitted = true;
      s->sent = sim_.now();
    }
    retransmission = true;
  } else {
    segments_.push_back({seq, len, sim_.now(), false});
    snd_max_ = seq + len;
  }
  Packet p;
  p.id = next_packet_id_++;
  p.flow = flow_;
  p.kind = PacketKind::TcpData;
  p.seq = seq;
  p.payload = len;
  p.size_bytes = len + cfg_.header_bytes;
  p.retransmission = retransmission;
  p.created = sim_.now();
  ++counters_.segments_sent;
  if (retransmission) ++counters_.retransmitted_segments;
  output_(std::move(p));
}

void TcpSender::try_send() {
  const std::uint64_t limit = app_written();
  while (true) {
    if (snd_nxt_ + cfg_.mss > limit) {
      cwnd_limited_ = false;
      return;
    }
    if (snd_nxt_ + cfg_.mss - snd_una_ > cfg_.rwnd_bytes) {
      cwnd_limited_ = false;
      return;
    }
    if (static_cast<double>(inflight() + cfg_.mss) > cwnd_) {
      cwnd_limited_ = true;
      return;
    }
    const std::uint64_t seq = snd_nxt_;
    snd_nxt_ += cfg_.mss;
    send_segment(seq, seq < snd_max_);
    if (!sim_.pending(rto_timer_)) restart_rto_timer();
  }
}

void TcpSender::restart_rto_timer() {
  sim_.cancel(rto_timer_);
  if (snd_una_ < snd_max_) rto_timer_ = sim_.schedule(rtt_.rto(), [this] { on_rto(); });
}

void TcpSender::on_ack(const Packet& ack) {
  const std::uint64_t a = ack.ack;
  if (a > snd_max_ || a < snd_una_) return;  // outside the window
  if (a == snd_una_) {
    if (snd_max_ > snd_una_) on_dupack();
    return;
  }
  on_new_ack(a);
}

void TcpSender::on_new_ack(std::uint64_t a) {
  const std::uint64_t acked = a - snd_una_;

  // Karn: no sample if any newly covered segment was ever retransmitted.
  bool ambiguous = false;
  SimTime newest_sent = kUnset;
  if (in_recovery_ && !segments_.empty() && segments_.front().retransmitted &&
      segments_.front().seq + segments_.front().len <= a) {
    ++counters_.recovery_rounds;
    counters_.recovery_round_sum_s += (sim_.now() - segments_.front().sent).seconds();
  }
  while (!segments_.empty() && segments_.front().seq + segments_.front().len <= a) {
    ambiguous |= segments_.front().retransmitted;
    newest_sent = segments_.front().sent;
    segments_.pop_front();
  }
  if (newest_sent != kUnset) {
    if (ambiguous) {
      ++counters_.karn_skipped;
    } else {
      const SimTime sample = sim_.now() - newest_sent;
      rtt_.update(sample);
      ++counters_.rtt_samples;
      if (counters_.min_rtt_s == 0.0 || sample.seconds() < counters_.min_rtt_s) counters_.min_rtt_s = sample.seconds();
    }
  }

  if (rto_probe_ == 1 && a < snd_max_) {
    rto_probe_ = 2;
    snd_nxt_ = snd_max_;
  } else if (rto_probe_ == 2) {
    rto_probe_ = 0;
    ++counters_.spurious_rtos;
  } else {
    rto_probe_ = 0;
  }
  snd_una_ = a;
  if (snd_nxt_ < snd_una_) snd_nxt_ = snd_una_;  // original copies acked after a go-back-N reset

  if (in_recovery_) {
    if (a >= recover_) {
      in_recovery_ = false;
      dupacks_ = 0;
      cwnd_ = static_cast<double>(ssthresh_);
      log_event(TcpEvent::ACK, true);
    } else {
      // Partial ACK: resend the next hole, deflate, and restart the timer.
      send_segment(snd_una_, true);
      cwnd_ = std::max(cwnd_ - static_cast<double>(acked), 0.0) + cfg_.mss;
      cwnd_ = std::max(cwnd_, static_cast<double>(cfg_.mss));
      ++counters_.partial_acks;
      restart_rto_timer();
      log_event(TcpEvent::PARTIAL);
      try_send();
      return;
    }
  } else {
    dupacks_ = 0;
    if (!cfg_.cwnd_validation || cwnd_limited_) grow_window();
    log_event(TcpEvent::ACK);
  }
  restart_rto_timer();
  try_send();
}

void TcpSender::grow_window() {
  const double mss = cfg_.mss;
  if (cwnd_ < static_cast<double>(ssthresh_)) {
    cwnd_ += mss;
    return;
  }
  if (cfg_.variant == TcpVariant::NewReno) {
    cwnd_ += std::max(1.0, mss * mss / cwnd_);
    return;
  }
  if (epoch_start_ == kUnset) {
    epoch_start_ = sim_.now();
    if (w_max_ <= cwnd_) {
      // No loss to recover from: grow from the current window as origin.
      w_max_ = cwnd_;
      cubic_k_ = 0.0;
    } else {
      cubic_k_ = cubic_k(w_max_ / mss, cfg_.cubic);
    }
  }
  const double t = (sim_.now() - epoch_start_).seconds();
  const double target = std::max(cubic_curve_segments(w_max_ / mss, cubic_k_, t, cfg_.cubic), 2.0) * mss;
  if (target > cwnd_) {
    // Close the gap to the curve over roughly one window of ACKs.
    cwnd_ += mss * (target - cwnd_) / cwnd_;
  } else {
    cwnd_ += mss * mss / (100.0 * cwnd_);
  }
}

void TcpSender::on_dupack() {
  ++dupacks_;
  if (rto_probe_ == 2) {
    rto_probe_ = 0;
    snd_nxt_ = snd_una_;
  }
  log_event(TcpEvent::DUPACK);
  if (in_recovery_) {
    cwnd_ += cfg_.mss;
    try_send();
    return;
  }
  if (dupacks_ != cfg_.dupack_threshold || snd_una_ < recover_) return;

  const double mss = cfg_.mss;
  if (cfg_.variant == TcpVariant::NewReno) {
    const std::uint64_t flight = snd_max_ - snd_una_;
    ssthresh_ = std::max<std::uint64_t>(flight / 2, 2 * cfg_.mss);
    cwnd_ = static_cast<double>(ssthresh_) + 3.0 * mss;
  } else {
    w_max_ = cwnd_;
    cwnd_ = std::max(cfg_.cubic.beta * cwnd_, 2.0 * mss);
    ssthresh_ = static_cast<std::uint64_t>(cwnd_);
    epoch_start_ = kUnset;
  }
  recover_ = snd_max_;
  in_recovery_ = true;
  ++counters_.fast_retransmits;
  send_segment(snd_una_, true);
  restart_rto_timer();
  log_event(TcpEvent::FASTRTX);
  try_send();
}

void TcpSender::on_rto() {
  if (snd_una_ >= snd_max_) return;
  ++counters_.rto_events;
  const double mss = cfg_.mss;
  const double factor = cfg_.variant == TcpVariant::Cubic ? cfg_.cubic.beta : 0.5;
  ssthresh_ = std::max<std::uint64_t>(static_cast<std::uint64_t>(cwnd_ * factor), 2 * cfg_.mss);
  if (cfg_.variant == TcpVariant::Cubic) {
    w_max_ = cwnd_;
    epoch_start_ = kUnset;
  }
  cwnd_ = mss;
  in_recovery_ = false;
  dupacks_ = 0;
  recover_ = snd_max_;
  rtt_.backoff();
  log_event(TcpEvent::RTO);

  snd_nxt_ = snd_una_ + cfg_.mss;
  rto_probe_ = 1;
  send_segment(snd_una_, true);
  restart_rto_timer();
}

TcpReceiver::TcpReceiver(Simulator& sim, int flow, OutputFn output, DeliverFn deliver, std::uint32_t ack_bytes)
    : sim_(sim), flow_(flow), output_(std::move(output)), on_deliver_(std::move(deliver)), ack_bytes_(ack_bytes) {}

void TcpReceiver::deliver(std::uint64_t seq, std::uint32_t len) {
  if (seq != rcv_nxt_) consistent_ = false;
  digest_ = mix64(digest_ ^ mix64(seq) ^ (static_cast<std::uint64_t>(len) << 1));
  rcv_nxt_ = seq + len;
  if (on_deliver_) on_deliver_(len);
}

void TcpReceiver::on_data(const Packet& pkt) {
  ++data_segments_;
  const std::uint64_t end = pkt.seq + pkt.payload;
  if (end <= rcv_nxt_) {
    ++duplicates_;
  } else if (pkt.seq <= rcv_nxt_) {
    // Trim any already-delivered prefix, then drain contiguous buffered data.
    deliver(rcv_nxt_, static_cast<std::uint32_t>(end - rcv_nxt_));
    while (!out_of_order_.empty()) {
      auto it = out_of_order_.begin();
      const std::uint64_t seg_end = it->first + it->second;
      if (it->first > rcv_nxt_) break;
      if (seg_end > rcv_nxt_) deliver(rcv_nxt_, static_cast<std::uint32_t>(seg_end - rcv_nxt_));
      out_of_order_.erase(it);
    }
  } else {
    auto [it, inserted] = out_of_order_.emplace(pkt.seq, pkt.payload);
    if (!inserted) {
      ++duplicates_;
      it->second = std::max(it->second, pkt.payload);
    }
  }

  Packet ack;
  ack.id = next_packet_id_++;
  ack.flow = flow_;
  ack.kind = PacketKind::TcpAck;
  ack.ack = rcv_nxt_;
  ack.size_bytes = ack_bytes_;
  ack.created = sim_.now();
  output_(std::move(ack));
}

}  // namespace mmw
