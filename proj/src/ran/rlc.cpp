#include "mmw/ran/rlc.hpp"

#include <algorithm>
#include <stdexcept>

namespace mmw {

RlcTransmitter::RlcTransmitter(std::uint64_t capacity, bool am) : capacity_(capacity), am_(am) {
  if (capacity_ == 0) throw std::invalid_argument("RLC buffer capacity must be positive");
}

EnqueueResult RlcTransmitter::enqueue(const Packet& pkt) {
  if (pkt.size_bytes == 0) throw std::invalid_argument("empty RLC SDU");
  if (new_bytes_ + pkt.size_bytes > capacity_) return EnqueueResult::Dropped;
  const std::uint64_t sn = next_sn_++;
  SduTx& sdu = sdus_[sn];
  sdu.packet = pkt;
  sdu.size = pkt.size_bytes;
  new_queue_.push_back(sn);
  new_bytes_ += pkt.size_bytes;
  return EnqueueResult::Accepted;
}

std::vector<RlcSegment> RlcTransmitter::segment(std::uint64_t grant_bytes) {
  std::vector<RlcSegment> out;
  std::uint64_t remaining = grant_bytes;

  while (remaining > 0 && !retx_queue_.empty()) {
    RlcNack& r = retx_queue_.front();
    auto it = sdus_.find(r.sn);
    if (it == sdus_.end()) {  // released by a status report meanwhile
      retx_bytes_ -= r.length;
      retx_queue_.pop_front();
      continue;
    }
    const auto take = static_cast<std::uint32_t>(std::min<std::uint64_t>(r.length, remaining));
    SduTx& sdu = it->second;
    sdu.segs.push_back({r.offset, take, SegState::InHarq});
    out.push_back({r.sn, r.offset, take, sdu.size, sdu.packet});
    r.offset += take;
    r.length -= take;
    retx_bytes_ -= take;
    arq_retx_bytes_ += take;
    remaining -= take;
    if (r.length == 0) retx_queue_.pop_front();
  }

  while (remaining > 0 && !new_queue_.empty()) {
    const std::uint64_t sn = new_queue_.front();
    SduTx& sdu = sdus_.at(sn);
    const auto take = static_cast<std::uint32_t>(std::min<std::uint64_t>(sdu.size - sdu.unsent_offset, remaining));
    sdu.segs.push_back({sdu.unsent_offset, take, SegState::InHarq});
    out.push_back({sn, sdu.unsent_offset, take, sdu.size, sdu.packet});
    sdu.unsent_offset += take;
    new_bytes_ -= take;
    remaining -= take;
    if (sdu.unsent_offset == sdu.size) new_queue_.pop_front();
  }
  return out;
}

RlcTransmitter::TxSeg* RlcTransmitter::find_seg(SduTx& sdu, std::uint32_t offset, std::uint32_t length) {
  for (auto& s : sdu.segs) {
    if (s.offset == offset && s.length == length && s.state == SegState::InHarq) return &s;
  }
  return nullptr;
}

void RlcTransmitter::on_harq_result(const std::vector<RlcSegment>& segments, bool delivered) {
  for (const auto& seg : segments) {
    auto it = sdus_.find(seg.sn);
    if (it == sdus_.end()) continue;
    TxSeg* rec = find_seg(it->second, seg.offset, seg.length);
    if (rec == nullptr) continue;
    rec->state = delivered ? SegState::Delivered : SegState::Failed;
    if (!am_) resolve_um(seg.sn);
  }
}

void RlcTransmitter::resolve_um(std::uint64_t sn) {
  auto it = sdus_.find(sn);
  SduTx& sdu = it->second;
  if (sdu.unsent_offset < sdu.size) return;
  bool failed = false;
  for (const auto& s : sdu.segs) {
    if (s.state == SegState::InHarq) return;
    failed |= s.state == SegState::Failed;
  }
  if (failed) {
    ++lost_packets_;
    lost_bytes_ += sdu.size;
    if (on_loss_) on_loss_(sdu.packet);
  }
  sdus_.erase(it);
}

void RlcTransmitter::on_status(const StatusReport& report) {
  if (!am_) return;
  sdus_.erase(sdus_.begin(), sdus_.lower_bound(report.ack_sn));

  std::size_t nack_idx = 0;
  for (auto& [sn, sdu] : sdus_) {
    while (nack_idx < report.nacks.size() && report.nacks[nack_idx].sn < sn) ++nack_idx;
    auto& segs = sdu.segs;
    for (auto s = segs.begin(); s != segs.end();) {
      if (s->state != SegState::Failed) {
        ++s;
        continue;
      }
      bool missing = !report.any_received || sn > report.highest_sn ||
                     (sn == report.highest_sn && s->offset >= report.highest_end);
      for (std::size_t k = nack_idx; !missing && k < report.nacks.size() && report.nacks[k].sn == sn; ++k) {
        const auto& n = report.nacks[k];
        missing = n.length == 0 || (s->offset < n.offset + n.length && n.offset < s->offset + s->length);
      }
      if (missing) {
        retx_queue_.push_back({sn, s->offset, s->length});
        retx_bytes_ += s->length;
        s = segs.erase(s);
      } else {
        ++s;
      }
    }
  }
}

std::uint64_t RlcTransmitter::bytes_from_sn(std::uint64_t first_sn) const {
  std::uint64_t total = 0;
  for (auto it = sdus_.lower_bound(first_sn); it != sdus_.end(); ++it) total += it->second.size;
  return total;
}

std::uint64_t RlcTransmitter::outstanding_bytes() const {
  std::uint64_t total = 0;
  for (const auto& [sn, sdu] : sdus_) total += sdu.size;
  return total;
}

RlcReceiver::RlcReceiver(bool am, SimTime um_reordering, DeliverFn deliver)
    : am_(am), um_reordering_(um_reordering), deliver_(std::move(deliver)) {}

void RlcReceiver::on_segment(const RlcSegment& seg, SimTime now) {
  if (seg.sn < rx_next_) {
    ++duplicates_;
    return;
  }
  auto [it, inserted] = sdus_.try_emplace(seg.sn);
  SduRx& sdu = it->second;
  if (inserted) {
    sdu.size = seg.sdu_size;
    sdu.packet = seg.packet;
  }
  if (sdu.complete()) {
    ++duplicates_;
    return;
  }

  // Merge [begin, end) into the sorted, disjoint range list.
  std::uint32_t begin = seg.offset;
  std::uint32_t end = seg.offset + seg.length;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> merged;
  std::uint32_t covered_before = 0;
  for (const auto& r : sdu.ranges) {
    if (r.second < begin || r.first > end) {
      merged.push_back(r);
    } else {
      covered_before += std::min(r.second, seg.offset + seg.length) - std::max(r.first, seg.offset);
      begin = std::min(begin, r.first);
      end = std::max(end, r.second);
    }
  }
  merged.emplace_back(begin, end);
  std::sort(merged.begin(), merged.end());
  sdu.ranges = std::move(merged);
  const std::uint32_t fresh = seg.length - covered_before;
  if (fresh == 0) ++duplicates_;
  sdu.received += fresh;

  if (!any_received_ || seg.sn > highest_sn_) highest_sn_ = seg.sn;
  any_received_ = true;
  deliver_in_order(now);
}

void RlcReceiver::deliver_in_order(SimTime now) {
  while (!sdus_.empty()) {
    auto it = sdus_.begin();
    if (it->first != rx_next_ || !it->second.complete()) break;
    Packet pkt = it->second.packet;
    sdus_.erase(it);
    ++rx_next_;
    ++delivered_;
    deliver_(pkt);
  }
  if (!am_) {
    const bool blocked = !sdus_.empty();
    if (!blocked) {
      reordering_started_ = kUnset;
    } else if (reordering_started_ == kUnset) {
      reordering_started_ = now;
    }
  }
}

void RlcReceiver::tick(SimTime now) {
  if (am_ || reordering_started_ == kUnset || now - reordering_started_ < um_reordering_) return;
  // Give up on the hole: skip to the first complete SDU, discarding partial ones before it.
  auto first_complete = std::find_if(sdus_.begin(), sdus_.end(), [](const auto& kv) { return kv.second.complete(); });
  reordering_started_ = kUnset;
  if (first_complete == sdus_.end()) {
    deliver_in_order(now);
    return;
  }
  rx_next_ = first_complete->first;
  sdus_.erase(sdus_.begin(), first_complete);
  deliver_in_order(now);
}

StatusReport RlcReceiver::status() const {
  StatusReport r;
  r.ack_sn = rx_next_;
  r.any_received = any_received_;
  r.highest_sn = highest_sn_;
  r.highest_end = 0;
  if (!any_received_) return r;
  if (highest_sn_ < rx_next_) {
    r.highest_end = UINT32_MAX;
    return r;
  }
  std::uint64_t expect = rx_next_;
  for (const auto& [sn, sdu] : sdus_) {
    for (; expect < sn; ++expect) r.nacks.push_back({expect, 0, 0});
    expect = sn + 1;
    std::uint32_t cursor = 0;
    for (const auto& [b, e] : sdu.ranges) {
      if (b > cursor) r.nacks.push_back({sn, cursor, b - cursor});
      cursor = e;
    }
    if (sn == highest_sn_) {
      r.highest_end = cursor;
    } else if (cursor < sdu.size) {
      r.nacks.push_back({sn, cursor, sdu.size - cursor});
    }
  }
  return r;
}

}  // namespace mmw
