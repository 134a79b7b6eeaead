#pragma once

#include <filesystem>
#include <stdexcept>

#include "mmw/harness/runner.hpp"

namespace mmw {

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes throughput.csv, latency.csv, sinr.csv, tcp.csv and summary.txt into
/// `out_dir`, creating it if needed. Throws ReportError if it is unwritable.
///
///   throughput.csv  t_s,throughput_bps,rlc_queue_bytes,cwnd_bytes,ssthresh_bytes
///                   one row per window; t_s is the window start, the last three
///                   columns are sampled at that instant
///   latency.csv     t_s,one_way_s,ran_s,state,backlogged (one row per packet)
///   sinr.csv        t_s,sinr_db,state (one row per slot)
///   tcp.csv         t_s,event,cwnd_bytes,ssthresh_bytes,rto_s,inflight_bytes
///   summary.txt     key=value lines
void export_report(const RunResult& result, const std::filesystem::path& out_dir);

}  // namespace mmw
