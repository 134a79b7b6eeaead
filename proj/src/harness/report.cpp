#include "mmw/harness/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <memory>
#include <vector>

namespace mmw {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};

class CsvFile {
 public:
  explicit CsvFile(const std::filesystem::path& path) : path_(path), f_(std::fopen(path.string().c_str(), "wb")) {
    if (!f_) throw ReportError("cannot write '" + path.string() + "'");
    buffer_.resize(1 << 20);
    std::setvbuf(f_.get(), buffer_.data(), _IOFBF, buffer_.size());
  }
  std::FILE* get() { return f_.get(); }
  void close() {
    const bool failed = std::ferror(f_.get()) != 0;
    if (std::fclose(f_.release()) != 0 || failed) throw ReportError("error writing '" + path_.string() + "'");
  }

 private:
  std::filesystem::path path_;
  std::unique_ptr<std::FILE, FileCloser> f_;
  std::vector<char> buffer_;
};

// Exact decimal seconds for an integer-nanosecond time.
void put_time(std::FILE* f, SimTime t) {
  const std::int64_t ns = t.ns;
  const char* sign = ns < 0 ? "-" : "";
  const std::int64_t a = ns < 0 ? -ns : ns;
  std::fprintf(f, "%s%" PRId64 ".%09" PRId64, sign, a / 1'000'000'000, a % 1'000'000'000);
}

}  // namespace

void export_report(const RunResult& result, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw ReportError("cannot create output directory '" + out_dir.string() + "'");
  }
  const MetricsSeries& m = result.metrics;

  {
    CsvFile out(out_dir / "throughput.csv");
    std::FILE* f = out.get();
    std::fputs("t_s,throughput_bps,rlc_queue_bytes,cwnd_bytes,ssthresh_bytes\n", f);
    const auto tput = m.throughput_bps();
    std::size_t q = 0;
    for (std::size_t i = 0; i < tput.size(); ++i) {
      const SimTime start = m.window() * static_cast<std::int64_t>(i);
      while (q + 1 < m.queue.size() && m.queue[q + 1].t <= start) ++q;
      const QueueRecord snap = q < m.queue.size() ? m.queue[q] : QueueRecord{start, 0, 0, 0};
      put_time(f, start);
      std::fprintf(f, ",%.17g,%" PRIu64 ",%" PRIu64 ",%" PRIu64 "\n", tput[i], snap.dl_rlc_bytes, snap.cwnd_bytes,
                   snap.ssthresh_bytes);
    }
    out.close();
  }
  {
    CsvFile out(out_dir / "latency.csv");
    std::FILE* f = out.get();
    std::fputs("t_s,one_way_s,ran_s,state,backlogged\n", f);
    for (const auto& r : m.latency) {
      put_time(f, r.t_rx);
      std::fputc(',', f);
      put_time(f, r.one_way);
      std::fputc(',', f);
      put_time(f, r.ran);
      std::fprintf(f, ",%s,%d\n", to_string(r.state_at_rlc_in), r.backlogged ? 1 : 0);
    }
    out.close();
  }
  {
    CsvFile out(out_dir / "sinr.csv");
    std::FILE* f = out.get();
    std::fputs("t_s,sinr_db,state\n", f);
    for (const auto& s : m.sinr) {
      put_time(f, s.t);
      std::fprintf(f, ",%.6f,%s\n", s.sinr_db, to_string(s.state));
    }
    out.close();
  }
  {
    CsvFile out(out_dir / "tcp.csv");
    std::FILE* f = out.get();
    std::fputs("t_s,event,cwnd_bytes,ssthresh_bytes,rto_s,inflight_bytes\n", f);
    for (const auto& r : m.tcp_log) {
      put_time(f, r.t);
      std::fprintf(f, ",%s,%" PRIu64 ",%" PRIu64 ",%.9f,%" PRIu64 "\n", to_string(r.event), r.cwnd_bytes,
                   r.ssthresh_bytes, r.rto_s, r.inflight_bytes);
    }
    out.close();
  }
  {
    CsvFile out(out_dir / "summary.txt");
    std::fputs(format_summary(result.summary).c_str(), out.get());
    out.close();
  }
}

}  // namespace mmw
