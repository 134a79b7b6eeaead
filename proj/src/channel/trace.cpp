#include "mmw/channel/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

namespace mmw {

TraceParseError::TraceParseError(std::size_t row, const std::string& what)
    : std::runtime_error("trace row " + std::to_string(row) + ": " + what), row_(row) {}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_number(const std::string& field, std::size_t row, const char* name) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || field.empty()) {
    throw TraceParseError(row, std::string("bad ") + name + " '" + field + "'");
  }
  return value;
}

LinkState parse_state(const std::string& field, std::size_t row) {
  if (field == "LOS") return LinkState::LOS;
  if (field == "NLOS") return LinkState::NLOS;
  if (field == "OUT") return LinkState::OUTAGE;
  throw TraceParseError(row, "unknown state '" + field + "'");
}

}  // namespace

std::vector<TraceSample> parse_trace(std::istream& in) {
  std::string line;
  std::size_t row = 1;
  if (!std::getline(in, line)) throw TraceParseError(row, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF) line.erase(0, 3);  // UTF-8 BOM
  if (line != "t_s,pos_m,state,sinr_db") throw TraceParseError(row, "expected header 't_s,pos_m,state,sinr_db'");

  std::vector<TraceSample> samples;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 4) throw TraceParseError(row, "expected 4 fields, got " + std::to_string(fields.size()));
    TraceSample s;
    s.t_s = parse_number(fields[0], row, "t_s");
    s.pos_m = parse_number(fields[1], row, "pos_m");
    s.state = parse_state(fields[2], row);
    s.sinr_db = parse_number(fields[3], row, "sinr_db");
    if (!samples.empty() && !(s.t_s > samples.back().t_s)) throw TraceParseError(row, "t_s not strictly increasing");
    samples.push_back(s);
  }
  if (samples.empty()) throw TraceParseError(row, "trace has no samples");
  return samples;
}

std::vector<TraceSample> load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file " + path.string());
  return parse_trace(in);
}

void write_trace(std::ostream& out, const std::vector<TraceSample>& samples) {
  out << "t_s,pos_m,state,sinr_db\n";
  char buf[128];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%.9f,%.6f,%s,%.6f\n", s.t_s, s.pos_m, to_string(s.state), s.sinr_db);
    out << buf;
  }
}

TraceReplay::TraceReplay(std::vector<TraceSample> samples, double speed_mps)
    : samples_(std::move(samples)), speed_mps_(speed_mps) {
  if (samples_.empty()) throw std::invalid_argument("empty trace");
  axis_.reserve(samples_.size());
  for (const auto& s : samples_) axis_.push_back(axis(s));
  if (speed_mps_ > 0.0) {
    for (std::size_t i = 1; i < axis_.size(); ++i) {
      if (!(axis_[i] > axis_[i - 1])) throw std::invalid_argument("trace positions must increase for speed replay");
    }
  }
}

TraceReplay::Point TraceReplay::at(SimTime t) const {
  const double x = t.seconds();
  if (x <= axis_.front()) {
    const auto& s = samples_.front();
    return {s.pos_m, s.state, s.sinr_db};
  }
  if (x >= axis_.back()) {
    const auto& s = samples_.back();
    return {s.pos_m, s.state, s.sinr_db};
  }
  const auto hi = static_cast<std::size_t>(std::upper_bound(axis_.begin(), axis_.end(), x) - axis_.begin());
  const std::size_t lo = hi - 1;
  const double f = (x - axis_[lo]) / (axis_[hi] - axis_[lo]);
  const auto& a = samples_[lo];
  const auto& b = samples_[hi];
  return {a.pos_m + f * (b.pos_m - a.pos_m), a.state, a.sinr_db + f * (b.sinr_db - a.sinr_db)};
}

SimTime TraceReplay::duration() const { return seconds(axis_.back()); }

}  // namespace mmw
