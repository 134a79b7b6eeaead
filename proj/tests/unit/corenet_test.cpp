#include <doctest.h>

#include <vector>

#include "mmw/channel/channel_model.hpp"
#include "mmw/corenet/core_link.hpp"
#include "mmw/ran/radio_link.hpp"
#include "mmw/sim/simulator.hpp"

using namespace mmw;

namespace {

Packet packet(std::uint64_t id, std::uint32_t size) {
  Packet p;
  p.id = id;
  p.size_bytes = size;
  return p;
}

// Constant channel, optionally in outage over [outage_from, outage_to).
class FlatChannel final : public ChannelModel {
 public:
  FlatChannel(double sinr_db, SimTime outage_from = kUnset, SimTime outage_to = kUnset)
      : sinr_db_(sinr_db), from_(outage_from), to_(outage_to) {}
  ChannelSample sample(SimTime t) const override {
    ChannelSample s;
    s.t = t;
    s.sinr_db = sinr_db_;
    s.state = (from_ != kUnset && from_ <= t && t < to_) ? LinkState::OUTAGE : LinkState::LOS;
    return s;
  }

 private:
  double sinr_db_;
  SimTime from_, to_;
};

}  // namespace

TEST_CASE("core link: 1400 B at 10 Gb/s arrives after 20.00112 ms") {
  Simulator sim;
  std::vector<std::pair<std::uint64_t, SimTime>> at_bs;
  std::vector<SimTime> at_host;
  CoreLink core(sim, {}, [&](Packet p) { at_bs.emplace_back(p.id, sim.now()); },
                [&](Packet) { at_host.push_back(sim.now()); });
  CHECK(core.send(packet(1, 1400), CoreDirection::Downlink) == nanoseconds(20'001'120));
  // Back-to-back packets serialize FIFO behind each other.
  CHECK(core.send(packet(2, 1400), CoreDirection::Downlink) == nanoseconds(20'002'240));
  // The uplink is an independent pipe.
  CHECK(core.send(packet(3, 40), CoreDirection::Uplink) == nanoseconds(20'000'032));
  sim.run_until(seconds(1.0));
  REQUIRE(at_bs.size() == 2);
  CHECK(at_bs[0] == std::make_pair<std::uint64_t, SimTime>(1, nanoseconds(20'001'120)));
  CHECK(at_bs[1].first == 2);
  REQUIRE(at_host.size() == 1);
  // After the queue drains, a new packet does not wait.
  CHECK(core.send(packet(4, 1400), CoreDirection::Downlink) == seconds(1.0) + nanoseconds(20'001'120));
}

TEST_CASE("core link rejects bad configuration") {
  Simulator sim;
  CHECK_THROWS_AS(CoreLink(sim, {milliseconds(20), 0.0}, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(CoreLink(sim, {nanoseconds(-1), 1e9}, {}, {}), std::invalid_argument);
}

TEST_CASE("radio link delivers in order over a clean channel") {
  Simulator sim;
  FlatChannel ch(30.0);
  std::vector<Packet> got;
  RadioLink link(sim, ch, RanConfig{}, [&](const Packet& p) { got.push_back(p); }, [](const Packet&) {});
  link.start();
  sim.run_until(milliseconds(5));  // let the first CQI arrive
  for (std::uint64_t i = 0; i < 500; ++i) CHECK(link.send_dl(packet(i, 1440)) == EnqueueResult::Accepted);
  sim.run_until(milliseconds(30));
  REQUIRE(got.size() == 500);
  for (std::uint64_t i = 0; i < 500; ++i) {
    CHECK(got[i].id == i);
    CHECK(got[i].delivered >= got[i].rlc_in);
  }
  // 720 kB at about 3.5 Gb/s takes under 2 ms of air time, plus HARQ feedback.
  CHECK((got.back().delivered - got.back().rlc_in) < milliseconds(3));
  CHECK(link.dl_harq().failures() == 0);
}

TEST_CASE("radio link holds data through an outage and drains afterwards") {
  Simulator sim;
  FlatChannel ch(30.0, milliseconds(10), milliseconds(410));
  std::vector<Packet> got;
  RanConfig cfg;
  cfg.rlc_buffer_bytes = 100'000;
  std::uint64_t dropped = 0;
  RadioLink link(sim, ch, cfg, [&](const Packet& p) { got.push_back(p); }, [](const Packet&) {});
  link.start();
  sim.run_until(milliseconds(20));
  for (std::uint64_t i = 0; i < 100; ++i) dropped += link.send_dl(packet(i, 1440)) == EnqueueResult::Dropped;
  CHECK(dropped == 31);  // 69 * 1440 B fit in 100 kB
  sim.run_until(milliseconds(400));
  CHECK(got.empty());
  sim.run_until(milliseconds(450));
  CHECK(got.size() == 69);
  CHECK(link.dl_tx().queued_bytes() == 0);
}
