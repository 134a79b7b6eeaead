#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "mmw/channel/channel_model.hpp"
#include "mmw/channel/fading.hpp"
#include "mmw/channel/geometry.hpp"
#include "mmw/channel/pathloss.hpp"
#include "mmw/channel/trace.hpp"
#include "mmw/sim/rng.hpp"
#include "properties.hpp"

using namespace mmw;

TEST_CASE("segment-box test agrees with brute-force point sampling on 1e5 cases") {
  const auto r = props::aabb_vs_sampling(100'000, 2024);
  CHECK(r.disagreements == 0);
  CHECK(r.hits > 5'000);
  CHECK(r.hits < 95'000);
}

TEST_CASE("touching a face or edge is not a blockage") {
  const Vec3 lo(0, 0, 0), hi(1, 1, 1);
  CHECK_FALSE(segment_intersects_box<double>(Vec3(-1, 0, 0.5), Vec3(2, 0, 0.5), lo, hi));  // along a face
  CHECK_FALSE(segment_intersects_box<double>(Vec3(-1, 1, 1), Vec3(2, 1, 1), lo, hi));      // along an edge
  CHECK_FALSE(segment_intersects_box<double>(Vec3(-1, 1, 0.5), Vec3(1, -1, 0.5), lo, hi)); // grazes a corner edge
  CHECK(segment_intersects_box<double>(Vec3(-1, 0.5, 0.5), Vec3(2, 0.5, 0.5), lo, hi));
  CHECK_FALSE(segment_intersects_box<double>(Vec3(-2, 0.5, 0.5), Vec3(-0.5, 0.5, 0.5), lo, hi));  // stops short
  CHECK_FALSE(segment_intersects_box<double>(Vec3(-2, 0.5, 0.5), Vec3(0, 0.5, 0.5), lo, hi));     // ends on face
}

TEST_CASE("LOS state is symmetric in the endpoints") {
  const std::vector<Obstacle> obs{Obstacle(Vec3(5, 0, 1), Vec3(1, 1, 2))};
  const Vec3 bs(0, 0, 10), ue_blocked(10, 0, 0), ue_clear(10, 5, 0);
  CHECK(los_state(bs, Vec3(8, 0, 1.5), obs) == los_state(Vec3(8, 0, 1.5), bs, obs));
  CHECK(los_state(Vec3(0, 0, 1), ue_blocked, obs) == LinkState::NLOS);
  CHECK(los_state(Vec3(0, 0, 1), ue_clear, obs) == LinkState::LOS);
  CHECK(los_state(bs, ue_blocked, {}) == LinkState::LOS);
  CHECK_THROWS(Obstacle(Vec3::Zero(), Vec3(1, 0, 1)));
}

TEST_CASE("route advances at constant speed and stops at the end") {
  RouteSpec r{{Vec3(0, 0, 0), Vec3(3, 0, 0), Vec3(3, 4, 0)}, 1.0};
  CHECK(r.length_m() == doctest::Approx(7.0));
  CHECK(r.duration() == seconds(7.0));
  CHECK((advance_route(r, seconds(1.5)) - Vec3(1.5, 0, 0)).norm() < 1e-12);
  CHECK((advance_route(r, seconds(5.0)) - Vec3(3, 2, 0)).norm() < 1e-12);
  CHECK((advance_route(r, seconds(100.0)) - Vec3(3, 4, 0)).norm() < 1e-12);
  CHECK(route_distance(r, seconds(100.0)) == doctest::Approx(7.0));
  RouteSpec bad{{Vec3::Zero()}, 1.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("path loss and link budget match hand values") {
  CHECK(path_loss_db(100.0, LinkState::LOS) == doctest::Approx(61.4 + 40.0));
  CHECK(path_loss_db(100.0, LinkState::NLOS) == doctest::Approx(72.0 + 58.4));
  CHECK(path_loss_db(0.1, LinkState::LOS) == doctest::Approx(61.4));
  PhyConfig phy;
  // 30 dBm + 10log10(64*16) - PL - (-174 + 5 + 90) dBm
  const double budget = 30.0 + 10.0 * std::log10(1024.0) + 174.0 - 5.0 - 90.0;
  CHECK(link_sinr_db(phy, 100.0, LinkState::LOS, 0.0, 0.0) == doctest::Approx(budget - 101.4));
  CHECK(link_sinr_db(phy, 100.0, LinkState::NLOS, 3.0, -2.0) == doctest::Approx(budget - 130.4 - 5.0));
  CHECK(phy.max_doppler_hz(3.0) == doctest::Approx(3.0 * 28e9 / 299792458.0));
}

TEST_CASE("fading is unit-mean and NLOS power is exponential (Rayleigh envelope)") {
  const auto f = props::fading_stats();
  CHECK(f.nlos_mean == doctest::Approx(1.0).epsilon(0.03));
  CHECK(f.los_mean == doctest::Approx(1.0).epsilon(0.03));
  INFO("KS = " << f.ks_exponential);
  CHECK(f.ks_exponential < 0.02);
}

TEST_CASE("geometric channel: forced outage overrides state, base state is kept") {
  GeometricSetup g;
  g.route = RouteSpec{{Vec3(10, 0, 1.5), Vec3(20, 0, 1.5)}, 1.0};
  g.obstacles.emplace_back(Vec3(14.5, 0, 5), Vec3(1, 4, 10));
  RngService rng(5);
  GeometricChannel ch(g, PhyConfig{}, rng, {{seconds(1.0), seconds(2.0)}}, false);
  CHECK(ch.sample(seconds(0.5)).state == LinkState::LOS);
  const auto s = ch.sample(seconds(1.5));
  CHECK(s.state == LinkState::OUTAGE);
  CHECK(s.base_state == LinkState::LOS);
  CHECK(ch.geometric_state(seconds(9.5)) == LinkState::NLOS);
  // Segment boundaries are refined to the nanosecond.
  REQUIRE(ch.segments().size() >= 2);
  const SimTime edge = ch.segments()[1].start;
  CHECK(ch.geometric_state(edge) == LinkState::NLOS);
  CHECK(ch.geometric_state(edge - nanoseconds(1)) == LinkState::LOS);
  // Sampling has no side effects.
  CHECK(ch.sample(seconds(3.0)).sinr_db == ch.sample(seconds(3.0)).sinr_db);
}

TEST_CASE("trace parse errors carry the row number") {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return parse_trace(in);
  };
  auto row_of = [&](const std::string& s) -> std::size_t {
    try {
      parse(s);
    } catch (const TraceParseError& e) {
      return e.row();
    }
    return 0;
  };
  CHECK(row_of("") == 1);
  CHECK(row_of("t,pos,state,sinr\n0,0,LOS,1\n") == 1);
  CHECK(row_of("t_s,pos_m,state,sinr_db\n0,0,LOS,1\n1,1,FOO,2\n") == 3);
  CHECK(row_of("t_s,pos_m,state,sinr_db\n0,0,LOS,1\n0,1,LOS,2\n") == 3);
  CHECK(row_of("t_s,pos_m,state,sinr_db\n0,0,LOS\n") == 2);
  CHECK(row_of("t_s,pos_m,state,sinr_db\n0,0,LOS,1.5dB\n") == 2);
  CHECK(row_of("t_s,pos_m,state,sinr_db\n0,0,LOS,1,000\n") == 2);
  CHECK(row_of("t_s,pos_m,state,sinr_db\n") == 1);
  CHECK(parse("t_s,pos_m,state,sinr_db\r\n0,0,OUT,-9\r\n").front().state == LinkState::OUTAGE);
}

TEST_CASE("trace replay reproduces its input and interpolates SINR") {
  std::vector<TraceSample> in{{0.0, 0.0, LinkState::LOS, 25.0},
                              {1.0, 3.0, LinkState::NLOS, -5.0},
                              {2.0, 6.0, LinkState::OUTAGE, -9.0}};
  std::ostringstream out;
  write_trace(out, in);
  std::istringstream back(out.str());
  const auto parsed = parse_trace(back);
  REQUIRE(parsed.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(parsed[i].t_s == in[i].t_s);
    CHECK(parsed[i].pos_m == in[i].pos_m);
    CHECK(parsed[i].state == in[i].state);
    CHECK(parsed[i].sinr_db == in[i].sinr_db);
  }
  TraceReplay by_time(in);
  CHECK(by_time.at(seconds(0.5)).sinr_db == doctest::Approx(10.0));
  CHECK(by_time.at(seconds(0.5)).state == LinkState::LOS);
  CHECK(by_time.at(seconds(1.0)).state == LinkState::NLOS);
  CHECK(by_time.at(seconds(9.0)).sinr_db == -9.0);

  // At 6 m/s the 6 m route takes 1 s instead of 2.
  TraceReplay fast(in, 6.0);
  CHECK(fast.duration() == seconds(1.0));
  CHECK(fast.at(seconds(0.25)).sinr_db == doctest::Approx(10.0));

  // Without fading the replayed range equals the input range exactly.
  RngService rng(1);
  TraceChannel ch(in, PhyConfig{}, rng, 0.0, {}, false);
  double lo = 1e9, hi = -1e9;
  for (int ms = 0; ms <= 2000; ++ms) {
    const double s = ch.sample(milliseconds(ms)).sinr_db;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  CHECK(lo == -9.0);
  CHECK(hi == 25.0);
  CHECK(ch.sample(milliseconds(1000)).state == LinkState::NLOS);
  CHECK(ch.sample(milliseconds(1500)).state == LinkState::OUTAGE);  // NLOS row, SINR below threshold
}
