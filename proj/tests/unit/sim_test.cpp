#include <doctest.h>

#include <set>
#include <vector>

#include "mmw/sim/rng.hpp"
#include "mmw/sim/simulator.hpp"

using namespace mmw;

TEST_CASE("events fire in time order, ties in insertion order") {
  Simulator sim;
  std::vector<int> order;
  sim.schedule(milliseconds(2), [&] { order.push_back(3); });
  sim.schedule(milliseconds(1), [&] { order.push_back(1); });
  sim.schedule(milliseconds(1), [&] { order.push_back(2); });
  sim.schedule_at(milliseconds(2), [&] { order.push_back(4); });
  CHECK(sim.run_until(seconds(1.0)) == 4);
  CHECK(order == std::vector<int>{1, 2, 3, 4});
  CHECK(sim.now() == seconds(1.0));
}

TEST_CASE("run_until includes the end instant and leaves later events queued") {
  Simulator sim;
  int fired = 0;
  sim.schedule(milliseconds(5), [&] { ++fired; });
  sim.schedule(milliseconds(6), [&] { ++fired; });
  sim.run_until(milliseconds(5));
  CHECK(fired == 1);
  CHECK(sim.queued() == 1);
  sim.run_until(milliseconds(6));
  CHECK(fired == 2);
}

TEST_CASE("events scheduled from inside a handler at the same instant still run") {
  Simulator sim;
  std::vector<int> order;
  sim.schedule(milliseconds(1), [&] {
    order.push_back(1);
    sim.schedule(SimTime{}, [&] { order.push_back(2); });
  });
  sim.run_until(milliseconds(1));
  CHECK(order == std::vector<int>{1, 2});
}

TEST_CASE("cancel is idempotent and safe after firing") {
  Simulator sim;
  int fired = 0;
  EventHandle a = sim.schedule(milliseconds(1), [&] { ++fired; });
  EventHandle b = sim.schedule(milliseconds(2), [&] { ++fired; });
  CHECK(sim.pending(a));
  sim.cancel(a);
  sim.cancel(a);
  CHECK_FALSE(sim.pending(a));
  sim.run_until(milliseconds(3));
  CHECK(fired == 1);
  sim.cancel(b);
  EventHandle none;
  sim.cancel(none);
  CHECK(sim.queued() == 0);
}

TEST_CASE("negative delays are rejected") {
  Simulator sim;
  CHECK_THROWS_AS(sim.schedule(nanoseconds(-1), [] {}), std::invalid_argument);
  sim.run_until(milliseconds(1));
  CHECK_THROWS_AS(sim.schedule_at(SimTime{}, [] {}), std::invalid_argument);
}

TEST_CASE("event cap stops a runaway loop") {
  Simulator sim(1000);
  std::function<void()> loop = [&] { sim.schedule(nanoseconds(1), loop); };
  sim.schedule(SimTime{}, loop);
  CHECK_THROWS_AS(sim.run_until(seconds(1.0)), RunawayError);
}

TEST_CASE("SimTime conversions round to the nearest nanosecond") {
  CHECK(seconds(0.020).ns == 20'000'000);
  CHECK(seconds(1e-9 * 0.4).ns == 0);
  CHECK(seconds(1e-9 * 0.6).ns == 1);
  CHECK(seconds(-1.5e-9).ns == -2);
  CHECK(transmission_time(1400, 10e9).ns == 1120);
  CHECK(milliseconds(3).seconds() == doctest::Approx(0.003));
  CHECK(seconds(seconds(12.345678901).seconds()) == seconds(12.345678901));
}

TEST_CASE("rng streams are reproducible and independent") {
  RngService a(42);
  RngService b(42);
  auto& fa = a.register_stream("fading");
  auto& fb = b.register_stream("fading");
  for (int i = 0; i < 100; ++i) CHECK(fa.uniform() == fb.uniform());

  // Registering another stream does not perturb an existing one.
  RngService c(42);
  auto& fc = c.register_stream("fading");
  c.register_stream("shadowing").uniform();
  RngService d(42);
  auto& fd = d.register_stream("fading");
  for (int i = 0; i < 100; ++i) CHECK(fc.uniform() == fd.uniform());

  RngService e(43);
  CHECK(e.register_stream("fading").uniform() != RngService(42).register_stream("fading").uniform());
  CHECK(a.register_stream("x").uniform() != a.register_stream("y").uniform());
  CHECK_THROWS_AS(a.stream("missing"), UnknownStreamError);
}

TEST_CASE("rng draws have the right moments and ranges") {
  RngStream s(7, "moments");
  const int n = 200'000;
  double sum = 0, sum2 = 0, usum = 0;
  std::set<std::int64_t> ints;
  for (int i = 0; i < n; ++i) {
    const double z = s.normal();
    sum += z;
    sum2 += z * z;
    const double u = s.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    usum += u;
    const auto k = s.uniform_int(-2, 2);
    REQUIRE(k >= -2);
    REQUIRE(k <= 2);
    ints.insert(k);
  }
  CHECK(sum / n == doctest::Approx(0.0).epsilon(0.01).scale(1.0));
  CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(usum / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(ints.size() == 5);
}
