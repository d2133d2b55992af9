#include "linedarp/sim.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "linedarp/algorithms.hpp"
#include "linedarp/model.hpp"

namespace {

using namespace linedarp;

Instance points(std::vector<std::pair<double, double>> xs_rs,
                Variant variant = Variant::Open) {
  Instance ins;
  int id = 0;
  for (auto [x, r] : xs_rs) {
    ins.requests.push_back({id++, x, x, r});
  }
  ins.capacity = Capacity::finite(1);
  ins.variant = variant;
  return ins;
}

// Algorithm stubs used to exercise the simulator's guard rails.
struct AlwaysIdle final : online::OnlineAlgorithm {
  void begin(Capacity, Variant) override {}
  online::Decision next_decision(double, double,
                                 const std::vector<Request>&) override {
    return online::Idle{};
  }
  std::string name() const override { return "always-idle"; }
};

struct WaitsBackwards final : online::OnlineAlgorithm {
  void begin(Capacity, Variant) override {}
  online::Decision next_decision(double now, double,
                                 const std::vector<Request>&) override {
    return online::WaitUntil{now};  // not in the future
  }
  std::string name() const override { return "waits-backwards"; }
};

struct ServesUnreleased final : online::OnlineAlgorithm {
  void begin(Capacity capacity, Variant variant) override {
    capacity_ = capacity;
    variant_ = variant;
  }
  online::Decision next_decision(double now, double pos,
                                 const std::vector<Request>&) override {
    // Solves for a request the simulator has not released to it.
    offline::SolverQuery q;
    q.start_time = now;
    q.start_pos = pos;
    q.requests = {{1, 2.0, 2.0, 5.0}};
    q.capacity = capacity_;
    q.variant = variant_;
    return online::StartSchedule{offline::solve(q)};
  }
  std::string name() const override { return "serves-unreleased"; }
  Capacity capacity_;
  Variant variant_ = Variant::Open;
};

}  // namespace

TEST_CASE("smartstart on a single point: wait, then one schedule") {
  Instance ins = points({{1.0, 0.0}});
  online::Smartstart alg(2.0);
  sim::SimResult res = sim::simulate(ins, alg);

  CHECK(res.cost == doctest::Approx(2.0));
  CHECK(res.opt_cost == doctest::Approx(1.0));
  CHECK(res.ratio == doctest::Approx(2.0));
  REQUIRE(res.schedules.size() == 1);
  const sim::ScheduleRecord& rec = res.schedules[0];
  CHECK(rec.index == 1);
  CHECK(rec.start_time == doctest::Approx(1.0));
  CHECK(rec.start_pos == doctest::Approx(0.0));
  CHECK(rec.end_time == doctest::Approx(2.0));
  CHECK(rec.end_pos == doctest::Approx(1.0));
  CHECK(rec.length == doctest::Approx(1.0));
  CHECK(rec.served == std::vector<int>{0});

  // The wait appears in the trajectory as a zero-speed segment from 0 to 1.
  REQUIRE_FALSE(res.trajectory.segments.empty());
  const TrajectorySegment& first = res.trajectory.segments.front();
  CHECK(first.x0 == first.x1);
  CHECK(first.t1 == doctest::Approx(1.0));
  CHECK_FALSE(verify_trajectory(ins, res.trajectory).has_value());
  CHECK(sim::check_trace(res, ins, 2.0).empty());
}

TEST_CASE("closed variant pays the return inside the schedule") {
  Instance ins = points({{1.0, 0.0}}, Variant::Closed);
  online::Smartstart alg(2.0);
  sim::SimResult res = sim::simulate(ins, alg);
  CHECK(res.cost == doctest::Approx(4.0));  // start at 2, out and back
  CHECK(res.opt_cost == doctest::Approx(2.0));
  CHECK(res.ratio == doctest::Approx(2.0));
  REQUIRE(res.schedules.size() == 1);
  CHECK(res.schedules[0].start_time == doctest::Approx(2.0));
  CHECK(res.schedules[0].end_pos == doctest::Approx(0.0));
  CHECK_FALSE(verify_trajectory(ins, res.trajectory).has_value());
}

TEST_CASE("a release during a wait re-triggers the start computation") {
  // Waiting for the near point is interrupted at 0.2; the grown pending
  // set defers the start to L/(theta-1) = 3 and is served in one schedule.
  Instance ins = points({{1.0, 0.0}, {-1.0, 0.2}});
  online::Smartstart alg(2.0);
  sim::SimResult res = sim::simulate(ins, alg);

  REQUIRE(res.schedules.size() == 1);
  CHECK(res.schedules[0].start_time == doctest::Approx(3.0));
  CHECK(res.schedules[0].length == doctest::Approx(3.0));
  CHECK(res.cost == doctest::Approx(6.0));
  CHECK(res.opt_cost == doctest::Approx(3.0));
  CHECK(res.ratio == doctest::Approx(2.0));
  CHECK(sim::check_trace(res, ins, 2.0).empty());
}

TEST_CASE("a release during a schedule is buffered until it completes") {
  Instance ins = points({{1.0, 0.0}, {-1.0, 1.5}});
  online::Smartstart alg(2.0);
  sim::SimResult res = sim::simulate(ins, alg);

  // First schedule runs [1, 2]; the far point released at 1.5 must not
  // revise it and is served by a second schedule starting immediately.
  REQUIRE(res.schedules.size() == 2);
  CHECK(res.schedules[0].start_time == doctest::Approx(1.0));
  CHECK(res.schedules[0].served == std::vector<int>{0});
  CHECK(res.schedules[1].start_time == doctest::Approx(2.0));
  CHECK(res.schedules[1].served == std::vector<int>{1});
  CHECK(res.cost == doctest::Approx(4.0));
  CHECK(res.opt_cost == doctest::Approx(3.0));
  CHECK(res.ratio == doctest::Approx(4.0 / 3.0));
  CHECK_FALSE(verify_trajectory(ins, res.trajectory).has_value());
  CHECK(sim::check_trace(res, ins, 2.0).empty());
}

TEST_CASE("ignore serves work the moment it appears") {
  Instance ins = points({{1.0, 0.0}});
  online::Ignore alg;
  sim::SimResult res = sim::simulate(ins, alg);
  CHECK(res.cost == doctest::Approx(1.0));
  CHECK(res.ratio == doctest::Approx(1.0));
  REQUIRE(res.schedules.size() == 1);
  CHECK(res.schedules[0].start_time == doctest::Approx(0.0));
}

TEST_CASE("known_opt overrides the offline solve for the ratio") {
  Instance ins = points({{1.0, 0.0}});
  online::Smartstart alg(2.0);
  sim::SimOptions opts;
  opts.known_opt = 0.5;
  sim::SimResult res = sim::simulate(ins, alg, opts);
  CHECK(res.opt_cost == doctest::Approx(0.5));
  CHECK(res.ratio == doctest::Approx(4.0));
}

TEST_CASE("an empty instance finishes instantly with ratio one") {
  Instance ins;
  ins.capacity = Capacity::finite(1);
  online::Smartstart alg(2.0);
  sim::SimResult res = sim::simulate(ins, alg);
  CHECK(res.cost == 0.0);
  CHECK(res.opt_cost == 0.0);
  CHECK(res.ratio == 1.0);
  CHECK(res.schedules.empty());
  CHECK(res.trajectory.segments.empty());
}

TEST_CASE("check_trace flags corrupted schedule records") {
  Instance ins = points({{1.0, 0.0}});
  online::Smartstart alg(2.0);
  sim::SimResult res = sim::simulate(ins, alg);
  REQUIRE(sim::check_trace(res, ins, 2.0).empty());

  SUBCASE("start earlier than |end_pos| / theta") {
    sim::SimResult bad = res;
    bad.schedules[0].start_time = 0.3;  // needs >= 1/2
    auto msgs = sim::check_trace(bad, ins, 2.0);
    REQUIRE_FALSE(msgs.empty());
    CHECK(msgs[0].find("(a)") != std::string::npos);
  }

  SUBCASE("length beyond the per-schedule budget") {
    sim::SimResult bad = res;
    bad.schedules[0].length = 1.6;  // budget is 1.5 * opt = 1.5
    auto msgs = sim::check_trace(bad, ins, 2.0);
    REQUIRE_FALSE(msgs.empty());
    CHECK(msgs[0].find("(b)") != std::string::npos);
  }

  SUBCASE("trajectory strays beyond the allowed extreme") {
    sim::SimResult bad = res;
    bad.schedules[0].start_pos = 0.0;
    bad.schedules[0].end_pos = 0.0;  // claims a stationary schedule
    auto msgs = sim::check_trace(bad, ins, 2.0);
    bool found_e = false;
    for (const std::string& m : msgs) {
      if (m.find("(e)") != std::string::npos) found_e = true;
    }
    CHECK(found_e);
  }

  SUBCASE("unknown request id in the served list") {
    sim::SimResult bad = res;
    bad.schedules[0].served = {9};
    auto msgs = sim::check_trace(bad, ins, 2.0);
    REQUIRE_FALSE(msgs.empty());
    CHECK(msgs[0].find("unknown request id") != std::string::npos);
  }
}

TEST_CASE("the simulator rejects invalid instances and stuck algorithms") {
  Instance bad = points({{1.0, -1.0}});  // negative release
  online::Smartstart smart(2.0);
  CHECK_THROWS_AS(sim::simulate(bad, smart), std::invalid_argument);

  Instance ins = points({{1.0, 0.0}});
  AlwaysIdle idle;
  CHECK_THROWS_WITH_AS(sim::simulate(ins, idle),
                       "simulate: algorithm idles while requests are outstanding",
                       std::runtime_error);

  WaitsBackwards backwards;
  CHECK_THROWS_WITH_AS(sim::simulate(ins, backwards),
                       "simulate: wait target not in the future",
                       std::runtime_error);

  ServesUnreleased rogue;
  CHECK_THROWS_WITH_AS(sim::simulate(ins, rogue),
                       "simulate: schedule serves a request that is not pending",
                       std::runtime_error);
}
