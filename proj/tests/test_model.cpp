#include "linedarp/model.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "doctest.h"

namespace {

using namespace linedarp;

// Restores the global tolerance when a test adjusts it.
struct ToleranceGuard {
  double saved = tolerance();
  ~ToleranceGuard() { set_tolerance(saved); }
};

Instance single_ride_instance(double a, double b, double r,
                              Variant variant = Variant::Open) {
  Instance ins;
  ins.requests.push_back({0, a, b, r});
  ins.capacity = Capacity::finite(1);
  ins.variant = variant;
  return ins;
}

// Ride from 0.5 to 1.5 released at 1.0: drive out, stand still until the
// release, then carry.  Used as the clean baseline for verify_trajectory.
Trajectory clean_ride_trajectory() {
  Trajectory t;
  t.segments.push_back({0.0, 0.0, 0.5, 0.5});
  t.segments.push_back({0.5, 0.5, 1.0, 0.5});
  t.segments.push_back({1.0, 0.5, 2.0, 1.5});
  t.events.push_back({1.0, 0, ActionKind::Pickup});
  t.events.push_back({2.0, 0, ActionKind::Delivery});
  t.cost = 2.0;
  return t;
}

}  // namespace

TEST_CASE("tolerance is a settable global with an environment override") {
  ToleranceGuard guard;
  CHECK(tolerance() == 1e-9);
  set_tolerance(1e-6);
  CHECK(tolerance() == 1e-6);

  setenv("LINE_DARP_TOL", "1e-8", 1);
  apply_tolerance_env();
  CHECK(tolerance() == 1e-8);

  // Garbage and non-positive values leave the tolerance untouched.
  setenv("LINE_DARP_TOL", "not-a-number", 1);
  apply_tolerance_env();
  CHECK(tolerance() == 1e-8);
  setenv("LINE_DARP_TOL", "-1", 1);
  apply_tolerance_env();
  CHECK(tolerance() == 1e-8);
  unsetenv("LINE_DARP_TOL");
}

TEST_CASE("capacity distinguishes finite slots from unbounded") {
  Capacity unbounded = Capacity::unbounded();
  CHECK(unbounded.is_unbounded());
  CHECK(unbounded.admits(1000000));
  CHECK(Capacity{} == unbounded);

  Capacity two = Capacity::finite(2);
  CHECK_FALSE(two.is_unbounded());
  CHECK(two.slots() == 2);
  CHECK(two.admits(0));
  CHECK(two.admits(2));
  CHECK_FALSE(two.admits(3));
  CHECK_FALSE(two == unbounded);
  CHECK(two == Capacity::finite(2));
}

TEST_CASE("point requests have zero span and direction does not matter") {
  Request ride{0, -1.0, 2.0, 0.0};
  CHECK_FALSE(ride.is_point());
  CHECK(ride.span() == 3.0);

  Request backwards{1, 2.0, -1.0, 0.0};
  CHECK(backwards.span() == 3.0);

  Request point{2, 0.75, 0.75, 0.5};
  CHECK(point.is_point());
  CHECK(point.span() == 0.0);
}

TEST_CASE("request_extents includes the origin, served_extents does not") {
  std::vector<Request> requests = {{0, 0.5, 1.5, 0.0}, {1, 0.25, 0.75, 0.0}};
  Extents with_origin = request_extents(requests);
  CHECK(with_origin.lo == 0.0);  // origin pulls the hull down
  CHECK(with_origin.hi == 1.5);

  auto without = served_extents(requests);
  REQUIRE(without.has_value());
  CHECK(without->lo == 0.25);
  CHECK(without->hi == 1.5);

  CHECK_FALSE(served_extents({}).has_value());
  Extents empty = request_extents({});
  CHECK(empty.lo == 0.0);
  CHECK(empty.hi == 0.0);
}

TEST_CASE("trajectory_position interpolates and holds still over waits") {
  Trajectory t = clean_ride_trajectory();
  CHECK(trajectory_position(t, 0.0) == 0.0);
  CHECK(trajectory_position(t, 0.25) == doctest::Approx(0.25));
  CHECK(trajectory_position(t, 0.5) == doctest::Approx(0.5));
  CHECK(trajectory_position(t, 0.75) == doctest::Approx(0.5));  // waiting
  CHECK(trajectory_position(t, 1.5) == doctest::Approx(1.0));
  CHECK(trajectory_position(t, 2.0) == doctest::Approx(1.5));
  // Past the end the final position is held.
  CHECK(trajectory_position(t, 99.0) == doctest::Approx(1.5));
  CHECK(trajectory_position(Trajectory{}, 1.0) == 0.0);
}

TEST_CASE("validate accepts a well-formed instance and notes r == 0") {
  Instance ins;
  ins.requests.push_back({0, -1.0, 1.0, 0.0});
  ins.requests.push_back({1, 0.5, 0.5, 2.0});
  ins.capacity = Capacity::finite(1);
  Validation v = validate(ins);
  CHECK(v.ok());
  REQUIRE(v.notes.size() == 1);
  CHECK(v.notes[0].find("released at time 0") != std::string::npos);
}

TEST_CASE("validate flags structural breaches") {
  Instance ins;
  ins.capacity = Capacity::finite(0);
  ins.requests.push_back({5, 0.0, 1.0, 0.0});  // wrong id
  ins.requests.push_back({1, std::numeric_limits<double>::quiet_NaN(), 1.0, 0.0});
  ins.requests.push_back({2, 0.0, 1.0, std::numeric_limits<double>::infinity()});
  ins.requests.push_back({3, 0.0, 1.0, -0.5});
  Validation v = validate(ins);
  CHECK_FALSE(v.ok());
  CHECK(v.violations.size() == 5);
}

TEST_CASE("verify_trajectory accepts a clean ride with a waiting segment") {
  Instance ins = single_ride_instance(0.5, 1.5, 1.0);
  CHECK_FALSE(verify_trajectory(ins, clean_ride_trajectory()).has_value());
}

TEST_CASE("verify_trajectory rejects speed and continuity breaches") {
  Instance ins = single_ride_instance(0.5, 1.5, 1.0);

  SUBCASE("over unit speed") {
    Trajectory t = clean_ride_trajectory();
    t.segments[2] = {1.0, 0.5, 1.4, 1.5};  // distance 1 in 0.4 time units
    t.events[1].time = 1.4;
    t.cost = 1.4;
    auto v = verify_trajectory(ins, t);
    REQUIRE(v.has_value());
    CHECK(v->message.find("unit speed") != std::string::npos);
  }

  SUBCASE("teleport between segments") {
    Trajectory t = clean_ride_trajectory();
    t.segments[1].x1 = 0.3;  // next segment still starts at 0.5
    auto v = verify_trajectory(ins, t);
    REQUIRE(v.has_value());
    CHECK(v->message.find("discontinuous") != std::string::npos);
  }

  SUBCASE("does not start at the origin") {
    Trajectory t = clean_ride_trajectory();
    t.segments[0].x0 = 0.2;
    auto v = verify_trajectory(ins, t);
    REQUIRE(v.has_value());
    CHECK(v->message.find("origin") != std::string::npos);
  }
}

TEST_CASE("verify_trajectory rejects service protocol breaches") {
  SUBCASE("pickup before the release") {
    Instance ins = single_ride_instance(0.5, 1.5, 1.5);  // released later
    auto v = verify_trajectory(ins, clean_ride_trajectory());
    REQUIRE(v.has_value());
    CHECK(v->message.find("before its release") != std::string::npos);
  }

  SUBCASE("pickup away from a") {
    Instance ins = single_ride_instance(0.4, 1.5, 1.0);
    auto v = verify_trajectory(ins, clean_ride_trajectory());
    REQUIRE(v.has_value());
    CHECK(v->message.find("away from a") != std::string::npos);
  }

  SUBCASE("delivery before pickup") {
    Instance ins = single_ride_instance(0.5, 1.5, 1.0);
    Trajectory t = clean_ride_trajectory();
    std::swap(t.events[0].kind, t.events[1].kind);
    std::swap(t.events[0].request_id, t.events[1].request_id);
    auto v = verify_trajectory(ins, t);
    REQUIRE(v.has_value());
    CHECK(v->message.find("delivered before pickup") != std::string::npos);
  }

  SUBCASE("request never served") {
    Instance ins = single_ride_instance(0.5, 1.5, 1.0);
    ins.requests.push_back({1, -2.0, -1.0, 0.0});
    auto v = verify_trajectory(ins, clean_ride_trajectory());
    REQUIRE(v.has_value());
    CHECK(v->message.find("never picked up") != std::string::npos);
  }

  SUBCASE("unknown request id in an event") {
    Instance ins = single_ride_instance(0.5, 1.5, 1.0);
    Trajectory t = clean_ride_trajectory();
    t.events[0].request_id = 7;
    auto v = verify_trajectory(ins, t);
    REQUIRE(v.has_value());
    CHECK(v->message.find("unknown request") != std::string::npos);
  }
}

TEST_CASE("verify_trajectory enforces carrying capacity but exempts points") {
  // Two rides over the same stretch, picked up together.
  Instance ins;
  ins.requests.push_back({0, 0.0, 1.0, 0.0});
  ins.requests.push_back({1, 0.0, 1.0, 0.0});
  ins.capacity = Capacity::finite(1);

  Trajectory t;
  t.segments.push_back({0.0, 0.0, 1.0, 1.0});
  t.events.push_back({0.0, 0, ActionKind::Pickup});
  t.events.push_back({0.0, 1, ActionKind::Pickup});
  t.events.push_back({1.0, 0, ActionKind::Delivery});
  t.events.push_back({1.0, 1, ActionKind::Delivery});
  t.cost = 1.0;

  auto v = verify_trajectory(ins, t);
  REQUIRE(v.has_value());
  CHECK(v->message.find("capacity exceeded") != std::string::npos);

  // The same shape passes with capacity 2...
  ins.capacity = Capacity::finite(2);
  CHECK_FALSE(verify_trajectory(ins, t).has_value());

  // ...and with capacity 1 when one of the two is a point visit.
  ins.capacity = Capacity::finite(1);
  ins.requests[1] = {1, 0.0, 0.0, 0.0};
  Trajectory tp = t;
  tp.events[2] = {0.0, 1, ActionKind::Delivery};  // point served in place
  tp.events[3] = {1.0, 0, ActionKind::Delivery};
  CHECK_FALSE(verify_trajectory(ins, tp).has_value());
}

TEST_CASE("verify_trajectory checks the closing leg and the reported cost") {
  SUBCASE("closed run must end at the origin") {
    Instance ins = single_ride_instance(0.5, 1.5, 1.0, Variant::Closed);
    auto v = verify_trajectory(ins, clean_ride_trajectory());
    REQUIRE(v.has_value());
    CHECK(v->message.find("end at the origin") != std::string::npos);

    Trajectory t = clean_ride_trajectory();
    t.segments.push_back({2.0, 1.5, 3.5, 0.0});
    t.cost = 3.5;
    CHECK_FALSE(verify_trajectory(ins, t).has_value());
  }

  SUBCASE("open cost must equal the final event time") {
    Instance ins = single_ride_instance(0.5, 1.5, 1.0);
    Trajectory t = clean_ride_trajectory();
    t.cost = 2.5;
    auto v = verify_trajectory(ins, t);
    REQUIRE(v.has_value());
    CHECK(v->message.find("cost") != std::string::npos);
  }
}
