#include "linedarp/offline.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "linedarp/fuzz.hpp"
#include "linedarp/model.hpp"

namespace {

using namespace linedarp;
using offline::SolvedSchedule;
using offline::SolverQuery;

SolverQuery query_of(std::vector<Request> requests, Capacity capacity,
                     Variant variant = Variant::Open, double t = 0.0,
                     double p = 0.0) {
  SolverQuery q;
  q.start_time = t;
  q.start_pos = p;
  q.requests = std::move(requests);
  q.capacity = capacity;
  q.variant = variant;
  return q;
}

std::vector<Action> actions_of(std::initializer_list<std::pair<char, int>> seq) {
  std::vector<Action> out;
  for (auto [kind, id] : seq) {
    out.push_back({kind == 'P' ? ActionKind::Pickup : ActionKind::Delivery, id});
  }
  return out;
}

// Both solvers must agree with the hand-computed optimum; they are checked
// independently so a shared mistake cannot hide.
void check_both(const SolverQuery& q, double expected_length) {
  SolvedSchedule fast = offline::solve(q);
  SolvedSchedule reference = offline::brute_force_solve(q);
  CHECK(fast.length == doctest::Approx(expected_length).epsilon(1e-12));
  CHECK(reference.length == doctest::Approx(expected_length).epsilon(1e-12));
  CHECK(fast.actions == reference.actions);
}

}  // namespace

TEST_CASE("opposing rides over the same stretch cost three legs") {
  // 1 -> 2 and 2 -> 1 with one seat: carry one, come back, carry the other.
  auto q = query_of({{0, 1.0, 2.0, 0.0}, {1, 2.0, 1.0, 0.0}}, Capacity::finite(1));
  check_both(q, 3.0);
}

TEST_CASE("a second seat lets overlapping rides share the sweep") {
  std::vector<Request> rides = {{0, 0.0, 1.0, 0.0}, {1, 0.5, 1.5, 0.0}};
  auto tight = query_of(rides, Capacity::finite(1));
  check_both(tight, 2.5);

  auto roomy = query_of(rides, Capacity::finite(2));
  check_both(roomy, 1.5);
  CHECK(offline::solve(roomy).actions ==
        actions_of({{'P', 0}, {'P', 1}, {'D', 0}, {'D', 1}}));

  auto unbounded = query_of(rides, Capacity::unbounded());
  check_both(unbounded, 1.5);
}

TEST_CASE("equal-length schedules resolve to the smallest action sequence") {
  // Serving either side first costs 4; the tie breaks toward request 0.
  auto q = query_of({{0, 1.0, 0.0, 0.0}, {1, -1.0, 0.0, 0.0}}, Capacity::finite(1));
  SolvedSchedule s = offline::solve(q);
  CHECK(s.length == doctest::Approx(4.0));
  CHECK(s.actions == actions_of({{'P', 0}, {'D', 0}, {'P', 1}, {'D', 1}}));
  CHECK(offline::brute_force_solve(q).actions == s.actions);

  // Identical rides with two seats: pickups precede deliveries in the
  // canonical order, so the lex-smallest schedule loads both first.
  auto twin = query_of({{0, 0.0, 1.0, 0.0}, {1, 0.0, 1.0, 0.0}}, Capacity::finite(2));
  SolvedSchedule t = offline::solve(twin);
  CHECK(t.length == doctest::Approx(1.0));
  CHECK(t.actions == actions_of({{'P', 0}, {'P', 1}, {'D', 0}, {'D', 1}}));
}

TEST_CASE("point requests ride along without consuming a seat") {
  auto q = query_of({{0, 0.0, 2.0, 0.0}, {1, 1.0, 1.0, 0.0}}, Capacity::finite(1));
  check_both(q, 2.0);
  CHECK(offline::solve(q).actions ==
        actions_of({{'P', 0}, {'P', 1}, {'D', 1}, {'D', 0}}));
}

TEST_CASE("closed schedules pay the return to the origin") {
  auto q = query_of({{0, 1.0, 1.0, 0.0}}, Capacity::finite(1), Variant::Closed);
  check_both(q, 2.0);
  CHECK(offline::solve(q).end_pos == doctest::Approx(0.0));

  auto open = query_of({{0, 1.0, 1.0, 0.0}}, Capacity::finite(1));
  check_both(open, 1.0);
  CHECK(offline::solve(open).end_pos == doctest::Approx(1.0));
}

TEST_CASE("the server waits at the pickup for a late release") {
  auto q = query_of({{0, 1.0, 1.0, 5.0}}, Capacity::finite(1));
  SolvedSchedule s = offline::solve(q);
  CHECK(s.length == doctest::Approx(5.0));  // arrive at 1, idle until 5
  // The trajectory records the wait as a zero-speed segment.
  bool found_wait = false;
  for (const auto& seg : s.trajectory.segments) {
    if (seg.x0 == seg.x1 && seg.t1 > seg.t0 + 1.0) found_wait = true;
  }
  CHECK(found_wait);
  CHECK(offline::brute_force_solve(q).length == doctest::Approx(5.0));

  // Starting after the release removes the wait entirely.
  auto late = query_of({{0, 1.0, 1.0, 5.0}}, Capacity::finite(1), Variant::Open,
                       6.0, 0.0);
  check_both(late, 1.0);
}

TEST_CASE("start position changes which side is cheaper to serve first") {
  auto q = query_of({{0, 1.0, 2.0, 0.0}, {1, 2.0, 1.0, 0.0}}, Capacity::finite(1),
                    Variant::Open, 10.0, 2.0);
  SolvedSchedule s = offline::solve(q);
  CHECK(s.length == doctest::Approx(2.0));
  CHECK(s.actions == actions_of({{'P', 1}, {'D', 1}, {'P', 0}, {'D', 0}}));
  CHECK(offline::brute_force_solve(q).length == doctest::Approx(2.0));
}

TEST_CASE("an empty request set costs nothing") {
  auto q = query_of({}, Capacity::finite(1));
  SolvedSchedule s = offline::solve(q);
  CHECK(s.length == 0.0);
  CHECK(s.actions.empty());
  CHECK(offline::brute_force_solve(q).length == 0.0);

  // Closed from a displaced start still has to drive home.
  auto displaced = query_of({}, Capacity::finite(1), Variant::Closed, 0.0, 2.0);
  CHECK(offline::solve(displaced).length == doctest::Approx(2.0));
}

TEST_CASE("opt solves the full instance from the initial state") {
  Instance ins;
  ins.requests = {{0, 1.0, 2.0, 0.0}, {1, 2.0, 1.0, 0.0}};
  ins.capacity = Capacity::finite(1);
  CHECK(offline::opt(ins) == doctest::Approx(3.0));
  ins.variant = Variant::Closed;
  CHECK(offline::opt(ins) == doctest::Approx(4.0));
}

TEST_CASE("request limits and malformed queries are rejected") {
  std::vector<Request> many;
  for (int i = 0; i < 13; ++i) {
    many.push_back({i, static_cast<double>(i), static_cast<double>(i), 0.0});
  }
  auto q = query_of(many, Capacity::finite(1));
  CHECK_THROWS_AS(offline::solve(q), offline::SolverLimitError);

  offline::SolverOptions raised;
  raised.max_requests = 16;
  CHECK_NOTHROW(offline::solve(q, raised));

  std::vector<Request> eight(many.begin(), many.begin() + 8);
  CHECK_THROWS_AS(offline::brute_force_solve(query_of(eight, Capacity::finite(1))),
                  offline::SolverLimitError);

  auto dup = query_of({{0, 0.0, 1.0, 0.0}, {0, 1.0, 2.0, 0.0}}, Capacity::finite(1));
  CHECK_THROWS_AS(offline::solve(dup), std::invalid_argument);

  auto bad = query_of({{0, std::nan(""), 1.0, 0.0}}, Capacity::finite(1));
  CHECK_THROWS_AS(offline::solve(bad), std::invalid_argument);
}

TEST_CASE("execute_actions replays a sequence with waits and the closing leg") {
  auto q = query_of({{0, 1.0, 2.0, 3.0}}, Capacity::finite(1), Variant::Closed);
  SolvedSchedule s =
      offline::execute_actions(q, actions_of({{'P', 0}, {'D', 0}}));
  // Drive to 1 (t=1), wait until the release at 3, carry to 2 (t=4),
  // return to the origin (t=6).
  CHECK(s.length == doctest::Approx(6.0));
  CHECK(s.end_pos == doctest::Approx(0.0));
  REQUIRE(s.trajectory.events.size() == 2);
  CHECK(s.trajectory.events[0].time == doctest::Approx(3.0));
  CHECK(s.trajectory.events[1].time == doctest::Approx(4.0));
}

TEST_CASE("memoized search returns the same lengths as the plain search") {
  fuzz::Rng rng(314159);
  offline::SolverOptions memo_on;
  memo_on.use_memo = true;
  for (int i = 0; i < 120; ++i) {
    SolverQuery q = fuzz::random_query(rng, 6);
    double plain = offline::solve(q).length;
    double memo = offline::solve(q, memo_on).length;
    CAPTURE(i);
    CHECK(std::abs(plain - memo) <= tolerance());
  }
}

TEST_CASE("randomized equivalence against the exhaustive reference") {
  fuzz::VerifyReport report = fuzz::verify_solver_equivalence(42, 200);
  CHECK(report.checked == 200);
  CHECK(report.failures == 0);
  CHECK(report.messages.empty());
}

TEST_CASE("the equivalence harness catches an injected off-by-a-bit solver") {
  fuzz::SolveFn skewed = [](const SolverQuery& q) {
    SolvedSchedule s = offline::solve(q);
    s.length += 0.1;
    return s;
  };
  fuzz::VerifyReport report = fuzz::verify_solver_equivalence(42, 25, 5, skewed);
  CHECK(report.failures > 0);
  REQUIRE_FALSE(report.messages.empty());
  CHECK(report.messages.front().find("seed=") != std::string::npos);
}

TEST_CASE("randomized structural properties of the solver") {
  fuzz::VerifyReport report = fuzz::verify_solver_properties(7, 150);
  CHECK(report.checked == 150);
  CHECK(report.failures == 0);
}
