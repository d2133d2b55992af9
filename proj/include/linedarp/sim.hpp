#pragma once

// Event-driven simulation of an online algorithm on an instance, plus the
// structural checker that replays a Smartstart run against the invariants
// the competitive analysis rests on.

#include <optional>

#include "linedarp/algorithms.hpp"
#include "linedarp/model.hpp"
#include "linedarp/offline.hpp"

namespace linedarp::sim {

struct ScheduleRecord {
  int index = 0;             // 1-based, in start order
  double start_time = 0.0;   // t_j
  double start_pos = 0.0;    // p_j
  double end_time = 0.0;     // t_j + length
  double end_pos = 0.0;      // p_{j+1}
  double length = 0.0;
  std::vector<int> served;   // request ids, in service order
};

struct SimResult {
  Trajectory trajectory;                 // full run from (0, 0)
  std::vector<ScheduleRecord> schedules;
  double cost = 0.0;      // completion time of the last schedule
  double opt_cost = 0.0;  // offline optimum used for the ratio
  double ratio = 0.0;     // cost / opt_cost; 1 when both are 0 (empty run)
};

struct SimOptions {
  // Offline optimum to report against.  Without it the simulator solves
  // the full instance, which is only feasible within the solver limit.
  std::optional<double> known_opt;
  offline::SolverOptions solver;
};

// Runs the algorithm on the instance.  Timestamps are processed in order;
// releases sharing a timestamp are handed to the algorithm before any
// decision at that timestamp.  A started schedule is frozen: requests
// released during it are buffered for the next idle moment.  The returned
// trajectory covers [0, cost] with idle waits recorded as zero-speed
// segments.
SimResult simulate(const Instance& instance, online::OnlineAlgorithm& algorithm,
                   const SimOptions& options = {});

// Structural invariants of a Smartstart(theta) run.  Writing x-/x+ for the
// instance extents (with the origin), y-/y+ for the served set of schedule
// S_j (without the origin), and y = Opt - |x-| - x+, checks for every j:
//   (a) t_j >= |p_{j+1}| / theta
//   (b) length_j <= (1 + theta / (theta + 2)) * Opt
//   (c) L(t_j, 0, served_j) <= |min(0, y-)| + max(0, y+) + y
//   (d) L(t_j, max(0, y-) + min(0, y+), served_j) <= (y+ - y-) + y
//   (e) rightmost position: when |x-| <= x+, every point q visited during
//       S_j satisfies q <= |p_j| + |p_j - p_{j+1}| + y - |min(0, y-)|;
//       when |x-| > x+ the mirrored check runs on the reflected line.
// Returns one message per violated check; empty means a clean trace.
std::vector<std::string> check_trace(const SimResult& result,
                                     const Instance& instance, double theta,
                                     const offline::SolverOptions& solver = {});

}  // namespace linedarp::sim
