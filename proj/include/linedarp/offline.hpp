#pragma once

// Exact offline solver for dial-a-ride on the line.  L(t, p, R) is the
// length of a shortest schedule that starts at time t at position p and
// serves all of R, waiting for releases as needed (Closed schedules also
// return to the origin).  Opt(instance) = L(0, 0, all requests).

#include <stdexcept>

#include "linedarp/model.hpp"

namespace linedarp::offline {

struct SolverQuery {
  double start_time = 0.0;
  double start_pos = 0.0;
  std::vector<Request> requests;
  Capacity capacity;
  Variant variant = Variant::Open;
};

struct SolverOptions {
  // Hard cap on |requests| for the branch-and-bound solver.
  int max_requests = 12;
  // Dominance pruning on (position, state) pairs.  Cuts revisits at the
  // price of a position quantization at tolerance scale; off by default.
  bool use_memo = false;
};

struct SolvedSchedule {
  double length = 0.0;            // duration from start_time to completion
  std::vector<Action> actions;    // pickups/deliveries in execution order
  double end_pos = 0.0;
  Trajectory trajectory;          // fragment with absolute times, starting
                                  // at (start_time, start_pos)
};

class SolverLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Minimum-length schedule for the query.  Among minimum-length schedules
// (up to tolerance()) returns the one whose action sequence is
// lexicographically smallest under (pickups before deliveries, then
// request id).  Throws SolverLimitError beyond options.max_requests.
SolvedSchedule solve(const SolverQuery& query, const SolverOptions& options = {});

// Reference solver: exhaustively enumerates every capacity- and
// precedence-feasible action interleaving with no pruning.  Same
// tie-breaking as solve().  Refuses more than 7 requests.
SolvedSchedule brute_force_solve(const SolverQuery& query);

// Opt(instance): length of an optimal offline schedule from (0, 0).
double opt(const Instance& instance, const SolverOptions& options = {});

// Replays an action sequence greedily from the query's start state (move
// to the action's position, wait for the release when picking up early,
// Closed: return to the origin at the end) and materializes the resulting
// schedule.  The sequence must be feasible.
SolvedSchedule execute_actions(const SolverQuery& query,
                               const std::vector<Action>& actions);

}  // namespace linedarp::offline
