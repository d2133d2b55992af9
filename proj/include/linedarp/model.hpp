#pragma once

// Core types for dial-a-ride on the real line: requests, instances,
// trajectories, and the checks that tie them together.  A unit-speed server
// starts at the origin at time 0; a request (a, b; r) asks for a transport
// from a to b, released at time r.  In the Open variant the server may end
// anywhere, in the Closed variant it must return to the origin.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace linedarp {

// Global absolute tolerance used by every floating-point comparison in the
// library (trajectory verification, solver tie-breaks, structural checks).
double tolerance();
void set_tolerance(double tol);
// Applies the LINE_DARP_TOL environment variable, if set and parseable.
void apply_tolerance_env();

enum class Variant { Open, Closed };

// Number of requests the server can carry at once.  Zero-length ("point")
// requests never occupy a slot; see Request::is_point.
class Capacity {
 public:
  constexpr Capacity() = default;  // unbounded
  static constexpr Capacity unbounded() { return Capacity{}; }
  static constexpr Capacity finite(int slots) {
    Capacity c;
    c.slots_ = slots;
    return c;
  }
  constexpr bool is_unbounded() const { return slots_ < 0; }
  constexpr int slots() const { return slots_; }
  constexpr bool admits(int load) const { return is_unbounded() || load <= slots_; }
  friend constexpr bool operator==(Capacity, Capacity) = default;

 private:
  int slots_ = -1;
};

struct Request {
  int id = 0;  // index in the instance's request list (release order)
  double a = 0.0;
  double b = 0.0;
  double r = 0.0;

  // Point requests (a == b) model visits; they are served in place and do
  // not consume carrying capacity.
  bool is_point() const { return a == b; }
  double span() const { return b >= a ? b - a : a - b; }
};

struct Instance {
  std::vector<Request> requests;  // ids 0..n-1, in input order
  Capacity capacity;
  Variant variant = Variant::Open;
};

// Serving a request decomposes into a pickup at a and a delivery at b.  The
// ordering (pickups before deliveries, then by id) is the canonical action
// order used for deterministic tie-breaking.
enum class ActionKind : std::uint8_t { Pickup = 0, Delivery = 1 };

struct Action {
  ActionKind kind = ActionKind::Pickup;
  int request_id = 0;
  friend constexpr auto operator<=>(const Action&, const Action&) = default;
};

// [lo, hi] hull of a set of positions.
struct Extents {
  double lo = 0.0;
  double hi = 0.0;
};

// Hull of all request endpoints *and* the origin: lo = min{0, a_i, b_i},
// hi = max{0, a_i, b_i}.
Extents request_extents(const std::vector<Request>& requests);
// Hull of the endpoints alone (no origin); empty input yields nothing.
std::optional<Extents> served_extents(const std::vector<Request>& requests);

// Piecewise-linear server motion.  Segments tile [0, cost] without gaps;
// within a segment the server moves at speed <= 1 (strictly below 1 only
// while standing still, i.e. waiting).
struct TrajectorySegment {
  double t0 = 0.0;
  double x0 = 0.0;
  double t1 = 0.0;
  double x1 = 0.0;
};

struct TrajectoryEvent {
  double time = 0.0;
  int request_id = 0;
  ActionKind kind = ActionKind::Pickup;
};

struct Trajectory {
  std::vector<TrajectorySegment> segments;
  std::vector<TrajectoryEvent> events;  // time-ordered
  // Completion time: final event time (Open), time of return to the origin
  // (Closed).  Zero for an empty instance.
  double cost = 0.0;
};

// Position of the server at `time`; requires time within [0, cost].
double trajectory_position(const Trajectory& trajectory, double time);

struct Validation {
  std::vector<std::string> violations;  // invariant breaches
  std::vector<std::string> notes;       // benign oddities (e.g. r == 0)
  bool ok() const { return violations.empty(); }
};

// Structural checks on an instance: finite coordinates, r >= 0, capacity
// >= 1 or unbounded.  Requests released exactly at time 0 are legal and
// only produce a note.
Validation validate(const Instance& instance);

struct TraceViolation {
  double time = 0.0;
  std::string message;
};

// Replays a trajectory against an instance and returns the first violation
// found (speed limit, discontinuity, wrong service position, early pickup,
// delivery before pickup, capacity breach, missing return to the origin,
// inconsistent cost), or nothing if the trajectory is a valid service of
// the instance.  All comparisons use tolerance().
std::optional<TraceViolation> verify_trajectory(const Instance& instance,
                                                const Trajectory& trajectory);

}  // namespace linedarp
