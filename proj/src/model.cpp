#include "linedarp/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace linedarp {

namespace {

double g_tolerance = 1e-9;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

double tolerance() { return g_tolerance; }

void set_tolerance(double tol) { g_tolerance = tol; }

void apply_tolerance_env() {
  const char* s = std::getenv("LINE_DARP_TOL");
  if (s == nullptr || *s == '\0') return;
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end != s && std::isfinite(v) && v > 0.0) g_tolerance = v;
}

Extents request_extents(const std::vector<Request>& requests) {
  Extents e{0.0, 0.0};
  for (const Request& q : requests) {
    e.lo = std::min({e.lo, q.a, q.b});
    e.hi = std::max({e.hi, q.a, q.b});
  }
  return e;
}

std::optional<Extents> served_extents(const std::vector<Request>& requests) {
  if (requests.empty()) return std::nullopt;
  Extents e{requests.front().a, requests.front().a};
  for (const Request& q : requests) {
    e.lo = std::min({e.lo, q.a, q.b});
    e.hi = std::max({e.hi, q.a, q.b});
  }
  return e;
}

Validation validate(const Instance& instance) {
  Validation result;
  if (!instance.capacity.is_unbounded() && instance.capacity.slots() < 1) {
    result.violations.push_back("capacity must be >= 1 or unbounded");
  }
  for (std::size_t i = 0; i < instance.requests.size(); ++i) {
    const Request& q = instance.requests[i];
    std::string tag = "request " + std::to_string(i);
    if (q.id != static_cast<int>(i)) {
      result.violations.push_back(tag + ": id " + std::to_string(q.id) +
                                  " does not match its position in the list");
    }
    if (!std::isfinite(q.a) || !std::isfinite(q.b)) {
      result.violations.push_back(tag + ": non-finite endpoint");
      continue;
    }
    if (!std::isfinite(q.r)) {
      result.violations.push_back(tag + ": non-finite release time");
      continue;
    }
    if (q.r < 0.0) {
      result.violations.push_back(tag + ": negative release time " + fmt(q.r));
    } else if (q.r == 0.0) {
      result.notes.push_back(tag + ": released at time 0");
    }
  }
  return result;
}

double trajectory_position(const Trajectory& trajectory, double time) {
  const auto& segs = trajectory.segments;
  if (segs.empty()) return 0.0;
  // First segment whose end covers `time`; endpoints of adjacent segments
  // coincide, so either choice agrees within tolerance.
  auto it = std::lower_bound(
      segs.begin(), segs.end(), time,
      [](const TrajectorySegment& s, double t) { return s.t1 < t; });
  if (it == segs.end()) return segs.back().x1;
  const TrajectorySegment& s = *it;
  if (time <= s.t0) return s.x0;
  double span = s.t1 - s.t0;
  if (span <= 0.0) return s.x0;
  double u = (time - s.t0) / span;
  return s.x0 + u * (s.x1 - s.x0);
}

namespace {

std::optional<TraceViolation> check_segments(const Trajectory& t, double tol) {
  const auto& segs = t.segments;
  if (segs.empty()) return std::nullopt;
  if (std::abs(segs.front().t0) > tol || std::abs(segs.front().x0) > tol) {
    return TraceViolation{segs.front().t0,
                          "trajectory must start at the origin at time 0"};
  }
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const TrajectorySegment& s = segs[i];
    if (s.t1 < s.t0 - tol) {
      return TraceViolation{s.t0, "segment runs backwards in time"};
    }
    double dist = std::abs(s.x1 - s.x0);
    double span = s.t1 - s.t0;
    if (dist > span + tol) {
      return TraceViolation{s.t0, "segment exceeds unit speed"};
    }
    if (i + 1 < segs.size()) {
      const TrajectorySegment& n = segs[i + 1];
      if (std::abs(n.t0 - s.t1) > tol || std::abs(n.x0 - s.x1) > tol) {
        return TraceViolation{s.t1, "trajectory is discontinuous"};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<TraceViolation> verify_trajectory(const Instance& instance,
                                                const Trajectory& trajectory) {
  const double tol = tolerance();
  if (auto v = check_segments(trajectory, tol)) return v;

  const auto& events = trajectory.events;
  for (std::size_t i = 0; i + 1 < events.size(); ++i) {
    if (events[i + 1].time < events[i].time - tol) {
      return TraceViolation{events[i].time, "events out of time order"};
    }
  }

  int n = static_cast<int>(instance.requests.size());
  std::vector<int> picked_at(n, -1);     // event index of the pickup
  std::vector<int> delivered_at(n, -1);  // event index of the delivery
  int load = 0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const TrajectoryEvent& e = events[i];
    if (e.request_id < 0 || e.request_id >= n) {
      return TraceViolation{e.time, "event references unknown request"};
    }
    const Request& q = instance.requests[e.request_id];
    double pos = trajectory_position(trajectory, e.time);
    std::string tag = "request " + std::to_string(e.request_id);
    if (e.kind == ActionKind::Pickup) {
      if (picked_at[e.request_id] >= 0) {
        return TraceViolation{e.time, tag + " picked up twice"};
      }
      picked_at[e.request_id] = static_cast<int>(i);
      if (std::abs(pos - q.a) > tol) {
        return TraceViolation{e.time, tag + " picked up away from a"};
      }
      if (e.time < q.r - tol) {
        return TraceViolation{e.time, tag + " picked up before its release"};
      }
      if (!q.is_point()) {
        ++load;
        if (!instance.capacity.admits(load)) {
          return TraceViolation{e.time, "capacity exceeded at pickup of " + tag};
        }
      }
    } else {
      if (picked_at[e.request_id] < 0) {
        return TraceViolation{e.time, tag + " delivered before pickup"};
      }
      if (delivered_at[e.request_id] >= 0) {
        return TraceViolation{e.time, tag + " delivered twice"};
      }
      delivered_at[e.request_id] = static_cast<int>(i);
      if (std::abs(pos - q.b) > tol) {
        return TraceViolation{e.time, tag + " delivered away from b"};
      }
      if (!q.is_point()) --load;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (picked_at[i] < 0) {
      return TraceViolation{trajectory.cost,
                            "request " + std::to_string(i) + " never picked up"};
    }
    if (delivered_at[i] < 0) {
      return TraceViolation{trajectory.cost,
                            "request " + std::to_string(i) + " never delivered"};
    }
  }

  double end_time = trajectory.segments.empty() ? 0.0 : trajectory.segments.back().t1;
  double end_pos = trajectory.segments.empty() ? 0.0 : trajectory.segments.back().x1;
  double last_event_time = events.empty() ? 0.0 : events.back().time;
  if (instance.variant == Variant::Closed) {
    if (std::abs(end_pos) > tol) {
      return TraceViolation{end_time, "closed trajectory does not end at the origin"};
    }
    if (std::abs(trajectory.cost - end_time) > tol) {
      return TraceViolation{end_time, "cost does not match the return time"};
    }
  } else {
    if (std::abs(trajectory.cost - last_event_time) > tol) {
      return TraceViolation{last_event_time, "cost does not match the final event time"};
    }
    if (std::abs(end_time - trajectory.cost) > tol) {
      return TraceViolation{end_time, "trajectory continues past its cost"};
    }
  }
  return std::nullopt;
}

}  // namespace linedarp
