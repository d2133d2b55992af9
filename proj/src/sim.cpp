#include "linedarp/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace linedarp::sim {

namespace {

std::string describe(int index, char check, const std::string& detail) {
  std::ostringstream os;
  os << "schedule " << index << ": (" << check << ") " << detail;
  return os.str();
}

}  // namespace

SimResult simulate(const Instance& instance, online::OnlineAlgorithm& algorithm,
                   const SimOptions& options) {
  Validation v = validate(instance);
  if (!v.ok()) {
    throw std::invalid_argument("simulate: invalid instance: " + v.violations.front());
  }
  const int n = static_cast<int>(instance.requests.size());
  const double tol = tolerance();

  // Releases ordered by (time, id); ids already ascend within equal times
  // because the list is in input order.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return instance.requests[x].r < instance.requests[y].r;
  });

  algorithm.begin(instance.capacity, instance.variant);

  SimResult res;
  double now = 0.0;
  double pos = 0.0;
  int next = 0;
  int served = 0;
  std::vector<Request> pending;

  auto flush_releases = [&](double upto) {
    while (next < n && instance.requests[order[next]].r <= upto) {
      const Request& q = instance.requests[order[next]];
      pending.push_back(q);
      algorithm.on_release(q.r, q);
      ++next;
    }
  };
  auto idle_until = [&](double t2) {
    if (t2 > now) {
      res.trajectory.segments.push_back(TrajectorySegment{now, pos, t2, pos});
      now = t2;
    }
  };

  flush_releases(now);
  long steps = 0;
  const long step_limit = 8L * n + 64;
  while (served < n) {
    if (++steps > step_limit) {
      throw std::runtime_error("simulate: algorithm makes no progress");
    }
    online::Decision d = algorithm.next_decision(now, pos, pending);
    if (std::holds_alternative<online::Idle>(d)) {
      if (next >= n) {
        throw std::runtime_error("simulate: algorithm idles while requests are outstanding");
      }
      idle_until(instance.requests[order[next]].r);
      flush_releases(now);
      continue;
    }
    if (std::holds_alternative<online::WaitUntil>(d)) {
      double target = std::get<online::WaitUntil>(d).time;
      if (!(target > now)) {
        throw std::runtime_error("simulate: wait target not in the future");
      }
      // A release strictly before the target interrupts the wait and
      // re-triggers the decision.
      if (next < n && instance.requests[order[next]].r < target) {
        target = instance.requests[order[next]].r;
      }
      idle_until(target);
      flush_releases(now);
      continue;
    }

    offline::SolvedSchedule schedule =
        std::move(std::get<online::StartSchedule>(d).schedule);
    if (schedule.actions.empty()) {
      throw std::runtime_error("simulate: algorithm started an empty schedule");
    }
    if (!schedule.trajectory.segments.empty()) {
      const TrajectorySegment& first = schedule.trajectory.segments.front();
      if (std::abs(first.t0 - now) > tol || std::abs(first.x0 - pos) > tol) {
        throw std::runtime_error("simulate: schedule does not start at the server state");
      }
    }
    ScheduleRecord rec;
    rec.index = static_cast<int>(res.schedules.size()) + 1;
    rec.start_time = now;
    rec.start_pos = pos;
    rec.end_time = schedule.trajectory.cost;
    rec.end_pos = schedule.end_pos;
    rec.length = schedule.length;
    std::set<int> ids;
    for (const Action& a : schedule.actions) {
      if (a.kind == ActionKind::Pickup) {
        ids.insert(a.request_id);
        rec.served.push_back(a.request_id);
      }
    }
    // Frozen-schedule firewall: everything served must already be pending.
    for (int id : ids) {
      bool found = false;
      for (const Request& q : pending) found = found || q.id == id;
      if (!found) {
        throw std::runtime_error("simulate: schedule serves a request that is not pending");
      }
    }
    std::erase_if(pending, [&](const Request& q) { return ids.count(q.id) > 0; });
    served += static_cast<int>(ids.size());

    for (const TrajectorySegment& s : schedule.trajectory.segments) {
      res.trajectory.segments.push_back(s);
    }
    for (const TrajectoryEvent& e : schedule.trajectory.events) {
      res.trajectory.events.push_back(e);
    }
    res.schedules.push_back(std::move(rec));
    now = schedule.trajectory.cost;
    pos = schedule.end_pos;
    flush_releases(now);
  }

  res.cost = res.schedules.empty() ? 0.0 : now;
  // Trim trailing idle segments so the trajectory ends with the last
  // schedule (idling past the final completion carries no information).
  while (!res.trajectory.segments.empty() &&
         res.trajectory.segments.back().t0 >= res.cost) {
    res.trajectory.segments.pop_back();
  }
  res.trajectory.cost = res.cost;
  res.opt_cost = options.known_opt ? *options.known_opt
                                   : offline::opt(instance, options.solver);
  if (res.opt_cost > 0.0) {
    res.ratio = res.cost / res.opt_cost;
  } else {
    // Opt is 0 only when there is nothing to serve; an idle run is optimal.
    res.ratio = std::abs(res.cost) <= tolerance() ? 1.0 : std::numeric_limits<double>::infinity();
  }
  return res;
}

std::vector<std::string> check_trace(const SimResult& result,
                                     const Instance& instance, double theta,
                                     const offline::SolverOptions& solver) {
  std::vector<std::string> out;
  const double tol = tolerance();
  const double opt_cost = result.opt_cost;
  Extents x = request_extents(instance.requests);  // x.lo <= 0 <= x.hi
  double y = opt_cost - (-x.lo) - x.hi;
  if (y < -tol) {
    out.push_back("opt_cost falls below the extent bound |x-| + x+");
  }
  y = std::max(y, 0.0);

  std::unordered_map<int, const Request*> by_id;
  for (const Request& q : instance.requests) by_id[q.id] = &q;

  for (const ScheduleRecord& rec : result.schedules) {
    std::vector<Request> served;
    served.reserve(rec.served.size());
    for (int id : rec.served) {
      auto it = by_id.find(id);
      if (it == by_id.end()) {
        out.push_back(describe(rec.index, '?', "serves an unknown request id"));
        continue;
      }
      served.push_back(*it->second);
    }
    if (served.empty()) continue;

    // (a) start no earlier than |p_{j+1}| / theta.
    if (rec.start_time < std::abs(rec.end_pos) / theta - tol) {
      out.push_back(describe(rec.index, 'a',
                             "starts before |end_pos| / theta"));
    }
    // (b) schedule length against the global optimum.
    if (rec.length > (1.0 + theta / (theta + 2.0)) * opt_cost + tol) {
      out.push_back(describe(rec.index, 'b',
                             "length exceeds (1 + theta/(theta+2)) * opt"));
    }

    Extents ye = *served_extents(served);
    const double ym = ye.lo;
    const double yp = ye.hi;

    offline::SolverQuery q;
    q.requests = served;
    q.capacity = instance.capacity;
    q.variant = instance.variant;
    q.start_time = rec.start_time;

    // (c) serving the schedule's requests from the origin.
    q.start_pos = 0.0;
    double from_origin = offline::solve(q, solver).length;
    double rhs_c = std::abs(std::min(0.0, ym)) + std::max(0.0, yp) + y;
    if (from_origin > rhs_c + tol) {
      out.push_back(describe(rec.index, 'c',
                             "L(t_j, 0, served) exceeds |min(0,y-)| + max(0,y+) + y"));
    }
    // (d) serving them from the near edge of their hull.
    q.start_pos = std::max(0.0, ym) + std::min(0.0, yp);
    double from_edge = offline::solve(q, solver).length;
    if (from_edge > (yp - ym) + y + tol) {
      out.push_back(describe(rec.index, 'd',
                             "L(t_j, edge, served) exceeds (y+ - y-) + y"));
    }

    // (e) rightmost (or, mirrored, leftmost) position reached during S_j.
    double vmin = std::min(rec.start_pos, rec.end_pos);
    double vmax = std::max(rec.start_pos, rec.end_pos);
    for (const TrajectorySegment& s : result.trajectory.segments) {
      if (s.t0 >= rec.start_time - tol && s.t1 <= rec.end_time + tol) {
        vmin = std::min({vmin, s.x0, s.x1});
        vmax = std::max({vmax, s.x0, s.x1});
      }
    }
    double travel = std::abs(rec.start_pos) + std::abs(rec.start_pos - rec.end_pos);
    if (-x.lo <= x.hi + tol) {
      double rhs = travel + y - std::abs(std::min(0.0, ym));
      if (vmax > rhs + tol) {
        out.push_back(describe(rec.index, 'e', "moves right of the allowed extreme"));
      }
    } else {
      double rhs = travel + y - std::max(0.0, yp);
      if (-vmin > rhs + tol) {
        out.push_back(describe(rec.index, 'e', "moves left of the allowed extreme"));
      }
    }
  }
  return out;
}

}  // namespace linedarp::sim
