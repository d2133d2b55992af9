#include "linedarp/offline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace linedarp::offline {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Request> sorted_by_id(const SolverQuery& query) {
  std::vector<Request> reqs = query.requests;
  std::sort(reqs.begin(), reqs.end(),
            [](const Request& x, const Request& y) { return x.id < y.id; });
  for (std::size_t i = 0; i + 1 < reqs.size(); ++i) {
    if (reqs[i].id == reqs[i + 1].id) {
      throw std::invalid_argument("solver query with duplicate request ids");
    }
  }
  for (const Request& r : reqs) {
    if (!std::isfinite(r.a) || !std::isfinite(r.b) || !std::isfinite(r.r)) {
      throw std::invalid_argument("solver query with non-finite request");
    }
  }
  return reqs;
}

// Branch-and-bound over action sequences.  Branches follow the canonical
// action order (pickups before deliveries, ascending id), so complete
// sequences are generated in lexicographic order and the first optimum
// found is the lexicographically smallest one.
struct BranchAndBound {
  const SolverQuery& query;
  bool closed;
  bool use_memo;
  double tol;
  std::vector<Request> reqs;
  std::vector<double> span;

  double best_len = kInf;
  std::vector<Action> best_seq;
  std::vector<Action> cur;

  // Dominance memo: earliest arrival time seen per (position, state).
  // Positions are quantized well below tolerance, so merging two nearby
  // states perturbs lengths by far less than the acceptance margin.
  static constexpr double kPosGrid = 1e11;  // inverse grid step
  std::unordered_map<std::uint64_t, std::unordered_map<std::int64_t, double>> memo;

  explicit BranchAndBound(const SolverQuery& q, bool memoize)
      : query(q),
        closed(q.variant == Variant::Closed),
        use_memo(memoize),
        tol(tolerance()),
        reqs(sorted_by_id(q)) {
    span.reserve(reqs.size());
    for (const Request& r : reqs) span.push_back(r.span());
  }

  double lower_bound(double now, double pos, std::uint32_t unpicked,
                     std::uint32_t undelivered) const {
    double lb = 0.0;
    double lo = kInf;
    double hi = -kInf;
    int m = static_cast<int>(reqs.size());
    for (int i = 0; i < m; ++i) {
      if (!(undelivered >> i & 1u)) continue;
      const Request& r = reqs[i];
      double need;
      if (unpicked >> i & 1u) {
        need = std::max(std::abs(pos - r.a), r.r - now) + span[i];
        lo = std::min({lo, r.a, r.b});
        hi = std::max({hi, r.a, r.b});
      } else {
        need = std::abs(pos - r.b);
        lo = std::min(lo, r.b);
        hi = std::max(hi, r.b);
      }
      if (closed) need += std::abs(r.b);
      lb = std::max(lb, need);
    }
    if (lo <= hi) {
      // Every remaining schedule must visit both hull endpoints (and the
      // origin again in the Closed variant).
      if (closed) {
        double wlo = std::min({lo, 0.0, pos});
        double whi = std::max({hi, 0.0, pos});
        double left_first = (pos - wlo) + (whi - wlo) + whi;
        double right_first = (whi - pos) + (whi - wlo) - wlo;
        lb = std::max(lb, std::min(left_first, right_first));
      } else {
        double ext;
        if (pos < lo) {
          ext = hi - pos;
        } else if (pos > hi) {
          ext = pos - lo;
        } else {
          ext = (hi - lo) + std::min(pos - lo, hi - pos);
        }
        lb = std::max(lb, ext);
      }
    }
    return lb;
  }

  void dfs(double now, double pos, std::uint32_t unpicked,
           std::uint32_t undelivered, int load) {
    if (undelivered == 0u) {
      double total = now - query.start_time + (closed ? std::abs(pos) : 0.0);
      if (total < best_len - tol) {
        best_len = total;
        best_seq = cur;
      }
      return;
    }
    double elapsed = now - query.start_time;
    if (elapsed + lower_bound(now, pos, unpicked, undelivered) >= best_len - tol) {
      return;
    }
    if (use_memo) {
      std::uint64_t state =
          (static_cast<std::uint64_t>(unpicked) << 32) | undelivered;
      auto qpos = static_cast<std::int64_t>(std::llround(pos * kPosGrid));
      auto [it, fresh] = memo[state].try_emplace(qpos, now);
      if (!fresh) {
        // A revisit that is not strictly earlier (beyond tolerance) cannot
        // improve on the completions already explored.
        if (it->second <= now + 0.5 * tol) return;
        it->second = now;
      }
    }
    int m = static_cast<int>(reqs.size());
    for (int i = 0; i < m; ++i) {
      if (!(unpicked >> i & 1u)) continue;
      const Request& r = reqs[i];
      bool point = r.is_point();
      if (!point && !query.capacity.admits(load + 1)) continue;
      double t = now + std::abs(pos - r.a);
      if (t < r.r) t = r.r;  // wait at the pickup point
      cur.push_back(Action{ActionKind::Pickup, r.id});
      dfs(t, r.a, unpicked & ~(1u << i), undelivered, load + (point ? 0 : 1));
      cur.pop_back();
    }
    for (int i = 0; i < m; ++i) {
      if ((unpicked >> i & 1u) || !(undelivered >> i & 1u)) continue;
      const Request& r = reqs[i];
      double t = now + std::abs(pos - r.b);
      cur.push_back(Action{ActionKind::Delivery, r.id});
      dfs(t, r.b, unpicked, undelivered & ~(1u << i), load - (r.is_point() ? 0 : 1));
      cur.pop_back();
    }
  }
};

}  // namespace

SolvedSchedule execute_actions(const SolverQuery& query,
                               const std::vector<Action>& actions) {
  std::unordered_map<int, const Request*> by_id;
  by_id.reserve(query.requests.size());
  for (const Request& r : query.requests) by_id[r.id] = &r;

  double t = query.start_time;
  double pos = query.start_pos;
  Trajectory traj;
  auto move_to = [&](double x) {
    if (x != pos) {
      double t2 = t + std::abs(x - pos);
      traj.segments.push_back(TrajectorySegment{t, pos, t2, x});
      t = t2;
      pos = x;
    }
  };
  for (const Action& a : actions) {
    auto it = by_id.find(a.request_id);
    if (it == by_id.end()) {
      throw std::invalid_argument("action references a request not in the query");
    }
    const Request& r = *it->second;
    move_to(a.kind == ActionKind::Pickup ? r.a : r.b);
    if (a.kind == ActionKind::Pickup && t < r.r) {
      traj.segments.push_back(TrajectorySegment{t, pos, r.r, pos});
      t = r.r;
    }
    traj.events.push_back(TrajectoryEvent{t, r.id, a.kind});
  }
  if (query.variant == Variant::Closed) move_to(0.0);

  SolvedSchedule s;
  s.length = t - query.start_time;
  s.actions = actions;
  s.end_pos = pos;
  traj.cost = t;
  s.trajectory = std::move(traj);
  return s;
}

SolvedSchedule solve(const SolverQuery& query, const SolverOptions& options) {
  int m = static_cast<int>(query.requests.size());
  if (m > options.max_requests || m > 30) {
    throw SolverLimitError("solve: " + std::to_string(m) +
                           " requests exceed the configured limit of " +
                           std::to_string(std::min(options.max_requests, 30)));
  }
  if (m == 0) {
    return execute_actions(query, {});
  }
  BranchAndBound bnb(query, options.use_memo);
  std::uint32_t full = (m == 32) ? ~0u : ((1u << m) - 1u);
  bnb.dfs(query.start_time, query.start_pos, full, full, 0);
  return execute_actions(query, bnb.best_seq);
}

SolvedSchedule brute_force_solve(const SolverQuery& query) {
  int m = static_cast<int>(query.requests.size());
  if (m > 7) {
    throw SolverLimitError("brute_force_solve: refuses more than 7 requests");
  }
  std::vector<Request> reqs = sorted_by_id(query);
  const bool closed = query.variant == Variant::Closed;
  const double tol = tolerance();
  double best = kInf;
  std::vector<Action> best_seq;
  std::vector<Action> cur;
  cur.reserve(2 * m);

  auto rec = [&](auto&& self, double now, double pos, std::uint32_t unpicked,
                 std::uint32_t undelivered, int load) -> void {
    if (undelivered == 0u) {
      double total = now - query.start_time + (closed ? std::abs(pos) : 0.0);
      if (total < best - tol) {
        best = total;
        best_seq = cur;
      }
      return;
    }
    for (int i = 0; i < m; ++i) {
      if (!(unpicked >> i & 1u)) continue;
      const Request& r = reqs[i];
      bool point = r.is_point();
      if (!point && !query.capacity.admits(load + 1)) continue;
      double t = now + std::abs(r.a - pos);
      if (t < r.r) t = r.r;
      cur.push_back(Action{ActionKind::Pickup, r.id});
      self(self, t, r.a, unpicked & ~(1u << i), undelivered, load + (point ? 0 : 1));
      cur.pop_back();
    }
    for (int i = 0; i < m; ++i) {
      if ((unpicked >> i & 1u) || !(undelivered >> i & 1u)) continue;
      const Request& r = reqs[i];
      double t = now + std::abs(r.b - pos);
      cur.push_back(Action{ActionKind::Delivery, r.id});
      self(self, t, r.b, unpicked, undelivered & ~(1u << i),
           load - (r.is_point() ? 0 : 1));
      cur.pop_back();
    }
  };
  std::uint32_t full = (m == 0) ? 0u : ((1u << m) - 1u);
  rec(rec, query.start_time, query.start_pos, full, full, 0);
  return execute_actions(query, best_seq);
}

double opt(const Instance& instance, const SolverOptions& options) {
  SolverQuery q;
  q.start_time = 0.0;
  q.start_pos = 0.0;
  q.requests = instance.requests;
  q.capacity = instance.capacity;
  q.variant = instance.variant;
  return solve(q, options).length;
}

}  // namespace linedarp::offline
