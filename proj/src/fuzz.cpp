#include "linedarp/fuzz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "linedarp/bounds.hpp"
#include "linedarp/sim.hpp"

namespace linedarp::fuzz {

namespace {

double random_coordinate(Rng& rng) {
  if (rng.chance(0.5)) {
    // Grid draw: multiples of 1/2 in [-1.5, 1.5], origin included.
    return 0.5 * static_cast<double>(rng.uniform_int(-3, 3));
  }
  return rng.uniform(-2.0, 2.0);
}

double random_release(Rng& rng) {
  if (rng.chance(0.3)) {
    return 0.5 * static_cast<double>(rng.uniform_int(0, 3));
  }
  return rng.uniform(0.0, 3.0);
}

void record_failure(VerifyReport& report, const std::string& message) {
  ++report.failures;
  if (report.messages.size() < 10) report.messages.push_back(message);
}

std::string describe_query(const offline::SolverQuery& query) {
  std::ostringstream out;
  out.precision(17);
  out << "t=" << query.start_time << " p=" << query.start_pos << " c=";
  if (query.capacity.is_unbounded()) {
    out << "inf";
  } else {
    out << query.capacity.slots();
  }
  out << (query.variant == Variant::Open ? " open" : " closed");
  for (const Request& q : query.requests) {
    out << " (" << q.a << "," << q.b << ";" << q.r << ")";
  }
  return out.str();
}

}  // namespace

Capacity random_capacity(Rng& rng) {
  switch (rng.uniform_int(0, 3)) {
    case 0: return Capacity::finite(1);
    case 1: return Capacity::finite(2);
    case 2: return Capacity::finite(3);
    default: return Capacity::unbounded();
  }
}

Instance random_instance(Rng& rng, int max_requests, Variant variant) {
  Instance instance;
  instance.capacity = random_capacity(rng);
  instance.variant = variant;
  int n = rng.uniform_int(1, std::max(1, max_requests));
  for (int i = 0; i < n; ++i) {
    Request q;
    q.id = i;
    q.a = random_coordinate(rng);
    q.b = rng.chance(0.3) ? q.a : random_coordinate(rng);
    q.r = random_release(rng);
    instance.requests.push_back(q);
  }
  return instance;
}

offline::SolverQuery random_query(Rng& rng, int max_requests) {
  offline::SolverQuery query;
  query.start_time = rng.chance(0.3) ? 0.0 : rng.uniform(0.0, 2.0);
  query.start_pos = random_coordinate(rng);
  query.capacity = random_capacity(rng);
  query.variant = rng.chance(0.5) ? Variant::Open : Variant::Closed;
  int n = rng.uniform_int(0, std::max(1, max_requests));
  for (int i = 0; i < n; ++i) {
    Request q;
    q.id = i;
    q.a = random_coordinate(rng);
    q.b = rng.chance(0.3) ? q.a : random_coordinate(rng);
    q.r = random_release(rng);
    query.requests.push_back(q);
  }
  return query;
}

VerifyReport verify_solver_equivalence(std::uint64_t seed, int queries,
                                       int max_requests,
                                       const SolveFn& solve_fn) {
  Rng rng(seed);
  VerifyReport report;
  const Capacity caps[3] = {Capacity::finite(1), Capacity::finite(2),
                            Capacity::unbounded()};
  for (int i = 0; i < queries; ++i) {
    offline::SolverQuery query = random_query(rng, max_requests);
    query.capacity = caps[i % 3];
    query.variant = (i / 3) % 2 == 0 ? Variant::Open : Variant::Closed;

    offline::SolvedSchedule reference = offline::brute_force_solve(query);
    offline::SolvedSchedule candidate =
        solve_fn ? solve_fn(query) : offline::solve(query);
    ++report.checked;

    char head[64];
    std::snprintf(head, sizeof head, "seed=%llu query=%d: ",
                  static_cast<unsigned long long>(seed), i);
    if (std::abs(candidate.length - reference.length) > tolerance()) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "length mismatch solve=%.17g reference=%.17g",
                    candidate.length, reference.length);
      record_failure(report, head + std::string(buf) + " on " +
                                 describe_query(query));
    } else if (candidate.actions != reference.actions) {
      record_failure(report, head + std::string("tie-break mismatch on ") +
                                 describe_query(query));
    } else if (candidate.length != reference.length) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "same actions, different lengths %.17g vs %.17g",
                    candidate.length, reference.length);
      record_failure(report, head + std::string(buf) + " on " +
                                 describe_query(query));
    }
  }
  return report;
}

VerifyReport verify_solver_properties(std::uint64_t seed, int pairs) {
  Rng rng(seed);
  VerifyReport report;
  for (int i = 0; i < pairs; ++i) {
    offline::SolverQuery query = random_query(rng, 5);
    double base = offline::solve(query).length;
    char head[64];
    std::snprintf(head, sizeof head, "seed=%llu pair=%d: ",
                  static_cast<unsigned long long>(seed), i);
    ++report.checked;

    // Monotonicity: starting later never lengthens the remaining work.
    offline::SolverQuery later = query;
    later.start_time = query.start_time + rng.uniform(0.0, 2.0);
    double later_len = offline::solve(later).length;
    if (later_len > base + tolerance()) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "monotonicity violated: L(t)=%.17g L(t')=%.17g dt=%.17g",
                    base, later_len, later.start_time - query.start_time);
      record_failure(report, head + std::string(buf) + " on " +
                                 describe_query(query));
    }

    // Triangle: moving the start by d can change L by at most d.
    offline::SolverQuery moved = query;
    moved.start_pos = random_coordinate(rng);
    double moved_len = offline::solve(moved).length;
    double d = std::abs(query.start_pos - moved.start_pos);
    if (base > d + moved_len + tolerance()) {
      char buf[200];
      std::snprintf(buf, sizeof buf,
                    "triangle violated: L(p)=%.17g > |p-p'|=%.17g + L(p')=%.17g",
                    base, d, moved_len);
      record_failure(report, head + std::string(buf) + " on " +
                                 describe_query(query));
    }
  }
  return report;
}

VerifyReport verify_smartstart_traces(std::uint64_t seed, int runs,
                                      bool include_closed) {
  Rng rng(seed);
  VerifyReport report;
  const double thetas[3] = {1.5, 2.05, 3.0};
  for (int i = 0; i < runs; ++i) {
    double theta = thetas[i % 3];
    Variant variant = include_closed && i % 4 == 3 ? Variant::Closed
                                                   : Variant::Open;
    Instance instance = random_instance(rng, 5, variant);
    char head[64];
    std::snprintf(head, sizeof head, "seed=%llu run=%d theta=%g: ",
                  static_cast<unsigned long long>(seed), i, theta);
    ++report.checked;
    try {
      online::Smartstart algorithm(theta);
      sim::SimResult result = sim::simulate(instance, algorithm);

      if (std::optional<TraceViolation> bad =
              verify_trajectory(instance, result.trajectory)) {
        record_failure(report,
                       head + std::string("trajectory: ") + bad->message);
      }
      std::vector<std::string> trace =
          sim::check_trace(result, instance, theta);
      for (const std::string& msg : trace) {
        record_failure(report, head + std::string("trace: ") + msg);
      }
      if (variant == Variant::Open && result.opt_cost > 0.0) {
        double bound = std::max(bounds::f1(theta), bounds::f2(theta));
        if (result.ratio > bound + 1e-6) {
          char buf[120];
          std::snprintf(buf, sizeof buf, "ratio %.17g above bound %.17g",
                        result.ratio, bound);
          record_failure(report, head + std::string(buf));
        }
      }
    } catch (const std::exception& e) {
      record_failure(report, head + std::string("exception: ") + e.what());
    }
  }
  return report;
}

VerifyReport verify_ignore_ratio(std::uint64_t seed, int runs) {
  Rng rng(seed);
  VerifyReport report;
  for (int i = 0; i < runs; ++i) {
    Instance instance = random_instance(rng, 5, Variant::Open);
    char head[64];
    std::snprintf(head, sizeof head, "seed=%llu run=%d: ",
                  static_cast<unsigned long long>(seed), i);
    ++report.checked;
    try {
      online::Ignore algorithm;
      sim::SimResult result = sim::simulate(instance, algorithm);
      if (result.opt_cost > 0.0 &&
          result.cost > 4.0 * result.opt_cost + tolerance()) {
        char buf[120];
        std::snprintf(buf, sizeof buf, "cost %.17g above 4*opt %.17g",
                      result.cost, 4.0 * result.opt_cost);
        record_failure(report, head + std::string(buf));
      }
    } catch (const std::exception& e) {
      record_failure(report, head + std::string("exception: ") + e.what());
    }
  }
  return report;
}

}  // namespace linedarp::fuzz
