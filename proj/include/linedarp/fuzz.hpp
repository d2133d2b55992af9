#pragma once

// Randomized cross-checks: solver-vs-reference equivalence, the solver's
// structural properties, and end-to-end online runs validated against the
// trajectory and trace checkers.  All draws come from a seeded generator,
// so every reported failure is reproducible from its seed.

#include <cstdint>
#include <functional>
#include <random>
#include <string>

#include "linedarp/model.hpp"
#include "linedarp/offline.hpp"

namespace linedarp::fuzz {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }
  double uniform() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(double p) { return uniform() < p; }

 private:
  std::mt19937_64 eng_;
};

// Random instance with up to max_requests requests.  Half the coordinates
// come from a coarse grid to provoke exact ties and shared timestamps.
Instance random_instance(Rng& rng, int max_requests, Variant variant);
Capacity random_capacity(Rng& rng);
offline::SolverQuery random_query(Rng& rng, int max_requests);

struct VerifyReport {
  int checked = 0;
  int failures = 0;
  std::vector<std::string> messages;  // first few failures, with seeds
  bool ok() const { return failures == 0; }
};

using SolveFn =
    std::function<offline::SolvedSchedule(const offline::SolverQuery&)>;

// Compares solve() against the exhaustive reference on random queries
// cycling both variants and capacities 1, 2, unbounded.  With the default
// solve_fn the action sequences must agree exactly and the lengths
// bitwise (same tie-breaking, same executor); an injected solve_fn is
// held to the same checks, which is how the harness itself is tested.
VerifyReport verify_solver_equivalence(std::uint64_t seed, int queries,
                                       int max_requests = 6,
                                       const SolveFn& solve_fn = {});

// Monotonicity in the start time (solve(t,p,R) >= solve(t',p,R) for
// t <= t') and the triangle property (solve(t,p,R) <= |p-p'| +
// solve(t,p',R)) on random query pairs.
VerifyReport verify_solver_properties(std::uint64_t seed, int pairs);

// Runs Smartstart on random instances (theta cycling 1.5, 2.05, 3.0),
// verifying the trajectory replay, the trace checks, and -- on the open
// variant -- the ratio bound max(f1, f2)(theta).
VerifyReport verify_smartstart_traces(std::uint64_t seed, int runs,
                                      bool include_closed = true);

// Runs Ignore on random open instances and checks cost <= 4 * opt.
VerifyReport verify_ignore_ratio(std::uint64_t seed, int runs);

}  // namespace linedarp::fuzz
