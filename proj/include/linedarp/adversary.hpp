#pragma once

// Generators for the adversarial request families behind the lower bounds.
// Each generator returns the instance together with the closed-form
// behavior the targeted algorithm must exhibit on it (cost, offline
// optimum, ratio), so simulation runs can be checked without solving the
// full instance offline.

#include <optional>
#include <string>

#include "linedarp/model.hpp"

namespace linedarp::adversary {

// Geometric chain of point requests that walks a Smartstart(theta) server
// to position p > 0, arriving at time p + mu.  Within the chain, request
// i+1 is released exactly when the single-request schedule for request i
// completes, so the server never idles; only the final hop to p waits,
// for less than mu.  Uses the smallest n with
// delta = p / (n * theta) < (theta - 1) * mu.
struct LureResult {
  std::vector<Request> requests;  // ids 0..n, release-ordered
  int n = 0;                      // geometric steps; n + 1 requests total
  double delta = 0.0;             // first chain position p / (n * theta)
  double arrival_time = 0.0;      // p + mu
  double last_start = 0.0;        // start of the final chain schedule
};

LureResult lure(double p, double mu, double theta);

struct GeneratedFamily {
  std::string family;
  Instance instance;
  std::string algorithm;  // selector for the targeted algorithm
  double theta = 0.0;
  double eps = 0.0;
  double mu = 0.0;    // luring parameter used (0 when there is no lure)
  int lure_n = 0;     // geometric steps in the lure prefix
  double expected_alg = 0.0;
  double expected_opt = 0.0;
  double expected_ratio = 0.0;
  bool final_waits = false;  // last schedule starts after a waiting period
  std::string notes;
};

struct FamilyOptions {
  // Override the luring parameter; must respect the family's constraints.
  std::optional<double> mu;
  // Best-effort cap on the lure prefix length, honored by raising mu as
  // far as the family's constraints allow.
  int lure_cap = 64;
  // Accept eps beyond the published range (the constructions degrade
  // gracefully for somewhat larger eps; used to cross-check the optimum
  // on prefixes short enough for the exact solver).
  bool relax_eps_range = false;
};

// Open variant, Smartstart(theta), 2 < theta < 3: after the lure the pair
// forces one last schedule that starts after a wait.  Ratio f1(theta)-eps.
GeneratedFamily family_open_waiting(double theta, double eps,
                                    const FamilyOptions& options = {});

// Open variant, Smartstart(theta), 2 <= theta <= (1+sqrt(13))/2: the last
// schedule starts immediately when its request appears.  Ratio f2(theta)-eps.
GeneratedFamily family_open_nowait(double theta, double eps,
                                   const FamilyOptions& options = {});

// Lower-bound envelope pieces, open variant.  Ratios approach
// g1..g4(theta) as eps approaches its cap.
GeneratedFamily family_g1(double theta, double eps, const FamilyOptions& options = {});
GeneratedFamily family_g2(double theta, double eps, const FamilyOptions& options = {});
GeneratedFamily family_g3(double theta, double eps, const FamilyOptions& options = {});
GeneratedFamily family_g4(double theta, double eps, const FamilyOptions& options = {});

// Closed variant, Smartstart(theta), theta > 1.  Ratio theta/(theta-1)
// for theta <= 2, theta/(theta-1) + 2 - 2/(theta-1) - 2*eps on (2, 3],
// theta/(theta-1) + 1 beyond 3; always above 2 except exactly 2 at theta=2.
GeneratedFamily family_closed(double theta, double eps);

// Open variant, Ignore: cost 4 - eps against optimum 1, 0 < eps < 5.
GeneratedFamily family_ignore(double eps);

// Lookup by name: open-waiting, open-nowait, g1, g2, g3, g4, closed,
// ignore.  Throws std::invalid_argument for unknown names.
GeneratedFamily make_family(const std::string& name, double theta, double eps,
                            const FamilyOptions& options = {});
std::vector<std::string> family_names();

}  // namespace linedarp::adversary
