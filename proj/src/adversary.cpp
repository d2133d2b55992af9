#include "linedarp/adversary.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "linedarp/bounds.hpp"

namespace linedarp::adversary {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

std::string theta_selector(double theta) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "smartstart:theta=%.17g", theta);
  return buf;
}

// Canonical luring parameter, raised toward the prefix cap when the
// family's admissible range (0, mu_max) allows it.
double pick_mu(const FamilyOptions& options, double canonical, double mu_max,
               double p, double theta, const char* family) {
  require(mu_max > 0.0 && canonical < mu_max,
          std::string(family) + ": no admissible luring parameter");
  if (options.mu) {
    require(*options.mu > 0.0 && *options.mu < mu_max,
            std::string(family) + ": mu outside the admissible range");
    return *options.mu;
  }
  double mu = canonical;
  if (options.lure_cap > 0) {
    // The prefix has at most `cap` steps iff mu > p / (theta (theta-1) cap).
    double need = p / (theta * (theta - 1.0) * static_cast<double>(options.lure_cap));
    if (mu <= need) mu = std::min(need * (1.0 + 1e-9), 0.9 * mu_max);
    if (mu < canonical) mu = canonical;
  }
  return mu;
}

// Assembles lure prefix + extra requests into a validated instance.
GeneratedFamily assemble(std::string name, double theta, double eps, double mu,
                         const LureResult& prefix, std::vector<Request> extras,
                         Variant variant) {
  GeneratedFamily fam;
  fam.family = std::move(name);
  fam.theta = theta;
  fam.eps = eps;
  fam.mu = mu;
  fam.lure_n = prefix.n;
  fam.instance.requests = prefix.requests;
  int base = static_cast<int>(prefix.requests.size());
  for (Request& q : extras) {
    q.id = base++;
    fam.instance.requests.push_back(q);
  }
  fam.instance.capacity = Capacity::finite(1);
  fam.instance.variant = variant;
  Validation v = validate(fam.instance);
  if (!v.ok()) {
    throw std::logic_error(fam.family + ": generated an invalid instance: " +
                           v.violations.front());
  }
  return fam;
}

}  // namespace

LureResult lure(double p, double mu, double theta) {
  require(p > 0.0, "lure: requires p > 0");
  require(mu > 0.0, "lure: requires mu > 0");
  require(theta > 1.0, "lure: requires theta > 1");
  double steps = p / (theta * (theta - 1.0) * mu);
  require(steps < 1e7, "lure: prefix would exceed 10^7 requests");
  int n = static_cast<int>(std::floor(steps)) + 1;
  while (!(p / (static_cast<double>(n) * theta) < (theta - 1.0) * mu)) ++n;

  LureResult out;
  out.n = n;
  out.delta = p / (static_cast<double>(n) * theta);
  out.requests.reserve(static_cast<std::size_t>(n) + 1);
  out.requests.push_back(Request{0, out.delta, out.delta, 0.0});
  for (int i = 2; i <= n; ++i) {
    double q = static_cast<double>(i) * out.delta;
    double r = out.delta / (theta - 1.0) + static_cast<double>(i - 1) * out.delta;
    out.requests.push_back(Request{i - 1, q, q, r});
  }
  double r_last = mu + static_cast<double>(n) * out.delta;
  out.requests.push_back(Request{n, p, p, r_last});
  out.arrival_time = p + mu;
  out.last_start = r_last;
  return out;
}

GeneratedFamily family_open_waiting(double theta, double eps,
                                    const FamilyOptions& options) {
  require(theta > 2.0 && theta < 3.0,
          "family_open_waiting: requires theta in (2, 3)");
  double eps_cap =
      (2.0 / 9.0) * (2.0 * theta * theta / (theta * theta + theta - 2.0));
  require(eps > 0.0 && (options.relax_eps_range || eps < eps_cap),
          "family_open_waiting: requires 0 < eps < (2/9) f1(theta) theta/(theta+1)");
  double epsp = (theta * theta + theta - 2.0) / (2.0 * theta * theta) * eps;
  require(epsp < 1.0 / theta && epsp < 1.0 - 1.0 / theta,
          "family_open_waiting: eps too large for the construction");

  double pair_len = 2.0 + 2.0 / theta - 2.0 * epsp;
  double t_final = pair_len / (theta - 1.0);
  double mu_max = std::min({epsp, t_final - 1.0, 2.0 / theta});
  double mu = pick_mu(options, epsp / 2.0, mu_max, 1.0, theta, "family_open_waiting");

  LureResult prefix = lure(1.0, mu, theta);
  double r_pair = 1.0 / theta + epsp;
  std::vector<Request> extras = {
      Request{0, -1.0 / theta + epsp, 0.0, r_pair},  // ride back to the origin
      Request{0, 1.0 / theta, 1.0, r_pair},          // ride out to p = 1
  };
  GeneratedFamily fam = assemble("open-waiting", theta, eps, mu, prefix,
                                 std::move(extras), Variant::Open);
  fam.algorithm = theta_selector(theta);
  fam.expected_alg = t_final + pair_len;
  fam.expected_opt = (theta + 2.0) / theta;
  fam.expected_ratio = bounds::f1(theta) - eps;
  fam.final_waits = true;
  fam.notes =
      "lure to 1, then a pair whose one schedule starts only after a wait; "
      "ratio f1(theta) - eps, any capacity";
  return fam;
}

GeneratedFamily family_open_nowait(double theta, double eps,
                                   const FamilyOptions& options) {
  require(theta >= 2.0 && theta <= bounds::theta_g2_lo(),
          "family_open_nowait: requires theta in [2, (1+sqrt(13))/2]");
  double eps_cap =
      (3.0 * theta * theta - theta) / (5.0 * theta * (3.0 * theta + 3.0));
  require(eps > 0.0 && (options.relax_eps_range || eps < eps_cap),
          "family_open_nowait: requires 0 < eps < (3 theta - 1)/(5 (3 theta + 3))");
  double epsp = (3.0 * theta + 3.0) / (3.0 * theta * theta - theta) * eps;
  require(epsp < 1.0 / theta, "family_open_nowait: eps too large for the construction");

  double pair_len = 3.0 + 3.0 / theta - 2.0 * epsp;
  double t_pair = pair_len / (theta - 1.0);
  double opt_cost = (3.0 * theta + 3.0) / (theta * (theta - 1.0));
  double mu_max = std::min(epsp, t_pair - 1.0);
  double mu = pick_mu(options, epsp / 2.0, mu_max, 1.0, theta, "family_open_nowait");

  LureResult prefix = lure(1.0, mu, theta);
  double r_pair = 1.0 / theta + epsp;
  std::vector<Request> extras = {
      Request{0, 2.0 + 1.0 / theta - epsp, 2.0 + 1.0 / theta - epsp, r_pair},
      Request{0, -1.0 / theta, -1.0 / theta, r_pair},
      // Released exactly when an optimal server sweeping right passes it;
      // the online server is still busy with the pair then.
      Request{0, opt_cost - 2.0 / theta - epsp, opt_cost - 2.0 / theta - epsp,
              opt_cost},
  };
  GeneratedFamily fam = assemble("open-nowait", theta, eps, mu, prefix,
                                 std::move(extras), Variant::Open);
  fam.algorithm = theta_selector(theta);
  fam.expected_alg = (3.0 * theta + 3.0) / (theta - 1.0) + opt_cost -
                     1.0 / theta -
                     ((3.0 * theta - 1.0) / (theta - 1.0)) * epsp;
  fam.expected_opt = opt_cost;
  fam.expected_ratio = bounds::f2(theta) - eps;
  fam.final_waits = false;
  fam.notes =
      "lure to 1, a waiting pair, then a straggler that starts the last "
      "schedule with zero wait; ratio f2(theta) - eps, any capacity";
  return fam;
}

GeneratedFamily family_g1(double theta, double eps, const FamilyOptions& options) {
  require(theta > 1.0 && theta <= 2.0, "family_g1: requires theta in (1, 2]");
  require(eps > 0.0 && (options.relax_eps_range || eps < 0.01),
          "family_g1: requires 0 < eps < 1/100");
  double t_final = 3.0 / (theta - 1.0);
  double mu_max = std::min({2.0 * eps, t_final - 1.0, 2.0 / theta + 2.0 * eps});
  double mu = pick_mu(options, eps, mu_max, 1.0, theta, "family_g1");

  LureResult prefix = lure(1.0, mu, theta);
  double r_pair = 1.0 / theta + 2.0 * eps;
  std::vector<Request> extras = {
      Request{0, 1.0 / theta, 1.0 + eps / 2.0, r_pair},
      Request{0, -1.0 / theta, -eps, r_pair},
  };
  GeneratedFamily fam =
      assemble("g1", theta, eps, mu, prefix, std::move(extras), Variant::Open);
  fam.algorithm = theta_selector(theta);
  fam.expected_alg = 3.0 * theta / (theta - 1.0);
  fam.expected_opt = 1.0 + 2.0 / theta + 2.5 * eps;
  fam.expected_ratio = fam.expected_alg / fam.expected_opt;
  fam.final_waits = true;
  fam.notes = "lure to 1, then two rides served in one waiting schedule of "
              "length 3; ratio approaches g1(theta) as eps approaches 1/100";
  return fam;
}

GeneratedFamily family_g2(double theta, double eps, const FamilyOptions& options) {
  require(theta > bounds::theta_g2_lo() && theta <= bounds::theta_g2_hi(),
          "family_g2: requires theta in ((1+sqrt(13))/2, 1+sqrt(2)]");
  require(eps > 0.0 && (options.relax_eps_range || eps < 0.04),
          "family_g2: requires 0 < eps < 1/25");
  double t_pair = (3.0 * theta + 3.0) / (theta * (theta - 1.0));
  double mu_max = std::min(2.0 * eps, t_pair - 1.0);
  double mu = pick_mu(options, eps, mu_max, 1.0, theta, "family_g2");

  LureResult prefix = lure(1.0, mu, theta);
  double r_pair = 1.0 / theta + 2.0 * eps;
  std::vector<Request> extras = {
      Request{0, 2.0 + 1.0 / theta - eps / 2.0, 2.0 + 1.0 / theta - eps / 2.0,
              r_pair},
      Request{0, -1.0 / theta - eps, -1.0 / theta - eps, r_pair},
      Request{0, 2.0 + 1.0 / theta - eps, 2.0 + 1.0 / theta - eps,
              t_pair + eps},
  };
  GeneratedFamily fam =
      assemble("g2", theta, eps, mu, prefix, std::move(extras), Variant::Open);
  fam.algorithm = theta_selector(theta);
  fam.expected_alg = (3.0 * theta + 3.0) / (theta - 1.0) + 2.0 + 2.0 / theta;
  fam.expected_opt = (2.0 * theta + 3.0) / theta + 2.5 * eps;
  fam.expected_ratio = fam.expected_alg / fam.expected_opt;
  fam.final_waits = false;
  fam.notes = "lure to 1, a far waiting pair, then a straggler served with "
              "zero wait; ratio approaches g2(theta) as eps approaches 1/25";
  return fam;
}

GeneratedFamily family_g3(double theta, double eps, const FamilyOptions& options) {
  require(theta > bounds::theta_g2_hi() && theta < 3.0,
          "family_g3: requires theta in (1+sqrt(2), 3)");
  require(eps > 0.0 && (options.relax_eps_range || eps < 0.05),
          "family_g3: requires 0 < eps < 1/20");
  double t_pair = (3.0 * theta - 1.0) / (theta * (theta - 1.0));
  double mu_max = std::min(2.0 * eps, t_pair - 1.0);
  double mu = pick_mu(options, eps, mu_max, 1.0, theta, "family_g3");

  LureResult prefix = lure(1.0, mu, theta);
  double r_pair = 1.0 / theta + 2.0 * eps;
  std::vector<Request> extras = {
      Request{0, 1.0 / theta, 1.0, r_pair},
      Request{0, -1.0 / theta, -1.0 / theta, r_pair},
      Request{0, 1.0, 1.0, t_pair + eps},
  };
  GeneratedFamily fam =
      assemble("g3", theta, eps, mu, prefix, std::move(extras), Variant::Open);
  fam.algorithm = theta_selector(theta);
  fam.expected_alg = (3.0 * theta - 1.0) / (theta - 1.0) + 1.0 + 1.0 / theta;
  fam.expected_opt = 1.0 + 2.0 / theta + 2.0 * eps;
  fam.expected_ratio = fam.expected_alg / fam.expected_opt;
  fam.final_waits = false;
  fam.notes = "lure to 1, a ride-and-point pair, then a straggler at 1 served "
              "with zero wait; ratio approaches g3(theta) as eps approaches 1/20";
  return fam;
}

GeneratedFamily family_g4(double theta, double eps, const FamilyOptions& options) {
  require(theta >= 3.0, "family_g4: requires theta >= 3");
  require(eps > 0.0 && (options.relax_eps_range || eps < 1.0 / 75.0),
          "family_g4: requires 0 < eps < 1/75");
  // The first post-lure schedule starts immediately on arrival, so its
  // start time -- and with it the final cost -- shifts with mu.  The
  // published cost 4 - 3/theta therefore pins mu = eps; the prefix cap
  // does not apply.
  require(!options.mu || *options.mu == eps, "family_g4: mu is pinned to eps");
  double mu = eps;

  LureResult prefix = lure(1.0, mu, theta);
  double r_pair = 1.0 / theta + 2.0 * eps;
  std::vector<Request> extras = {
      Request{0, (theta + 1.0) / (2.0 * theta) + eps / 2.0, 1.0, r_pair},
      Request{0, 1.0 / theta, 1.0 / theta, r_pair},
      Request{0, 1.0, 1.0, 1.0 + 2.0 * eps},
  };
  GeneratedFamily fam =
      assemble("g4", theta, eps, mu, prefix, std::move(extras), Variant::Open);
  fam.algorithm = theta_selector(theta);
  fam.expected_alg = 4.0 - 3.0 / theta;
  fam.expected_opt = 1.0 + 2.0 * eps;
  fam.expected_ratio = fam.expected_alg / fam.expected_opt;
  fam.final_waits = false;
  fam.notes = "lure to 1, an immediately-started pair, then a straggler at 1; "
              "mu pinned to eps; ratio approaches g4(theta) at the eps cap";
  return fam;
}

GeneratedFamily family_closed(double theta, double eps) {
  require(theta > 1.0, "family_closed: requires theta > 1");
  require(eps >= 0.0, "family_closed: requires eps >= 0");
  GeneratedFamily fam;
  fam.family = "closed";
  fam.theta = theta;
  fam.eps = eps;
  fam.algorithm = theta_selector(theta);
  fam.instance.capacity = Capacity::finite(1);
  fam.instance.variant = Variant::Closed;
  fam.instance.requests.push_back(Request{0, 0.5, 0.5, 0.0});
  double base_ratio = theta / (theta - 1.0);
  if (theta <= 2.0) {
    fam.expected_alg = base_ratio;
    fam.final_waits = true;
    fam.notes = "single point at 1/2; the whole run is one waiting schedule";
  } else if (theta <= 3.0) {
    double eps_cap = std::min(1.0 - 1.0 / (theta - 1.0),
                              (theta - 2.0) / (2.0 * (theta - 1.0)));
    require(eps > 0.0 && eps < eps_cap,
            "family_closed: requires 0 < eps < min(1 - 1/(theta-1), "
            "(theta-2)/(2(theta-1)))");
    double q = 1.0 - 1.0 / (theta - 1.0) - eps;
    fam.instance.requests.push_back(
        Request{1, q, q, 1.0 / (theta - 1.0) + eps});
    fam.expected_alg = base_ratio + 2.0 - 2.0 / (theta - 1.0) - 2.0 * eps;
    fam.final_waits = false;
    fam.notes = "point at 1/2 plus a point released exactly when an optimal "
                "server passes it on the way back";
  } else {
    require(eps > 0.0 && eps < 0.5 - 1.0 / (theta - 1.0),
            "family_closed: requires 0 < eps < 1/2 - 1/(theta-1)");
    fam.instance.requests.push_back(
        Request{1, 0.5, 0.5, 1.0 / (theta - 1.0) + eps});
    fam.expected_alg = base_ratio + 1.0;
    fam.final_waits = false;
    fam.notes = "point at 1/2 released again after the first schedule left";
  }
  fam.expected_opt = 1.0;
  fam.expected_ratio = fam.expected_alg;
  Validation v = validate(fam.instance);
  if (!v.ok()) {
    throw std::logic_error("family_closed: generated an invalid instance");
  }
  return fam;
}

GeneratedFamily family_ignore(double eps) {
  require(eps > 0.0 && eps < 5.0, "family_ignore: requires 0 < eps < 5");
  GeneratedFamily fam;
  fam.family = "ignore";
  fam.algorithm = "ignore";
  fam.eps = eps;
  fam.instance.capacity = Capacity::finite(1);
  fam.instance.variant = Variant::Open;
  double far = 1.0 - eps / 5.0;
  fam.instance.requests = {
      Request{0, far, far, 0.0},
      Request{1, 0.5, far, eps / 5.0},
      Request{2, 0.0, 0.0, eps / 5.0},
      Request{3, far, far, 1.0},
  };
  fam.expected_alg = 4.0 - eps;
  fam.expected_opt = 1.0;
  fam.expected_ratio = fam.expected_alg;
  fam.final_waits = false;
  fam.notes = "three ignore phases of combined cost 4 - eps against an "
              "optimal sweep of cost 1";
  Validation v = validate(fam.instance);
  if (!v.ok()) {
    throw std::logic_error("family_ignore: generated an invalid instance");
  }
  return fam;
}

GeneratedFamily make_family(const std::string& name, double theta, double eps,
                            const FamilyOptions& options) {
  if (name == "open-waiting") return family_open_waiting(theta, eps, options);
  if (name == "open-nowait") return family_open_nowait(theta, eps, options);
  if (name == "g1") return family_g1(theta, eps, options);
  if (name == "g2") return family_g2(theta, eps, options);
  if (name == "g3") return family_g3(theta, eps, options);
  if (name == "g4") return family_g4(theta, eps, options);
  if (name == "closed") return family_closed(theta, eps);
  if (name == "ignore") return family_ignore(eps);
  throw std::invalid_argument("make_family: unknown family '" + name + "'");
}

std::vector<std::string> family_names() {
  return {"open-waiting", "open-nowait", "g1", "g2",
          "g3",           "g4",          "closed", "ignore"};
}

}  // namespace linedarp::adversary
