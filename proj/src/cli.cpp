#include "linedarp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "linedarp/adversary.hpp"
#include "linedarp/algorithms.hpp"
#include "linedarp/bounds.hpp"
#include "linedarp/fuzz.hpp"
#include "linedarp/io.hpp"
#include "linedarp/model.hpp"
#include "linedarp/offline.hpp"
#include "linedarp/sim.hpp"

namespace linedarp::cli {

namespace {

using nlohmann::json;

std::string fixed12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

Instance read_instance(const std::string& path) {
  if (path == "-") return io::load_instance(std::cin);
  return io::load_instance_file(path);
}

std::optional<double> smartstart_theta(const std::string& selector) {
  const std::string prefix = "smartstart:theta=";
  if (selector.rfind(prefix, 0) != 0) return std::nullopt;
  return std::strtod(selector.c_str() + prefix.size(), nullptr);
}

// Bound column of the sweep report: the curve the family's ratio is
// pushing against.
double family_bound(const std::string& family, double theta) {
  if (family == "open-waiting") return bounds::f1(theta);
  if (family == "open-nowait") return bounds::f2(theta);
  if (family == "g1") return bounds::g1(theta);
  if (family == "g2") return bounds::g2(theta);
  if (family == "g3") return bounds::g3(theta);
  if (family == "g4") return bounds::g4(theta);
  if (family == "closed") return 2.0;
  return 4.0;  // ignore
}

struct SolveArgs {
  std::string input;
  double t = 0.0;
  double p = 0.0;
  int max_requests = 12;
  bool brute = false;
  bool memo = false;
  bool as_json = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  Instance instance = read_instance(a.input);
  offline::SolverQuery query;
  query.start_time = a.t;
  query.start_pos = a.p;
  query.requests = instance.requests;
  query.capacity = instance.capacity;
  query.variant = instance.variant;

  offline::SolverOptions options;
  options.max_requests = a.max_requests;
  options.use_memo = a.memo;
  offline::SolvedSchedule schedule =
      a.brute ? offline::brute_force_solve(query)
              : offline::solve(query, options);

  if (a.as_json) {
    json j;
    j["length"] = schedule.length;
    j["end_pos"] = schedule.end_pos;
    j["actions"] = json::array();
    for (const Action& act : schedule.actions) {
      j["actions"].push_back(
          json{{"kind", act.kind == ActionKind::Pickup ? "pickup" : "delivery"},
               {"request", act.request_id}});
    }
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "length " << fixed12(schedule.length) << "\n";
  out << "end_pos " << fixed12(schedule.end_pos) << "\n";
  out << "actions";
  for (const Action& act : schedule.actions) {
    out << ' ' << (act.kind == ActionKind::Pickup ? 'P' : 'D')
        << act.request_id;
  }
  out << "\n";
  return 0;
}

struct SimulateArgs {
  std::string input;
  std::string algo;
  std::string expected_path;
  double opt = std::nan("");
  double tol = 1e-9;
  int max_requests = 12;
  bool check = false;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  Instance instance = read_instance(a.input);

  std::optional<json> sidecar;
  if (!a.expected_path.empty()) {
    std::ifstream in(a.expected_path);
    if (!in) throw io::ParseError("cannot open '" + a.expected_path + "'");
    try {
      sidecar = json::parse(in);
    } catch (const json::parse_error& e) {
      throw io::ParseError(std::string("invalid JSON: ") + e.what());
    }
  }

  std::string selector = a.algo;
  if (selector.empty() && sidecar && sidecar->contains("algorithm")) {
    selector = sidecar->at("algorithm").get<std::string>();
  }
  if (selector.empty()) {
    throw std::invalid_argument(
        "no algorithm: pass --algo or --expected with an algorithm field");
  }

  sim::SimOptions options;
  options.solver.max_requests = a.max_requests;
  if (!std::isnan(a.opt)) {
    options.known_opt = a.opt;
  } else if (sidecar && sidecar->contains("expected")) {
    options.known_opt = sidecar->at("expected").at("opt").get<double>();
  }

  std::unique_ptr<online::OnlineAlgorithm> algorithm =
      online::make_algorithm(selector, options.solver);
  sim::SimResult result = sim::simulate(instance, *algorithm, options);
  out << io::sim_result_to_json(result).dump(2) << "\n";

  int rc = 0;
  if (a.check) {
    if (std::optional<TraceViolation> v =
            verify_trajectory(instance, result.trajectory)) {
      err << "trajectory violation at t=" << v->time << ": " << v->message
          << "\n";
      rc = 1;
    }
    if (std::optional<double> theta = smartstart_theta(selector)) {
      for (const std::string& msg :
           sim::check_trace(result, instance, *theta, options.solver)) {
        err << "trace violation: " << msg << "\n";
        rc = 1;
      }
    }
    if (rc == 0) err << "checks passed\n";
  }
  if (sidecar && sidecar->contains("expected")) {
    double expected_ratio = sidecar->at("expected").at("ratio").get<double>();
    bool pass = std::abs(result.ratio - expected_ratio) <= a.tol;
    err << (pass ? "ratio matches expected: " : "ratio MISMATCH: ")
        << "simulated=" << fixed12(result.ratio)
        << " expected=" << fixed12(expected_ratio) << "\n";
    if (!pass) rc = 1;
  }
  return rc;
}

struct GenerateArgs {
  std::string family;
  double theta = 0.0;
  double eps = 0.0;
  double mu = std::nan("");
  int lure_cap = 64;
  bool relax = false;
  std::string output;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
  adversary::FamilyOptions options;
  if (!std::isnan(a.mu)) options.mu = a.mu;
  options.lure_cap = a.lure_cap;
  options.relax_eps_range = a.relax;
  adversary::GeneratedFamily fam =
      adversary::make_family(a.family, a.theta, a.eps, options);

  if (a.output == "-") {
    json combined;
    combined["instance"] = io::instance_to_json(fam.instance);
    combined["expected"] = io::family_sidecar_json(fam);
    out << combined.dump(2) << "\n";
    return 0;
  }
  io::save_instance_file(a.output, fam.instance);
  std::string sidecar_path = a.output + ".expected.json";
  std::ofstream sidecar(sidecar_path);
  if (!sidecar) {
    throw io::ParseError("cannot open '" + sidecar_path + "' for writing");
  }
  sidecar << io::family_sidecar_json(fam).dump(2) << "\n";
  err << "wrote " << a.output << " (" << fam.instance.requests.size()
      << " requests) and " << sidecar_path << "\n";
  return 0;
}

struct SweepArgs {
  std::string family = "all";
  std::vector<double> thetas;
  double eps = 0.0;
  double tol = 1e-9;
  int lure_cap = 64;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  std::vector<std::string> families;
  if (a.family == "all") {
    families = adversary::family_names();
  } else {
    families.push_back(a.family);
  }
  std::vector<double> thetas = a.thetas;
  std::sort(thetas.begin(), thetas.end());

  out << "theta,family,eps,simulated_ratio,expected_ratio,bound,status\n";
  bool any_fail = false;
  for (double theta : thetas) {
    for (const std::string& family : families) {
      std::string prefix = fixed12(theta) + "," + family + "," + fixed12(a.eps);
      try {
        adversary::FamilyOptions options;
        options.lure_cap = a.lure_cap;
        adversary::GeneratedFamily fam =
            adversary::make_family(family, theta, a.eps, options);
        std::unique_ptr<online::OnlineAlgorithm> algorithm =
            online::make_algorithm(fam.algorithm);
        sim::SimOptions sim_options;
        sim_options.known_opt = fam.expected_opt;
        sim::SimResult result =
            sim::simulate(fam.instance, *algorithm, sim_options);
        bool pass = std::abs(result.ratio - fam.expected_ratio) <= a.tol;
        if (!pass) any_fail = true;
        out << prefix << "," << fixed12(result.ratio) << ","
            << fixed12(fam.expected_ratio) << ","
            << fixed12(family_bound(family, theta)) << ","
            << (pass ? "pass" : "fail") << "\n";
      } catch (const std::invalid_argument&) {
        out << prefix << ",,,,domain_error\n";
      } catch (const std::domain_error&) {
        out << prefix << ",,,,domain_error\n";
      }
    }
  }
  return any_fail ? 1 : 0;
}

struct VerifyArgs {
  std::uint64_t seed = 1;
  int runs = 200;
  int n_max = 5;
  std::string suite = "all";
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  if (a.n_max > 6) {
    throw std::invalid_argument("--n-max must be at most 6");
  }
  bool all = a.suite == "all";
  int failures = 0;
  auto report = [&](const std::string& name, const fuzz::VerifyReport& r) {
    out << name << ": checked " << r.checked << ", failures " << r.failures
        << "\n";
    for (const std::string& msg : r.messages) {
      out << "  " << msg << "\n";
    }
    failures += r.failures;
  };
  if (all || a.suite == "solver") {
    report("solver-vs-reference",
           fuzz::verify_solver_equivalence(a.seed, a.runs, a.n_max));
  }
  if (all || a.suite == "properties") {
    report("solver-properties", fuzz::verify_solver_properties(a.seed, a.runs));
  }
  if (all || a.suite == "traces") {
    report("smartstart-traces", fuzz::verify_smartstart_traces(a.seed, a.runs));
  }
  if (all || a.suite == "ignore") {
    report("ignore-ratio", fuzz::verify_ignore_ratio(a.seed, a.runs));
  }
  out << (failures == 0 ? "verify OK\n" : "verify FAILED\n");
  return failures == 0 ? 0 : 1;
}

struct BoundsArgs {
  double min = 1.1;
  double max = 4.0;
  double step = 0.1;
  bool star = false;
};

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  if (a.star) {
    double ts = bounds::theta_star();
    out << "theta_star " << fixed12(ts) << "\n";
    out << "rho_star " << fixed12(bounds::rho_star()) << "\n";
    return 0;
  }
  if (a.step <= 0.0 || a.max < a.min) {
    throw std::invalid_argument("bounds: need step > 0 and max >= min");
  }
  out << "theta,f1,f2,g1,g2,g3,g4\n";
  long count = std::lround((a.max - a.min) / a.step);
  for (long i = 0; i <= count; ++i) {
    double theta = a.min + static_cast<double>(i) * a.step;
    if (theta <= 1.0) continue;
    out << fixed12(theta) << "," << fixed12(bounds::f1(theta)) << ","
        << fixed12(bounds::f2(theta));
    for (int piece = 1; piece <= 4; ++piece) {
      out << ",";
      if (bounds::in_g_domain(piece, theta)) {
        double value = piece == 1   ? bounds::g1(theta)
                       : piece == 2 ? bounds::g2(theta)
                       : piece == 3 ? bounds::g3(theta)
                                    : bounds::g4(theta);
        out << fixed12(value);
      }
    }
    out << "\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  apply_tolerance_env();

  CLI::App app{"Dial-a-ride on the line: exact offline solver, online "
               "algorithms, adversarial families, and bound curves"};
  app.name("linedarp");
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Solve an instance offline from (t, p)");
  solve_cmd->add_option("input", solve_args.input, "Instance JSON ('-' = stdin)")
      ->required();
  solve_cmd->add_option("--t", solve_args.t, "Start time");
  solve_cmd->add_option("--p", solve_args.p, "Start position");
  solve_cmd->add_option("--max-requests", solve_args.max_requests,
                        "Solver size limit");
  solve_cmd->add_flag("--brute", solve_args.brute,
                      "Use the exhaustive reference solver");
  solve_cmd->add_flag("--memo", solve_args.memo, "Enable dominance pruning");
  solve_cmd->add_flag("--json", solve_args.as_json, "JSON output");

  SimulateArgs sim_args;
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "Run an online algorithm and print the SimResult JSON");
  sim_cmd->add_option("input", sim_args.input, "Instance JSON ('-' = stdin)")
      ->required();
  sim_cmd->add_option("--algo", sim_args.algo,
                      "Algorithm selector (ignore | smartstart:theta=X)");
  sim_cmd->add_option("--expected", sim_args.expected_path,
                      "Family sidecar JSON with algorithm and expectations");
  sim_cmd->add_option("--opt", sim_args.opt,
                      "Known offline optimum (skips solving the instance)");
  sim_cmd->add_option("--tol", sim_args.tol,
                      "Tolerance for the expected-ratio comparison");
  sim_cmd->add_option("--max-requests", sim_args.max_requests,
                      "Solver size limit");
  sim_cmd->add_flag("--check", sim_args.check,
                    "Verify the trajectory and the Smartstart trace");

  GenerateArgs gen_args;
  CLI::App* gen_cmd = app.add_subcommand(
      "generate", "Emit an adversarial family instance plus its sidecar");
  gen_cmd->add_option("--family", gen_args.family, "Family name")
      ->required()
      ->check(CLI::IsMember(adversary::family_names()));
  gen_cmd->add_option("--theta", gen_args.theta, "Smartstart parameter");
  gen_cmd->add_option("--eps", gen_args.eps, "Family eps")->required();
  gen_cmd->add_option("--mu", gen_args.mu, "Luring parameter override");
  gen_cmd->add_option("--lure-cap", gen_args.lure_cap,
                      "Best-effort cap on the lure prefix length");
  gen_cmd->add_flag("--relax-eps", gen_args.relax,
                    "Accept eps beyond the published range");
  gen_cmd->add_option("--output", gen_args.output,
                      "Instance path ('-' = combined JSON on stdout)")
      ->required();

  SweepArgs sweep_args;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Simulate families across a theta grid, report CSV");
  sweep_cmd->add_option("--family", sweep_args.family,
                        "Family name or 'all'");
  sweep_cmd
      ->add_option("--thetas,--theta-grid", sweep_args.thetas,
                   "Comma-separated theta grid")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--eps", sweep_args.eps, "Family eps")->required();
  sweep_cmd->add_option("--tol", sweep_args.tol, "Pass/fail tolerance");
  sweep_cmd->add_option("--lure-cap", sweep_args.lure_cap,
                        "Best-effort cap on lure prefix length");

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Randomized cross-checks of solver, simulator, and bounds");
  verify_cmd->add_option("--seed", verify_args.seed, "Base seed");
  verify_cmd->add_option("--runs", verify_args.runs, "Runs per suite");
  verify_cmd->add_option("--n-max", verify_args.n_max,
                         "Max requests per query (at most 6)");
  verify_cmd
      ->add_option("--suite", verify_args.suite,
                   "all | solver | properties | traces | ignore")
      ->check(CLI::IsMember(
          {"all", "solver", "properties", "traces", "ignore"}));

  BoundsArgs bounds_args;
  CLI::App* bounds_cmd =
      app.add_subcommand("bounds", "Print the bound curves as CSV");
  bounds_cmd->add_option("--min", bounds_args.min, "Grid start");
  bounds_cmd->add_option("--max", bounds_args.max, "Grid end");
  bounds_cmd->add_option("--step", bounds_args.step, "Grid step");
  bounds_cmd->add_flag("--star", bounds_args.star,
                       "Print theta_star and rho_star instead");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve_args, out);
    if (sim_cmd->parsed()) return cmd_simulate(sim_args, out, err);
    if (gen_cmd->parsed()) return cmd_generate(gen_args, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_args, out);
    if (verify_cmd->parsed()) return cmd_verify(verify_args, out);
    if (bounds_cmd->parsed()) return cmd_bounds(bounds_args, out);
  } catch (const offline::SolverLimitError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace linedarp::cli
