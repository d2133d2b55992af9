#include "linedarp/algorithms.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace linedarp::online {

namespace {

offline::SolverQuery make_query(double now, double position,
                                const std::vector<Request>& pending,
                                Capacity capacity, Variant variant) {
  offline::SolverQuery q;
  q.start_time = now;
  q.start_pos = position;
  q.requests = pending;
  q.capacity = capacity;
  q.variant = variant;
  return q;
}

}  // namespace

double smartstart_next_start(double now, double position,
                             const std::vector<Request>& pending, double theta,
                             Capacity capacity, Variant variant,
                             const offline::SolverOptions& solver) {
  if (pending.empty()) {
    throw std::invalid_argument("smartstart_next_start: empty pending set");
  }
  if (theta <= 1.0) {
    throw std::invalid_argument("smartstart_next_start: requires theta > 1");
  }
  double len =
      offline::solve(make_query(now, position, pending, capacity, variant), solver)
          .length;
  return std::max(now, len / (theta - 1.0));
}

Smartstart::Smartstart(double theta, offline::SolverOptions solver)
    : theta_(theta), solver_(solver) {
  if (!(theta > 1.0)) {
    throw std::invalid_argument("Smartstart: requires theta > 1");
  }
}

void Smartstart::begin(Capacity capacity, Variant variant) {
  capacity_ = capacity;
  variant_ = variant;
}

Decision Smartstart::next_decision(double now, double position,
                                   const std::vector<Request>& pending) {
  if (pending.empty()) return Idle{};
  offline::SolvedSchedule s =
      offline::solve(make_query(now, position, pending, capacity_, variant_), solver_);
  double start = std::max(now, s.length / (theta_ - 1.0));
  if (start > now) return WaitUntil{start};
  return StartSchedule{std::move(s)};
}

std::string Smartstart::name() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "smartstart:theta=%.17g", theta_);
  return buf;
}

Ignore::Ignore(offline::SolverOptions solver) : solver_(solver) {}

void Ignore::begin(Capacity capacity, Variant variant) {
  capacity_ = capacity;
  variant_ = variant;
}

Decision Ignore::next_decision(double now, double position,
                               const std::vector<Request>& pending) {
  if (pending.empty()) return Idle{};
  return StartSchedule{
      offline::solve(make_query(now, position, pending, capacity_, variant_), solver_)};
}

std::string Ignore::name() const { return "ignore"; }

std::unique_ptr<OnlineAlgorithm> make_algorithm(
    const std::string& selector, const offline::SolverOptions& solver) {
  if (selector == "ignore") return std::make_unique<Ignore>(solver);
  const std::string prefix = "smartstart:theta=";
  if (selector.rfind(prefix, 0) == 0) {
    const std::string value = selector.substr(prefix.size());
    char* end = nullptr;
    double theta = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || !std::isfinite(theta) ||
        theta <= 1.0) {
      throw std::invalid_argument("make_algorithm: bad theta in '" + selector + "'");
    }
    return std::make_unique<Smartstart>(theta, solver);
  }
  throw std::invalid_argument(
      "make_algorithm: unknown selector '" + selector +
      "' (expected 'ignore' or 'smartstart:theta=<value>')");
}

}  // namespace linedarp::online
