#pragma once

// Online algorithms driven by the simulator.  An algorithm sees only what
// an online player may see: the current time, the server position, and the
// released-but-unserved requests.  It reacts with one of three decisions;
// a started schedule is executed to completion and is never revised.

#include <memory>
#include <string>
#include <variant>

#include "linedarp/model.hpp"
#include "linedarp/offline.hpp"

namespace linedarp::online {

struct StartSchedule {
  offline::SolvedSchedule schedule;
};

struct WaitUntil {
  double time = 0.0;
};

struct Idle {};

using Decision = std::variant<StartSchedule, WaitUntil, Idle>;

class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;

  // Called once before the run with the instance configuration the
  // algorithm is entitled to know (capacity, variant) -- not the requests.
  virtual void begin(Capacity capacity, Variant variant) = 0;

  // Notification that `request` became known at time `time`.
  virtual void on_release(double time, const Request& request) { (void)time, (void)request; }

  // Invoked whenever the server is free: at time 0, when a schedule
  // completes, when a wait expires, and re-invoked after every release
  // that interrupts a wait.  `pending` holds the released, unserved
  // requests in release order.
  virtual Decision next_decision(double now, double position,
                                 const std::vector<Request>& pending) = 0;

  virtual std::string name() const = 0;
};

// Start time Smartstart would use for the pending set: max(now, L / (theta
// - 1)) with L = L(now, position, pending).  Requires a nonempty set.
double smartstart_next_start(double now, double position,
                             const std::vector<Request>& pending, double theta,
                             Capacity capacity, Variant variant,
                             const offline::SolverOptions& solver = {});

// Smartstart(theta), theta > 1: while the pending set would finish "too
// early" (now <= L / (theta - 1)), sleep; then serve the entire pending
// set in one optimal schedule.  Releases during a sleep re-trigger the
// start-time computation; releases during a schedule are buffered.
class Smartstart final : public OnlineAlgorithm {
 public:
  explicit Smartstart(double theta, offline::SolverOptions solver = {});
  void begin(Capacity capacity, Variant variant) override;
  Decision next_decision(double now, double position,
                         const std::vector<Request>& pending) override;
  std::string name() const override;
  double theta() const { return theta_; }

 private:
  double theta_;
  offline::SolverOptions solver_;
  Capacity capacity_;
  Variant variant_ = Variant::Open;
};

// Ignore: whenever the server is free and requests are pending, serve all
// of them in one optimal schedule immediately.
class Ignore final : public OnlineAlgorithm {
 public:
  explicit Ignore(offline::SolverOptions solver = {});
  void begin(Capacity capacity, Variant variant) override;
  Decision next_decision(double now, double position,
                         const std::vector<Request>& pending) override;
  std::string name() const override;

 private:
  offline::SolverOptions solver_;
  Capacity capacity_;
  Variant variant_ = Variant::Open;
};

// Builds an algorithm from a selector string: "ignore" or
// "smartstart:theta=<value>".  Throws std::invalid_argument on anything
// else.
std::unique_ptr<OnlineAlgorithm> make_algorithm(
    const std::string& selector, const offline::SolverOptions& solver = {});

}  // namespace linedarp::online
