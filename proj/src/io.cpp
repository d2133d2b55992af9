#include "linedarp/io.hpp"

#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace linedarp::io {

namespace {

using nlohmann::json;

void expect(bool ok, const std::string& what) {
  if (!ok) throw ParseError(what);
}

double number_field(const json& j, const std::string& key,
                    const std::string& where) {
  expect(j.contains(key), where + ": missing key '" + key + "'");
  const json& v = j.at(key);
  expect(v.is_number(), where + ": '" + key + "' must be a number");
  return v.get<double>();
}

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& item : j.items()) {
    expect(known.count(item.key()) != 0,
           where + ": unknown key '" + item.key() + "'");
  }
}

}  // namespace

std::string variant_name(Variant v) {
  return v == Variant::Open ? "open" : "closed";
}

Variant variant_from_name(const std::string& name) {
  if (name == "open") return Variant::Open;
  if (name == "closed") return Variant::Closed;
  throw ParseError("variant must be \"open\" or \"closed\", got \"" + name +
                   "\"");
}

json instance_to_json(const Instance& instance) {
  json j;
  if (instance.capacity.is_unbounded()) {
    j["capacity"] = "inf";
  } else {
    j["capacity"] = instance.capacity.slots();
  }
  j["variant"] = variant_name(instance.variant);
  j["requests"] = json::array();
  for (const Request& q : instance.requests) {
    j["requests"].push_back(json{{"a", q.a}, {"b", q.b}, {"r", q.r}});
  }
  return j;
}

Instance instance_from_json(const json& j) {
  expect(j.is_object(), "instance: top level must be an object");
  reject_unknown_keys(j, {"capacity", "variant", "requests"}, "instance");
  expect(j.contains("capacity"), "instance: missing key 'capacity'");
  expect(j.contains("variant"), "instance: missing key 'variant'");
  expect(j.contains("requests"), "instance: missing key 'requests'");

  Instance instance;
  const json& cap = j.at("capacity");
  if (cap.is_string()) {
    expect(cap.get<std::string>() == "inf",
           "instance: capacity must be a positive integer or \"inf\"");
    instance.capacity = Capacity::unbounded();
  } else {
    expect(cap.is_number_integer(),
           "instance: capacity must be a positive integer or \"inf\"");
    long long slots = cap.get<long long>();
    expect(slots >= 1 && slots <= 1000000,
           "instance: capacity must be in [1, 10^6] or \"inf\"");
    instance.capacity = Capacity::finite(static_cast<int>(slots));
  }

  const json& var = j.at("variant");
  expect(var.is_string(), "instance: variant must be a string");
  instance.variant = variant_from_name(var.get<std::string>());

  const json& reqs = j.at("requests");
  expect(reqs.is_array(), "instance: requests must be an array");
  int id = 0;
  for (const json& rq : reqs) {
    expect(rq.is_object(), "request: must be an object");
    reject_unknown_keys(rq, {"a", "b", "r"}, "request");
    Request q;
    q.id = id++;
    q.a = number_field(rq, "a", "request");
    q.b = number_field(rq, "b", "request");
    q.r = number_field(rq, "r", "request");
    instance.requests.push_back(q);
  }

  Validation v = validate(instance);
  if (!v.ok()) throw ParseError("instance: " + v.violations.front());
  return instance;
}

Instance load_instance(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return instance_from_json(j);
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return load_instance(in);
}

void save_instance(std::ostream& out, const Instance& instance) {
  out << instance_to_json(instance).dump(2) << "\n";
}

void save_instance_file(const std::string& path, const Instance& instance) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  save_instance(out, instance);
}

json sim_result_to_json(const sim::SimResult& result) {
  json j;
  j["cost"] = result.cost;
  j["opt"] = result.opt_cost;
  j["ratio"] = result.ratio;
  j["schedules"] = json::array();
  for (const sim::ScheduleRecord& rec : result.schedules) {
    j["schedules"].push_back(json{{"index", rec.index},
                                  {"start_time", rec.start_time},
                                  {"start_pos", rec.start_pos},
                                  {"end_time", rec.end_time},
                                  {"end_pos", rec.end_pos},
                                  {"length", rec.length},
                                  {"served", rec.served}});
  }
  json segments = json::array();
  for (const TrajectorySegment& s : result.trajectory.segments) {
    segments.push_back(json::array({s.t0, s.x0, s.t1, s.x1}));
  }
  json events = json::array();
  for (const TrajectoryEvent& e : result.trajectory.events) {
    events.push_back(json{
        {"time", e.time},
        {"request", e.request_id},
        {"kind", e.kind == ActionKind::Pickup ? "pickup" : "delivery"}});
  }
  j["trajectory"] = json{{"segments", segments}, {"events", events}};
  return j;
}

json family_sidecar_json(const adversary::GeneratedFamily& fam) {
  json j;
  j["family"] = fam.family;
  j["algorithm"] = fam.algorithm;
  j["theta"] = fam.theta;
  j["eps"] = fam.eps;
  j["mu"] = fam.mu;
  j["lure_n"] = fam.lure_n;
  j["expected"] = json{{"alg", fam.expected_alg},
                       {"opt", fam.expected_opt},
                       {"ratio", fam.expected_ratio}};
  j["final_waits"] = fam.final_waits;
  j["notes"] = fam.notes;
  return j;
}

}  // namespace linedarp::io
