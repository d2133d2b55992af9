#pragma once

// JSON serialization for instances, simulation results, and generated
// families.  The instance format is:
//
//   {
//     "capacity": 1,            // positive integer, or "inf"
//     "variant": "open",        // or "closed"
//     "requests": [
//       {"a": -0.5, "b": 1.0, "r": 0.25},
//       ...
//     ]
//   }
//
// Request ids are implicit: the i-th entry gets id i.  Parsing is strict --
// missing keys, unknown keys, or wrongly typed values raise ParseError.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "linedarp/adversary.hpp"
#include "linedarp/model.hpp"
#include "linedarp/sim.hpp"

namespace linedarp::io {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& j);

// Stream/file helpers.  Writers emit two-space-indented JSON with a trailing
// newline; doubles round-trip exactly.
Instance load_instance(std::istream& in);
Instance load_instance_file(const std::string& path);
void save_instance(std::ostream& out, const Instance& instance);
void save_instance_file(const std::string& path, const Instance& instance);

nlohmann::json sim_result_to_json(const sim::SimResult& result);

// Sidecar written next to generated instances: selector string, parameters,
// and the closed-form expectations for the run.
nlohmann::json family_sidecar_json(const adversary::GeneratedFamily& fam);

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

}  // namespace linedarp::io
