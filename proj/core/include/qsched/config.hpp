#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "qsched/policies.hpp"
#include "qsched/topology.hpp"

namespace qsched {

/// Everything one simulation run needs. Parsed from a single JSON document;
/// see parse_sim_config for the schema.
struct SimConfig {
  NetworkSpec spec;
  PolicyConfig policy;
  int64_t steps = 1;
  uint64_t seed = 0;
  std::optional<double> dt;   // seconds per step, needed for unit-bearing rates
  std::optional<double> tau;  // memory lifetime in seconds; with dt yields eta

  void validate() const;  // throws SpecError
};

/// Two-commodity sweep: a grid of demand rates for two user pairs.
struct SweepAxis {
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  double value(int index) const;
};

struct SweepSpec {
  std::pair<NodeId, NodeId> pair1;
  std::pair<NodeId, NodeId> pair2;
  SweepAxis axis1;
  SweepAxis axis2;
  int replications = 1;
};

/// Quantity with an optional physical unit, e.g. 0.3, "300 kHz" or "1 us".
/// Frequencies are converted to per-step rates with dt; durations to seconds.
double parse_rate_per_step(const std::string& text, std::optional<double> dt_seconds);
double parse_seconds(const std::string& text);

/// Loads `{nodes, edges, routes, users, eta | {tau, dt}, policy, gamma,
/// steps, seed, sweep?}` from a JSON file. Unknown keys are rejected.
SimConfig parse_sim_config(const std::filesystem::path& path);
SimConfig parse_sim_config_json(const std::string& json_text);

/// The optional "sweep" section of the same document, if present.
std::optional<SweepSpec> parse_sweep_spec(const std::filesystem::path& path);
std::optional<SweepSpec> parse_sweep_spec_json(const std::string& json_text);

}  // namespace qsched
