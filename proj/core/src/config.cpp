#include "qsched/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qsched/errors.hpp"
#include "qsched/stochastic.hpp"

namespace qsched {

using nlohmann::json;

void SimConfig::validate() const {
  spec.validate();
  if (steps < 1) throw SpecError("steps must be >= 1");
  if (policy.gamma < 0) throw SpecError("gamma must be nonnegative");
}

double SweepAxis::value(int index) const {
  if (count <= 1) return min;
  return min + (max - min) * static_cast<double>(index) / static_cast<double>(count - 1);
}

namespace {

struct Quantity {
  double value = 0.0;
  std::string unit;  // empty when the number was bare
};

Quantity parse_quantity(const std::string& text) {
  std::istringstream in(text);
  Quantity q;
  if (!(in >> q.value)) throw SpecError("cannot parse quantity: '" + text + "'");
  in >> q.unit;
  std::string rest;
  if (in >> rest) throw SpecError("trailing text in quantity: '" + text + "'");
  return q;
}

double frequency_hz(const std::string& unit) {
  if (unit == "Hz") return 1.0;
  if (unit == "kHz") return 1e3;
  if (unit == "MHz") return 1e6;
  if (unit == "GHz") return 1e9;
  throw SpecError("unknown frequency unit: '" + unit + "'");
}

double duration_seconds(const std::string& unit) {
  if (unit == "s") return 1.0;
  if (unit == "ms") return 1e-3;
  if (unit == "us" || unit == "µs") return 1e-6;
  if (unit == "ns") return 1e-9;
  throw SpecError("unknown duration unit: '" + unit + "'");
}

double rate_from_json(const json& j, std::optional<double> dt) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_rate_per_step(j.get<std::string>(), dt);
  throw SpecError("rate must be a number (per step) or a string with a unit");
}

double seconds_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_seconds(j.get<std::string>());
  throw SpecError("duration must be a number (seconds) or a string with a unit");
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) throw SpecError("unknown key '" + it.key() + "' in " + where);
  }
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open config file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SpecError("config parse error in " + path.string() + ": " + e.what());
  }
  return j;
}

json load_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("config parse error: ") + e.what());
  }
}

SimConfig sim_config_from(const json& j) {
  reject_unknown_keys(j, {"nodes", "edges", "routes", "users", "eta", "tau", "dt",
                          "policy", "gamma", "steps", "seed", "sweep"},
                      "config");
  SimConfig cfg;
  if (j.contains("dt")) cfg.dt = seconds_from_json(j.at("dt"));
  if (j.contains("tau")) cfg.tau = seconds_from_json(j.at("tau"));

  if (!j.contains("nodes")) throw SpecError("config is missing 'nodes'");
  cfg.spec.nodes = j.at("nodes").get<std::vector<std::string>>();

  for (const auto& e : j.value("edges", json::array())) {
    if (!e.is_array() || e.size() != 3)
      throw SpecError("each edge must be [node, node, rate]");
    cfg.spec.edges.push_back(
        {e[0].get<std::string>(), e[1].get<std::string>(), rate_from_json(e[2], cfg.dt)});
  }
  for (const auto& r : j.value("routes", json::array()))
    cfg.spec.routes.push_back(r.get<std::vector<std::string>>());
  for (const auto& u : j.value("users", json::array())) {
    if (!u.is_array() || u.size() != 3)
      throw SpecError("each user entry must be [node, node, rate]");
    cfg.spec.users.push_back(
        {u[0].get<std::string>(), u[1].get<std::string>(), rate_from_json(u[2], cfg.dt)});
  }

  if (j.contains("eta")) {
    if (cfg.tau) throw SpecError("give either eta or tau, not both");
    cfg.spec.eta = j.at("eta").get<double>();
  } else if (cfg.tau) {
    if (!cfg.dt) throw SpecError("tau requires dt to derive eta");
    cfg.spec.eta = eta_from_lifetime(*cfg.tau, *cfg.dt);
  }

  cfg.policy.kind = policy_kind_from_name(j.value("policy", "greedy"));
  cfg.policy.gamma = j.value("gamma", 1.0);
  cfg.steps = j.value("steps", int64_t{1});
  cfg.seed = j.value("seed", uint64_t{0});
  cfg.validate();
  return cfg;
}

std::optional<SweepSpec> sweep_spec_from(const json& j) {
  if (!j.contains("sweep")) return std::nullopt;
  const json& sj = j.at("sweep");
  reject_unknown_keys(sj, {"pairs", "beta1", "beta2", "replications"}, "sweep");
  if (!sj.contains("pairs") || !sj.at("pairs").is_array() || sj.at("pairs").size() != 2)
    throw SpecError("sweep.pairs must list exactly two user pairs");

  auto read_pair = [&](const json& p) {
    if (!p.is_array() || p.size() != 2) throw SpecError("sweep pair must be [node, node]");
    return std::make_pair(p[0].get<std::string>(), p[1].get<std::string>());
  };
  std::optional<double> dt;
  if (j.contains("dt")) dt = seconds_from_json(j.at("dt"));
  auto read_axis = [&](const char* key) {
    if (!sj.contains(key)) throw SpecError(std::string("sweep is missing '") + key + "'");
    const json& aj = sj.at(key);
    reject_unknown_keys(aj, {"min", "max", "count"}, key);
    SweepAxis axis;
    axis.min = rate_from_json(aj.at("min"), dt);
    axis.max = rate_from_json(aj.at("max"), dt);
    axis.count = aj.value("count", 1);
    if (axis.count < 1) throw SpecError("sweep axis count must be >= 1");
    if (axis.min > axis.max) throw SpecError("sweep axis has min > max");
    return axis;
  };

  SweepSpec spec;
  spec.pair1 = read_pair(sj.at("pairs")[0]);
  spec.pair2 = read_pair(sj.at("pairs")[1]);
  spec.axis1 = read_axis("beta1");
  spec.axis2 = read_axis("beta2");
  spec.replications = sj.value("replications", 1);
  if (spec.replications < 1) throw SpecError("sweep replications must be >= 1");
  return spec;
}

}  // namespace

double parse_rate_per_step(const std::string& text, std::optional<double> dt_seconds) {
  Quantity q = parse_quantity(text);
  if (q.unit.empty()) return q.value;
  if (!dt_seconds)
    throw SpecError("rate '" + text + "' has a physical unit but no dt was given");
  return q.value * frequency_hz(q.unit) * (*dt_seconds);
}

double parse_seconds(const std::string& text) {
  Quantity q = parse_quantity(text);
  if (q.unit.empty()) return q.value;
  return q.value * duration_seconds(q.unit);
}

SimConfig parse_sim_config(const std::filesystem::path& path) {
  return sim_config_from(load_json(path));
}

SimConfig parse_sim_config_json(const std::string& json_text) {
  return sim_config_from(load_json_text(json_text));
}

std::optional<SweepSpec> parse_sweep_spec(const std::filesystem::path& path) {
  return sweep_spec_from(load_json(path));
}

std::optional<SweepSpec> parse_sweep_spec_json(const std::string& json_text) {
  return sweep_spec_from(load_json_text(json_text));
}

}  // namespace qsched
