#pragma once

// JSON interchange for instances, policies, reports and reduction inputs.
// Field names are fixed so fixtures can be exchanged with other tools.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "macp/experiment.hpp"
#include "macp/model.hpp"
#include "macp/objective.hpp"
#include "macp/reduction.hpp"
#include "macp/scenario.hpp"
#include "macp/simulator.hpp"
#include "macp/solvers.hpp"

namespace macp {

using json = nlohmann::json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Instance

inline json to_json(const Instance& instance) {
  return json{
      {"num_scbs", instance.num_scbs()},
      {"num_files", instance.num_files()},
      {"cache_size", instance.cache_sizes()},
      {"cost_backhaul", instance.cost_backhaul()},
      {"cost_mbs_tx", instance.cost_mbs_tx()},
      {"cost_scbs_tx", instance.costs_scbs_tx()},
      {"demand", instance.demand().to_rows()},
      {"deadline", instance.deadline()},
  };
}

inline Instance instance_from_json(const json& j) {
  const auto n = j.at("num_scbs").get<std::size_t>();
  const auto files = j.at("num_files").get<std::size_t>();
  auto cache = j.at("cache_size").get<std::vector<std::size_t>>();
  auto costs = j.at("cost_scbs_tx").get<std::vector<double>>();
  auto rows = j.at("demand").get<std::vector<std::vector<double>>>();
  if (cache.size() != n) throw std::invalid_argument("cache_size length differs from num_scbs");
  if (rows.size() != n + 1) throw std::invalid_argument("demand needs num_scbs + 1 rows");
  for (const auto& r : rows) {
    if (r.size() != files) throw std::invalid_argument("demand row length differs from num_files");
  }
  return Instance(std::move(cache), j.at("cost_backhaul").get<double>(),
                  j.at("cost_mbs_tx").get<double>(), std::move(costs),
                  Matrix<double>::from_rows(rows), j.at("deadline").get<double>());
}

// Policies serialize as a bare N x I array of 0/1.

inline json to_json(const CachingPolicy& policy) { return json(policy.to_rows()); }

/// Accepts a bare matrix or any object carrying it under "policy".
inline CachingPolicy policy_from_json(const json& j) {
  const json& m = j.is_object() ? j.at("policy") : j;
  return CachingPolicy::from_rows(m.get<std::vector<std::vector<int>>>());
}

inline json to_json(const CostBreakdown& cost) {
  return json{{"total", cost.total},
              {"per_file", cost.per_file},
              {"mbs_component", cost.mbs_component},
              {"scbs_component", cost.scbs_component}};
}

inline json to_json(const SolverReport& report) {
  json trace = json::array();
  for (const auto& s : report.trace) {
    trace.push_back({{"iteration", s.iteration},
                     {"scbs", s.scbs},
                     {"file", s.file},
                     {"objective", s.objective}});
  }
  return json{{"policy", to_json(report.policy)},
              {"cost", to_json(report.cost)},
              {"trace", trace},
              {"evaluations", report.evaluations}};
}

inline json to_json(const SimReport& r) {
  return json{{"mean_cost_per_period", r.mean_cost_per_period},
              {"std_error", r.std_error},
              {"periods", r.periods},
              {"mbs_transmissions", r.mbs_transmissions},
              {"scbs_transmissions", r.scbs_transmissions},
              {"unicast_transmissions", r.unicast_transmissions},
              {"requests", r.requests}};
}

// Set packing and decision instances

inline json to_json(const SppInstance& spp) {
  return json{{"elements", spp.elements}, {"subsets", spp.subsets}, {"target", spp.target}};
}

inline SppInstance spp_from_json(const json& j) {
  SppInstance spp;
  spp.elements = j.at("elements").get<std::vector<std::int64_t>>();
  spp.subsets = j.at("subsets").get<std::vector<std::vector<std::int64_t>>>();
  spp.target = j.at("target").get<std::size_t>();
  spp.validate();
  return spp;
}

inline json to_json(const DecisionInstance& d) {
  json probs = json::array();
  for (std::size_t i = 0; i < d.table.size(); ++i) {
    for (const auto& e : d.table[i]) {
      probs.push_back({{"file", i}, {"areas", e.areas.areas()}, {"p", e.probability}});
    }
  }
  return json{{"num_scbs", d.num_scbs},
              {"num_files", d.num_files},
              {"cache_size", d.cache_size},
              {"cost_backhaul", d.cost_backhaul},
              {"cost_mbs_tx", d.cost_mbs_tx},
              {"cost_scbs_tx", d.cost_scbs_tx},
              {"deadline", d.deadline},
              {"probabilities", probs},
              {"threshold", d.threshold}};
}

inline DecisionInstance decision_from_json(const json& j) {
  DecisionInstance d;
  d.num_scbs = j.at("num_scbs").get<std::size_t>();
  d.num_files = j.at("num_files").get<std::size_t>();
  d.cache_size = j.at("cache_size").get<std::vector<std::size_t>>();
  d.cost_backhaul = j.at("cost_backhaul").get<double>();
  d.cost_mbs_tx = j.at("cost_mbs_tx").get<double>();
  d.cost_scbs_tx = j.at("cost_scbs_tx").get<std::vector<double>>();
  d.deadline = j.at("deadline").get<double>();
  d.threshold = j.at("threshold").get<double>();
  d.table.resize(d.num_files);
  for (const auto& e : j.at("probabilities")) {
    const auto file = e.at("file").get<std::size_t>();
    if (file >= d.num_files) throw std::invalid_argument("probability entry file out of range");
    AreaSubset areas;
    for (auto a : e.at("areas").get<std::vector<std::size_t>>()) areas = areas.with(a);
    d.table[file].push_back({areas, e.at("p").get<double>()});
  }
  d.validate();
  return d;
}

// Scenario configuration. Missing keys keep their defaults.

inline json to_json(const ScenarioConfig& c) {
  return json{{"num_scbs", c.num_scbs},         {"num_files", c.num_files},
              {"cache_size", c.cache_size},     {"deadline", c.deadline},
              {"zipf_shape", c.zipf_shape},     {"rate_low", c.rate_low},
              {"rate_high", c.rate_high},       {"cost_backhaul", c.cost_backhaul},
              {"cost_mbs_tx", c.cost_mbs_tx},   {"cost_scbs", c.cost_scbs},
              {"rate_mode", to_string(c.rate_mode)}, {"seed", c.seed}};
}

inline ScenarioConfig scenario_from_json(const json& j, ScenarioConfig c = {}) {
  auto take = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  take("num_scbs", c.num_scbs);
  take("num_files", c.num_files);
  take("cache_size", c.cache_size);
  take("deadline", c.deadline);
  take("zipf_shape", c.zipf_shape);
  take("rate_low", c.rate_low);
  take("rate_high", c.rate_high);
  take("cost_backhaul", c.cost_backhaul);
  take("cost_mbs_tx", c.cost_mbs_tx);
  take("cost_scbs", c.cost_scbs);
  take("seed", c.seed);
  if (j.contains("rate_mode")) c.rate_mode = parse_rate_mode(j.at("rate_mode").get<std::string>());
  return c;
}

}  // namespace macp
