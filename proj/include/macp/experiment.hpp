#pragma once

// Scheme comparison and parameter sweeps.
//
//   PAC-UT  popularity caching, every request unicast
//   PAC-MT  popularity caching, per-period multicast
//   MAC-MT  greedy multicast-aware caching, per-period multicast

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "macp/model.hpp"
#include "macp/objective.hpp"
#include "macp/random.hpp"
#include "macp/scenario.hpp"
#include "macp/simulator.hpp"
#include "macp/solvers.hpp"

namespace macp {

enum class Scheme { kPacUt, kPacMt, kMacMt };

inline constexpr std::array<Scheme, 3> kAllSchemes = {Scheme::kPacUt, Scheme::kPacMt,
                                                      Scheme::kMacMt};

inline const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::kPacUt: return "PAC-UT";
    case Scheme::kPacMt: return "PAC-MT";
    case Scheme::kMacMt: return "MAC-MT";
  }
  return "?";
}

struct SchemeOutcome {
  Scheme scheme = Scheme::kPacUt;
  CachingPolicy policy;
  double analytic_cost = 0.0;
  std::optional<SimReport> sim;
};

/// Evaluates the three schemes on one instance. When `sim` is given, each
/// scheme is also simulated in its own service mode; the per-scheme seed is a
/// substream of sim->seed.
inline std::vector<SchemeOutcome> run_comparison(const Instance& instance,
                                                 const std::optional<SimConfig>& sim = {}) {
  const CachingPolicy popular = popularity_placement(instance);
  const SolverReport greedy = greedy_macp(instance);

  std::vector<SchemeOutcome> out;
  for (Scheme scheme : kAllSchemes) {
    SchemeOutcome o;
    o.scheme = scheme;
    o.policy = scheme == Scheme::kMacMt ? greedy.policy : popular;
    o.analytic_cost = scheme == Scheme::kPacUt ? cost_unicast(instance, o.policy).total
                                               : cost_closed_form(instance, o.policy).total;
    if (sim) {
      SimConfig cfg = *sim;
      cfg.mode = scheme == Scheme::kPacUt ? ServiceMode::kUnicast : ServiceMode::kMulticast;
      cfg.seed = substream_seed(sim->seed, static_cast<std::uint64_t>(scheme));
      o.sim = simulate(instance, o.policy, cfg);
    }
    out.push_back(std::move(o));
  }
  return out;
}

enum class SweepAxis { kCacheSize, kZipfShape, kDeadline };

inline const char* to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::kCacheSize: return "cache_size";
    case SweepAxis::kZipfShape: return "zipf_shape";
    case SweepAxis::kDeadline: return "deadline";
  }
  return "?";
}

inline SweepAxis parse_sweep_axis(const std::string& s) {
  if (s == "cache_size") return SweepAxis::kCacheSize;
  if (s == "zipf_shape") return SweepAxis::kZipfShape;
  if (s == "deadline") return SweepAxis::kDeadline;
  throw std::invalid_argument("unknown sweep axis '" + s + "'");
}

struct SweepOptions {
  SweepAxis axis = SweepAxis::kCacheSize;
  std::vector<double> values;
  std::size_t replications = 5;
  bool simulate = false;
  std::uint64_t sim_periods = 2'000;
};

struct SweepRow {
  SweepAxis axis = SweepAxis::kCacheSize;
  double value = 0.0;
  Scheme scheme = Scheme::kPacUt;
  double analytic_cost = 0.0;
  std::optional<double> sim_cost;
  std::optional<double> sim_stderr;
  std::optional<std::size_t> replication;  // empty on averaged rows
  std::uint64_t seed = 0;
};

struct SweepResult {
  std::uint64_t master_seed = 0;
  // One averaged row per (value, scheme), values in input order.
  std::vector<SweepRow> rows;
  // One row per (value, scheme, replication).
  std::vector<SweepRow> replicate_rows;

  const SweepRow& at(double value, Scheme scheme) const {
    for (const auto& r : rows) {
      if (r.value == value && r.scheme == scheme) return r;
    }
    throw std::out_of_range("no sweep row for the requested point");
  }
};

inline ScenarioConfig apply_axis(ScenarioConfig config, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::kCacheSize:
      if (!(value >= 0.0) || value != std::floor(value) || !std::isfinite(value)) {
        throw std::invalid_argument("cache size must be a non-negative integer");
      }
      config.cache_size = static_cast<std::size_t>(value);
      break;
    case SweepAxis::kZipfShape:
      if (!(value >= 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument("zipf shape must be non-negative");
      }
      config.zipf_shape = value;
      break;
    case SweepAxis::kDeadline:
      if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument("deadline must be positive");
      }
      config.deadline = value;
      break;
  }
  return config;
}

// Stream tags for seed derivation.
inline constexpr std::uint64_t kScenarioStream = 0x5ce7a510;
inline constexpr std::uint64_t kSimulationStream = 0x51a1a7e0;

/// Replication r uses the same scenario seed at every axis value, so the
/// rate draws are shared across the sweep.
inline SweepResult sweep(const ScenarioConfig& base, const SweepOptions& options) {
  if (options.values.empty()) throw std::invalid_argument("sweep needs at least one value");
  if (options.replications < 1) throw std::invalid_argument("replications must be >= 1");
  for (double v : options.values) (void)apply_axis(base, options.axis, v);

  SweepResult result;
  result.master_seed = base.seed;
  for (std::size_t vi = 0; vi < options.values.size(); ++vi) {
    const double value = options.values[vi];
    std::array<SweepRow, 3> avg{};
    std::array<double, 3> sim_var{};
    for (std::size_t rep = 0; rep < options.replications; ++rep) {
      ScenarioConfig cfg = apply_axis(base, options.axis, value);
      cfg.seed = substream_seed(base.seed, rep, kScenarioStream);
      const Instance instance = generate_scenario(cfg);
      std::optional<SimConfig> sim;
      if (options.simulate) {
        sim = SimConfig{options.sim_periods, ServiceMode::kMulticast,
                        substream_seed(base.seed, rep, kSimulationStream, vi)};
      }
      const auto outcomes = run_comparison(instance, sim);
      for (std::size_t k = 0; k < outcomes.size(); ++k) {
        const auto& o = outcomes[k];
        SweepRow row{options.axis, value, o.scheme, o.analytic_cost, {}, {}, rep, cfg.seed};
        avg[k].analytic_cost += o.analytic_cost;
        if (o.sim) {
          row.sim_cost = o.sim->mean_cost_per_period;
          row.sim_stderr = o.sim->std_error;
          avg[k].sim_cost = avg[k].sim_cost.value_or(0.0) + o.sim->mean_cost_per_period;
          sim_var[k] += o.sim->std_error * o.sim->std_error;
        }
        result.replicate_rows.push_back(row);
      }
    }
    const double reps = static_cast<double>(options.replications);
    for (std::size_t k = 0; k < 3; ++k) {
      SweepRow row = avg[k];
      row.axis = options.axis;
      row.value = value;
      row.scheme = kAllSchemes[k];
      row.analytic_cost /= reps;
      if (row.sim_cost) {
        *row.sim_cost /= reps;
        row.sim_stderr = std::sqrt(sim_var[k]) / reps;
      }
      row.replication.reset();
      row.seed = base.seed;
      result.rows.push_back(row);
    }
  }
  return result;
}

/// Shortest decimal that round-trips to the same double.
inline std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), end);
}

inline constexpr const char* kSweepCsvHeader =
    "axis,value,scheme,analytic_cost,sim_cost,sim_stderr,replication,seed";

/// Per-replication rows first, then averaged rows tagged replication=mean.
inline void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  os << kSweepCsvHeader << '\n';
  auto emit = [&](const SweepRow& r) {
    os << to_string(r.axis) << ',' << format_number(r.value) << ',' << to_string(r.scheme)
       << ',' << format_number(r.analytic_cost) << ','
       << (r.sim_cost ? format_number(*r.sim_cost) : "") << ','
       << (r.sim_stderr ? format_number(*r.sim_stderr) : "") << ','
       << (r.replication ? std::to_string(*r.replication) : "mean") << ',' << r.seed
       << '\n';
  };
  for (const auto& r : result.replicate_rows) emit(r);
  for (const auto& r : result.rows) emit(r);
}

// Largest relative saving of MAC-MT over each baseline across the averaged
// rows, with the axis value where it occurs.
struct Headline {
  double reduction_vs_pac_mt = 0.0;
  double at_value_pac_mt = 0.0;
  double reduction_vs_pac_ut = 0.0;
  double at_value_pac_ut = 0.0;
};

/// Largest relative saving of MAC-MT over each baseline across the sweep
/// values. Negative when MAC-MT is more expensive at every value.
inline Headline headline(const SweepResult& result) {
  Headline h;
  bool first_mt = true;
  bool first_ut = true;
  for (const auto& r : result.rows) {
    if (r.scheme != Scheme::kMacMt) continue;
    const double mac = r.analytic_cost;
    const double pac_mt = result.at(r.value, Scheme::kPacMt).analytic_cost;
    const double pac_ut = result.at(r.value, Scheme::kPacUt).analytic_cost;
    if (pac_mt > 0.0 && (first_mt || 1.0 - mac / pac_mt > h.reduction_vs_pac_mt)) {
      h.reduction_vs_pac_mt = 1.0 - mac / pac_mt;
      h.at_value_pac_mt = r.value;
      first_mt = false;
    }
    if (pac_ut > 0.0 && (first_ut || 1.0 - mac / pac_ut > h.reduction_vs_pac_ut)) {
      h.reduction_vs_pac_ut = 1.0 - mac / pac_ut;
      h.at_value_pac_ut = r.value;
      first_ut = false;
    }
  }
  return h;
}

}  // namespace macp
