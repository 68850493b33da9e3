#pragma once

// Monte Carlo replay of Poisson demand against a fixed policy.
//
// Requests that arrive within a period are served at the period boundary, so
// only per-(area, file) request counts are sampled. Every count is drawn from
// its own substream keyed by (seed, period, area, file); a period's outcome
// does not depend on which other periods were simulated or in what order.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "macp/model.hpp"
#include "macp/random.hpp"

namespace macp {

enum class ServiceMode { kUnicast, kMulticast };

inline const char* to_string(ServiceMode mode) {
  return mode == ServiceMode::kUnicast ? "unicast" : "multicast";
}

inline ServiceMode parse_service_mode(const std::string& s) {
  if (s == "unicast") return ServiceMode::kUnicast;
  if (s == "multicast") return ServiceMode::kMulticast;
  throw std::invalid_argument("unknown service mode '" + s + "'");
}

struct SimConfig {
  std::uint64_t periods = 10'000;
  ServiceMode mode = ServiceMode::kMulticast;
  std::uint64_t seed = 1;
};

struct SimReport {
  double mean_cost_per_period = 0.0;
  double std_error = 0.0;
  std::uint64_t periods = 0;
  std::uint64_t mbs_transmissions = 0;
  std::uint64_t scbs_transmissions = 0;
  std::uint64_t unicast_transmissions = 0;
  std::uint64_t requests = 0;
};

struct PeriodRecord {
  std::uint64_t period = 0;
  double cost = 0.0;
  std::uint64_t mbs_tx = 0;
  std::uint64_t scbs_tx = 0;
  std::uint64_t unicast_tx = 0;
};

namespace detail {

struct PeriodOutcome {
  double cost = 0.0;
  std::uint64_t mbs_tx = 0;
  std::uint64_t scbs_tx = 0;
  std::uint64_t unicast_tx = 0;
  std::uint64_t requests = 0;
};

inline PeriodOutcome simulate_period(const Instance& instance, const CachingPolicy& policy,
                                     ServiceMode mode, std::uint64_t seed,
                                     std::uint64_t period) {
  PeriodOutcome out;
  const double d = instance.deadline();
  for (std::size_t i = 0; i < instance.num_files(); ++i) {
    AreaSubset requesting;
    for (AreaId a = 0; a < instance.num_areas(); ++a) {
      const double mean = instance.rate(a, i) * d;
      if (mean == 0.0) continue;
      SplitMix64 gen(substream_seed(seed, period, a, i));
      const std::uint64_t k = sample_poisson(gen, mean);
      if (k == 0) continue;
      out.requests += k;
      requesting = requesting.with(a);
      if (mode == ServiceMode::kUnicast) {
        out.unicast_tx += k;
        const bool local = a != kMbsOnlyArea && policy.cached(a - 1, i);
        out.cost += static_cast<double>(k) *
                    (local ? instance.cost_scbs_tx(a - 1) : instance.mbs_cost());
      }
    }
    if (mode == ServiceMode::kMulticast && !requesting.empty()) {
      if (mbs_triggered(policy, requesting, i)) {
        out.cost += instance.mbs_cost();
        ++out.mbs_tx;
      } else {
        for (AreaId a : requesting.areas()) {
          out.cost += instance.cost_scbs_tx(a - 1);
          ++out.scbs_tx;
        }
      }
    }
  }
  return out;
}

template <typename OnPeriod>
SimReport run_simulation(const Instance& instance, const CachingPolicy& policy,
                         const SimConfig& config, OnPeriod&& on_period) {
  policy.require_feasible(instance);
  if (config.periods < 1) throw std::invalid_argument("periods must be at least 1");
  SimReport report;
  report.periods = config.periods;
  // Welford running mean and sum of squared deviations.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::uint64_t t = 0; t < config.periods; ++t) {
    const PeriodOutcome o = simulate_period(instance, policy, config.mode, config.seed, t);
    const double delta = o.cost - mean;
    mean += delta / static_cast<double>(t + 1);
    m2 += delta * (o.cost - mean);
    report.mbs_transmissions += o.mbs_tx;
    report.scbs_transmissions += o.scbs_tx;
    report.unicast_transmissions += o.unicast_tx;
    report.requests += o.requests;
    on_period(PeriodRecord{t, o.cost, o.mbs_tx, o.scbs_tx, o.unicast_tx});
  }
  report.mean_cost_per_period = mean;
  if (config.periods > 1) {
    const double var = m2 / static_cast<double>(config.periods - 1);
    report.std_error = std::sqrt(var / static_cast<double>(config.periods));
  }
  return report;
}

}  // namespace detail

/// Simulates `config.periods` service periods. Deterministic in the seed.
inline SimReport simulate(const Instance& instance, const CachingPolicy& policy,
                          const SimConfig& config) {
  return detail::run_simulation(instance, policy, config, [](const PeriodRecord&) {});
}

/// As above, also recording one PeriodRecord per period.
inline SimReport simulate(const Instance& instance, const CachingPolicy& policy,
                          const SimConfig& config, std::vector<PeriodRecord>& trace) {
  trace.clear();
  trace.reserve(config.periods);
  return detail::run_simulation(instance, policy, config,
                                [&](const PeriodRecord& r) { trace.push_back(r); });
}

}  // namespace macp
