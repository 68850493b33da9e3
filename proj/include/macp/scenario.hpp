#pragma once

// Synthetic macrocell scenarios: zipf file popularity scaled by per-SCBS
// request rates drawn uniformly at random.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "macp/model.hpp"
#include "macp/random.hpp"

namespace macp {

enum class RateMode {
  kPerScbsTotal,  // R_n ~ U[low, high], lambda_{ni} = R_n * q_i
  kPerPair,       // R_{ni} ~ U[low, high], lambda_{ni} = R_{ni} * q_i
};

inline const char* to_string(RateMode mode) {
  return mode == RateMode::kPerScbsTotal ? "per_scbs_total" : "per_pair";
}

inline RateMode parse_rate_mode(const std::string& s) {
  if (s == "per_scbs_total") return RateMode::kPerScbsTotal;
  if (s == "per_pair") return RateMode::kPerPair;
  throw std::invalid_argument("unknown rate mode '" + s + "'");
}

struct ScenarioConfig {
  std::size_t num_scbs = 14;
  std::size_t num_files = 100;
  std::size_t cache_size = 20;
  double deadline = 10.0;
  double zipf_shape = 0.8;
  double rate_low = 1.0;
  double rate_high = 10.0;
  double cost_backhaul = 1.0;
  double cost_mbs_tx = 1.0;
  double cost_scbs = 0.0;
  RateMode rate_mode = RateMode::kPerScbsTotal;
  std::uint64_t seed = 1;
};

/// q_i = i^-a / sum_j j^-a for i = 1..num_files.
inline std::vector<double> zipf_popularity(std::size_t num_files, double shape) {
  if (!(shape >= 0.0) || !std::isfinite(shape)) {
    throw std::invalid_argument("zipf shape must be finite and non-negative");
  }
  std::vector<double> q(num_files);
  double norm = 0.0;
  for (std::size_t i = 0; i < num_files; ++i) {
    q[i] = std::pow(static_cast<double>(i + 1), -shape);
    norm += q[i];
  }
  for (double& v : q) v /= norm;
  return q;
}

inline Instance generate_scenario(const ScenarioConfig& config) {
  if (config.num_scbs == 0 || config.num_files == 0) {
    throw std::invalid_argument("scenario needs at least one SCBS and one file");
  }
  if (!(config.rate_low >= 0.0) || !(config.rate_high >= config.rate_low) ||
      !std::isfinite(config.rate_high)) {
    throw std::invalid_argument("rate range must satisfy 0 <= rate_low <= rate_high");
  }
  const std::vector<double> q = zipf_popularity(config.num_files, config.zipf_shape);

  SplitMix64 gen(config.seed);
  Matrix<double> demand(config.num_scbs + 1, config.num_files, 0.0);
  for (std::size_t s = 0; s < config.num_scbs; ++s) {
    if (config.rate_mode == RateMode::kPerScbsTotal) {
      const double total = uniform_real(gen, config.rate_low, config.rate_high);
      for (std::size_t i = 0; i < config.num_files; ++i) {
        demand(area_of_scbs(s), i) = total * q[i];
      }
    } else {
      for (std::size_t i = 0; i < config.num_files; ++i) {
        demand(area_of_scbs(s), i) =
            uniform_real(gen, config.rate_low, config.rate_high) * q[i];
      }
    }
  }
  // The MBS-only area carries no demand in these scenarios.
  return Instance(std::vector<std::size_t>(config.num_scbs, config.cache_size),
                  config.cost_backhaul, config.cost_mbs_tx,
                  std::vector<double>(config.num_scbs, config.cost_scbs),
                  std::move(demand), config.deadline);
}

}  // namespace macp
