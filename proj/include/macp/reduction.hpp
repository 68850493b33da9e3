#pragma once

// Set packing -> multicast-aware caching decision problem.
//
// The reduction maps every ground element to a unit-cache SCBS and every
// listed subset L(i) to a file i whose only demand is the joint event
// "exactly the SCBSs of L(i) request file i", with probability 1/|L|. A file
// avoids the MBS only when it is cached at every SCBS of its subset, and unit
// caches force the served subsets to be pairwise disjoint.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "macp/error.hpp"
#include "macp/model.hpp"
#include "macp/solvers.hpp"

namespace macp {

struct SppInstance {
  std::vector<std::int64_t> elements;
  std::vector<std::vector<std::int64_t>> subsets;
  std::size_t target = 0;

  void validate() const {
    std::set<std::int64_t> seen;
    for (auto e : elements) {
      if (!seen.insert(e).second) {
        throw std::invalid_argument("duplicate element " + std::to_string(e));
      }
    }
    if (elements.size() > kMaxScbs) {
      throw std::invalid_argument("at most " + std::to_string(kMaxScbs) +
                                  " elements are supported");
    }
    for (const auto& sub : subsets) {
      for (auto e : sub) {
        if (!seen.contains(e)) {
          throw std::invalid_argument("subset element " + std::to_string(e) +
                                      " is not in the ground set");
        }
      }
    }
    if (target > subsets.size()) {
      throw std::invalid_argument("target exceeds the number of subsets");
    }
  }

  // Bitmask of element positions covered by subsets[i].
  std::uint64_t subset_mask(std::size_t i) const {
    std::uint64_t mask = 0;
    for (auto e : subsets.at(i)) {
      const auto it = std::find(elements.begin(), elements.end(), e);
      mask |= std::uint64_t{1} << static_cast<std::size_t>(it - elements.begin());
    }
    return mask;
  }
};

// One entry of the explicit joint demand table: the probability that exactly
// `areas` request the file within a period.
struct ProbabilityEntry {
  AreaSubset areas;
  double probability = 0.0;
};

// Decision instance with an explicit (not product-form) probability table.
struct DecisionInstance {
  std::size_t num_scbs = 0;
  std::size_t num_files = 0;
  std::vector<std::size_t> cache_size;
  double cost_backhaul = 0.0;
  double cost_mbs_tx = 0.0;
  std::vector<double> cost_scbs_tx;
  double deadline = 1.0;
  std::vector<std::vector<ProbabilityEntry>> table;  // one list per file
  double threshold = 0.0;

  void validate() const {
    if (num_scbs > kMaxScbs) throw std::invalid_argument("too many SCBSs");
    if (cache_size.size() != num_scbs || cost_scbs_tx.size() != num_scbs) {
      throw std::invalid_argument("per-SCBS vectors must have num_scbs entries");
    }
    if (table.size() != num_files) {
      throw std::invalid_argument("probability table must list every file");
    }
    if (!(deadline > 0.0)) throw std::invalid_argument("deadline must be positive");
    for (const auto& entries : table) {
      double mass = 0.0;
      for (const auto& e : entries) {
        if (!(e.probability >= 0.0 && e.probability <= 1.0)) {
          throw std::invalid_argument("probabilities must lie in [0, 1]");
        }
        if ((e.areas.mask() >> (num_scbs + 1)) != 0) {
          throw std::invalid_argument("probability entry names an unknown area");
        }
        mass += e.probability;
      }
      if (mass > 1.0 + 1e-12) {
        throw std::invalid_argument("per-file probabilities sum above 1");
      }
    }
  }

  double mbs_cost() const noexcept { return cost_backhaul + cost_mbs_tx; }
};

/// Objective over the explicit table. Subsets not listed have probability 0
/// and the empty subset costs nothing.
inline double decision_objective(const DecisionInstance& decision,
                                 const CachingPolicy& policy) {
  double total = 0.0;
  for (std::size_t i = 0; i < decision.num_files; ++i) {
    for (const auto& e : decision.table[i]) {
      if (e.areas.empty() || e.probability == 0.0) continue;
      if (mbs_triggered(policy, e.areas, i)) {
        total += e.probability * decision.mbs_cost();
      } else {
        double local = 0.0;
        for (AreaId a : e.areas.areas()) local += decision.cost_scbs_tx[a - 1];
        total += e.probability * local;
      }
    }
  }
  return total;
}

/// Builds the decision instance: N = |E| unit caches, I = |L| files,
/// c_B = 0, c_W = 1, c_n = 0, d = 1, p(L(i), i) = 1/|L| and
/// Q = 1 - k/|L|.
inline DecisionInstance spp_to_macdp(const SppInstance& spp) {
  spp.validate();
  if (spp.subsets.empty()) {
    throw std::invalid_argument("set packing instance has no subsets");
  }
  const double share = 1.0 / static_cast<double>(spp.subsets.size());
  DecisionInstance d;
  d.num_scbs = spp.elements.size();
  d.num_files = spp.subsets.size();
  d.cache_size.assign(d.num_scbs, 1);
  d.cost_backhaul = 0.0;
  d.cost_mbs_tx = 1.0;
  d.cost_scbs_tx.assign(d.num_scbs, 0.0);
  d.deadline = 1.0;
  d.table.resize(d.num_files);
  for (std::size_t i = 0; i < d.num_files; ++i) {
    // element position j is SCBS j, i.e. area j + 1
    d.table[i].push_back({AreaSubset(spp.subset_mask(i) << 1), share});
  }
  d.threshold = 1.0 - static_cast<double>(spp.target) * share;
  return d;
}

struct DecisionResult {
  bool satisfiable = false;
  std::optional<CachingPolicy> witness;
  // Lowest objective seen; when unsatisfiable this is the true minimum and
  // exceeds the threshold, which refutes the instance.
  double best_objective = 0.0;
  std::uint64_t evaluated = 0;
};

/// Exhaustive decision: is there a feasible policy with objective <= Q?
/// Returns the lexicographically smallest witness.
inline DecisionResult macdp_decide(const DecisionInstance& decision,
                                   ExactLimits limits = {}) {
  decision.validate();
  std::vector<std::size_t> capacity(decision.cache_size);
  for (auto& c : capacity) c = std::min(c, decision.num_files);
  const std::uint64_t space = feasible_policy_count(capacity, decision.num_files);
  if (space > limits.max_policies) {
    throw CapacityError("decision search space has " + std::to_string(space) +
                            " policies, above the cap of " +
                            std::to_string(limits.max_policies),
                        space);
  }
  constexpr double kSlack = 1e-9;
  DecisionResult result;
  result.best_objective = std::numeric_limits<double>::infinity();
  detail::for_each_policy(decision.num_scbs, decision.num_files, capacity,
                          [&](const CachingPolicy& p) {
                            const double value = decision_objective(decision, p);
                            ++result.evaluated;
                            result.best_objective = std::min(result.best_objective, value);
                            if (value <= decision.threshold + kSlack) {
                              result.satisfiable = true;
                              result.witness = p;
                              return false;
                            }
                            return true;
                          });
  return result;
}

struct PackingResult {
  bool found = false;
  std::vector<std::size_t> chosen;  // 0-based indices into subsets
};

struct PackingLimits {
  std::size_t max_subsets = 24;
};

/// Exhaustive set packing: are there `target` pairwise-disjoint subsets?
/// The witness is the lexicographically first index combination.
inline PackingResult spp_decide(const SppInstance& spp, PackingLimits limits = {}) {
  spp.validate();
  if (spp.subsets.size() > limits.max_subsets) {
    throw CapacityError("set packing search is capped at " +
                            std::to_string(limits.max_subsets) + " subsets",
                        spp.subsets.size() >= 64
                            ? std::numeric_limits<std::uint64_t>::max()
                            : std::uint64_t{1} << spp.subsets.size());
  }
  std::vector<std::uint64_t> masks(spp.subsets.size());
  for (std::size_t i = 0; i < masks.size(); ++i) masks[i] = spp.subset_mask(i);

  PackingResult result;
  std::vector<std::size_t> chosen;
  std::function<bool(std::size_t, std::uint64_t)> rec = [&](std::size_t next,
                                                           std::uint64_t used) {
    if (chosen.size() == spp.target) return true;
    if (masks.size() - next < spp.target - chosen.size()) return false;
    for (std::size_t i = next; i < masks.size(); ++i) {
      if ((masks[i] & used) != 0) continue;
      chosen.push_back(i);
      if (rec(i + 1, used | masks[i])) return true;
      chosen.pop_back();
    }
    return false;
  };
  result.found = rec(0, 0);
  if (result.found) result.chosen = chosen;
  return result;
}

/// Subsets served entirely from caches under `policy` (file i cached at every
/// SCBS of L(i); empty subsets count trivially). Under unit caches they are
/// pairwise disjoint.
inline std::vector<std::size_t> packing_from_policy(const SppInstance& spp,
                                                    const CachingPolicy& policy) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < spp.subsets.size(); ++i) {
    const std::uint64_t mask = spp.subset_mask(i);
    bool served = true;
    for (std::size_t j = 0; j < spp.elements.size(); ++j) {
      if (((mask >> j) & 1U) != 0 && !policy.cached(j, i)) {
        served = false;
        break;
      }
    }
    if (served) out.push_back(i);
  }
  return out;
}

/// Places file i at every SCBS of L(i) for each chosen subset.
inline CachingPolicy policy_from_packing(const SppInstance& spp,
                                         const std::vector<std::size_t>& chosen) {
  CachingPolicy policy(spp.elements.size(), spp.subsets.size());
  for (std::size_t i : chosen) {
    const std::uint64_t mask = spp.subset_mask(i);
    for (std::size_t j = 0; j < spp.elements.size(); ++j) {
      if (((mask >> j) & 1U) != 0) policy.place(j, i);
    }
  }
  return policy;
}

/// True iff the listed subsets are pairwise disjoint.
inline bool pairwise_disjoint(const SppInstance& spp, const std::vector<std::size_t>& chosen) {
  std::uint64_t used = 0;
  for (std::size_t i : chosen) {
    const std::uint64_t mask = spp.subset_mask(i);
    if ((mask & used) != 0) return false;
    used |= mask;
  }
  return true;
}

}  // namespace macp
