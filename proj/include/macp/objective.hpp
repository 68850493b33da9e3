#pragma once

// Expected per-period servicing cost of a caching policy.
//
// Multicast accounting: for every file and every non-empty set r of areas
// that request it within a period, one MBS multicast (cost c_B + c_W) is
// charged if the MBS is triggered; otherwise each requesting SCBS n in r
// multicasts the file from its cache at cost c_n.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "macp/error.hpp"
#include "macp/model.hpp"

namespace macp {

struct CostBreakdown {
  double total = 0.0;
  std::vector<double> per_file;
  double mbs_component = 0.0;   // (c_B + c_W) * P(MBS triggered) terms
  double scbs_component = 0.0;  // sum of c_n over locally served requesters
};

// Expected cost of a single file, split by who transmits.
struct FileCost {
  double mbs = 0.0;
  double scbs = 0.0;
  double total() const noexcept { return mbs + scbs; }
};

namespace detail {

inline CostBreakdown assemble(const std::vector<FileCost>& files) {
  CostBreakdown out;
  out.per_file.reserve(files.size());
  for (const FileCost& f : files) {
    out.per_file.push_back(f.total());
    out.total += f.total();
    out.mbs_component += f.mbs;
    out.scbs_component += f.scbs;
  }
  return out;
}

// Closed-form cost of one file, with an optional extra placement at
// `extra_scbs` treated as cached.
inline FileCost closed_form_file(const Instance& instance, const CachingPolicy& policy,
                                 std::size_t file,
                                 std::size_t extra_scbs = static_cast<std::size_t>(-1)) {
  // q_all: no request anywhere. q_out: no request in any area that cannot be
  // served locally (uncached SCBSs and the MBS-only area). q_in: no request
  // in a caching SCBS. local: sum over caching SCBSs of c_n * p_n.
  const double q0 = 1.0 - instance.request_probability(kMbsOnlyArea, file);
  double q_out = q0;
  double q_in = 1.0;
  double local = 0.0;
  for (std::size_t s = 0; s < instance.num_scbs(); ++s) {
    const double p = instance.request_probability(area_of_scbs(s), file);
    if (s == extra_scbs || policy.cached(s, file)) {
      q_in *= 1.0 - p;
      local += instance.cost_scbs_tx(s) * p;
    } else {
      q_out *= 1.0 - p;
    }
  }
  // P(trigger) = P(any request) - P(requests only in caching SCBSs)
  //            = (1 - q_out*q_in) - q_out*(1 - q_in) = 1 - q_out.
  const double p_trigger = 1.0 - q_out;
  FileCost fc;
  fc.mbs = instance.mbs_cost() * p_trigger;
  fc.scbs = q_out * local;
  return fc;
}

}  // namespace detail

struct EnumerationLimits {
  std::size_t max_scbs = 16;
};

/// Literal evaluation of the objective: sums over every non-empty subset of
/// the N + 1 areas. Work is Θ(I · 2^(N+1)).
inline CostBreakdown cost_bruteforce(const Instance& instance, const CachingPolicy& policy,
                                     EnumerationLimits limits = {}) {
  policy.require_feasible(instance);
  if (instance.num_scbs() > limits.max_scbs) {
    throw CapacityError("brute-force enumeration is capped at " +
                            std::to_string(limits.max_scbs) +
                            " SCBSs; use cost_closed_form",
                        std::uint64_t{1} << instance.num_areas());
  }
  const std::uint64_t subsets = std::uint64_t{1} << instance.num_areas();
  std::vector<FileCost> files(instance.num_files());
  for (std::size_t i = 0; i < instance.num_files(); ++i) {
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
      const AreaSubset r(mask);
      const double p = subset_probability(instance, r, i);
      if (mbs_triggered(policy, r, i)) {
        files[i].mbs += p * instance.mbs_cost();
      } else {
        double local = 0.0;
        for (AreaId a : r.areas()) local += instance.cost_scbs_tx(a - 1);
        files[i].scbs += p * local;
      }
    }
  }
  return detail::assemble(files);
}

/// Linear-time factorization of the brute-force sum under independent
/// per-area demand. O(N · I).
inline CostBreakdown cost_closed_form(const Instance& instance, const CachingPolicy& policy) {
  policy.require_feasible(instance);
  std::vector<FileCost> files;
  files.reserve(instance.num_files());
  for (std::size_t i = 0; i < instance.num_files(); ++i) {
    files.push_back(detail::closed_form_file(instance, policy, i));
  }
  return detail::assemble(files);
}

/// Closed-form cost after additionally caching `file` at `scbs`.
///
/// `snapshot` must be cost_closed_form(instance, policy); only the term of
/// `file` is recomputed.
inline double marginal_cost(const Instance& instance, const CachingPolicy& policy,
                            const CostBreakdown& snapshot, std::size_t scbs,
                            std::size_t file) {
  if (scbs >= instance.num_scbs() || file >= instance.num_files()) {
    throw std::invalid_argument("placement index out of range");
  }
  if (snapshot.per_file.size() != instance.num_files()) {
    throw std::invalid_argument("snapshot does not match the instance");
  }
  if (policy.cached(scbs, file)) {
    throw std::invalid_argument("file is already cached at this SCBS");
  }
  if (policy.fill(scbs) >= instance.cache_size(scbs)) {
    throw std::invalid_argument("cache of this SCBS is full");
  }
  const double updated = detail::closed_form_file(instance, policy, file, scbs).total();
  return snapshot.total + (updated - snapshot.per_file[file]);
}

inline double marginal_cost(const Instance& instance, const CachingPolicy& policy,
                            std::size_t scbs, std::size_t file) {
  return marginal_cost(instance, policy, cost_closed_form(instance, policy), scbs, file);
}

/// Expected per-period cost when every request is a separate unicast:
/// expected request count lambda*d times the per-request delivery price.
inline CostBreakdown cost_unicast(const Instance& instance, const CachingPolicy& policy) {
  policy.require_feasible(instance);
  const double d = instance.deadline();
  std::vector<FileCost> files(instance.num_files());
  for (std::size_t i = 0; i < instance.num_files(); ++i) {
    FileCost& fc = files[i];
    fc.mbs += instance.rate(kMbsOnlyArea, i) * d * instance.mbs_cost();
    for (std::size_t s = 0; s < instance.num_scbs(); ++s) {
      const double expected = instance.rate(area_of_scbs(s), i) * d;
      if (policy.cached(s, i)) {
        fc.scbs += expected * instance.cost_scbs_tx(s);
      } else {
        fc.mbs += expected * instance.mbs_cost();
      }
    }
  }
  return detail::assemble(files);
}

}  // namespace macp
