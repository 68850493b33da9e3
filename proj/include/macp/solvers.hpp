#pragma once

// Cache placement solvers: the multicast-aware greedy heuristic, the
// popularity baseline and an exhaustive optimum for tiny instances.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "macp/error.hpp"
#include "macp/model.hpp"
#include "macp/objective.hpp"

namespace macp {

struct TraceStep {
  std::size_t iteration = 0;
  std::size_t scbs = 0;
  std::size_t file = 0;
  double objective = 0.0;  // cost right after this placement
};

struct SolverReport {
  CachingPolicy policy;
  CostBreakdown cost;
  std::vector<TraceStep> trace;
  std::uint64_t evaluations = 0;
};

/// Greedy ascending placement. Starting from empty caches, repeatedly adds
/// the (SCBS, file) pair whose placement yields the lowest objective, until
/// every cache holds min(S_n, I) files. Ties go to the smallest SCBS index,
/// then the smallest file index.
inline SolverReport greedy_macp(const Instance& instance) {
  const std::size_t n_scbs = instance.num_scbs();
  const std::size_t n_files = instance.num_files();

  SolverReport report;
  report.policy = CachingPolicy::empty_for(instance);
  CostBreakdown snapshot = cost_closed_form(instance, report.policy);

  // candidate[s][i]: (s, i) is still in the candidate set D.
  std::vector<std::vector<bool>> candidate(n_scbs, std::vector<bool>(n_files, true));
  std::vector<std::size_t> fill(n_scbs, 0);
  for (std::size_t s = 0; s < n_scbs; ++s) {
    if (instance.cache_size(s) == 0) candidate[s].assign(n_files, false);
  }

  std::size_t iterations = 0;
  for (std::size_t s = 0; s < n_scbs; ++s) iterations += instance.cache_size(s);

  for (std::size_t it = 1; it <= iterations; ++it) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_s = 0;
    std::size_t best_i = 0;
    bool found = false;
    for (std::size_t s = 0; s < n_scbs; ++s) {
      for (std::size_t i = 0; i < n_files; ++i) {
        if (!candidate[s][i]) continue;
        const double value = marginal_cost(instance, report.policy, snapshot, s, i);
        ++report.evaluations;
        if (!found || value < best) {
          best = value;
          best_s = s;
          best_i = i;
          found = true;
        }
      }
    }
    if (!found) break;

    report.policy.place(best_s, best_i);
    candidate[best_s][best_i] = false;
    if (++fill[best_s] == instance.cache_size(best_s)) {
      candidate[best_s].assign(n_files, false);
    }
    snapshot = cost_closed_form(instance, report.policy);
    report.trace.push_back({it, best_s, best_i, snapshot.total});
  }
  report.cost = std::move(snapshot);
  return report;
}

/// Each SCBS caches its S_n locally most requested files (ties to the
/// smaller file index), independently of the others.
inline CachingPolicy popularity_placement(const Instance& instance) {
  CachingPolicy policy = CachingPolicy::empty_for(instance);
  std::vector<std::size_t> order(instance.num_files());
  for (std::size_t s = 0; s < instance.num_scbs(); ++s) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    const AreaId area = area_of_scbs(s);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return instance.rate(area, a) > instance.rate(area, b);
    });
    for (std::size_t k = 0; k < instance.cache_size(s); ++k) policy.place(s, order[k]);
  }
  return policy;
}

struct ExactLimits {
  std::uint64_t max_policies = 10'000'000;
};

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return b > std::numeric_limits<std::uint64_t>::max() - a
             ? std::numeric_limits<std::uint64_t>::max()
             : a + b;
}

// Number of 0/1 rows of length n with at most k ones.
inline std::uint64_t count_rows(std::size_t n, std::size_t k) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(n, j)
  for (std::size_t j = 0; j <= std::min(k, n); ++j) {
    total = saturating_add(total, binom);
    if (j < n) {
      // C(n, j+1) = C(n, j) * (n - j) / (j + 1); exact in 128-bit.
      const unsigned __int128 next =
          static_cast<unsigned __int128>(binom) * (n - j) / (j + 1);
      binom = next > std::numeric_limits<std::uint64_t>::max()
                  ? std::numeric_limits<std::uint64_t>::max()
                  : static_cast<std::uint64_t>(next);
    }
  }
  return total;
}

// All 0/1 rows of length n with at most k ones, in ascending lexicographic
// order (0 < 1, position 0 most significant).
inline std::vector<std::vector<std::uint8_t>> enumerate_rows(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::uint8_t>> out;
  std::vector<std::uint8_t> row(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos,
                                                          std::size_t ones) {
    if (pos == n) {
      out.push_back(row);
      return;
    }
    row[pos] = 0;
    rec(pos + 1, ones);
    if (ones < k) {
      row[pos] = 1;
      rec(pos + 1, ones + 1);
      row[pos] = 0;
    }
  };
  rec(0, 0);
  return out;
}

// Visits every feasible policy (rows with at most capacity[s] ones) in
// ascending lexicographic order of the row-major matrix. The visitor returns
// false to stop early.
template <typename Visitor>
void for_each_policy(std::size_t n_scbs, std::size_t n_files,
                     const std::vector<std::size_t>& capacity, Visitor&& visit) {
  std::vector<std::vector<std::vector<std::uint8_t>>> rows(n_scbs);
  for (std::size_t s = 0; s < n_scbs; ++s) {
    rows[s] = enumerate_rows(n_files, std::min(capacity[s], n_files));
  }
  std::vector<std::size_t> digit(n_scbs, 0);
  CachingPolicy policy(n_scbs, n_files);
  auto load_row = [&](std::size_t s) {
    const auto& r = rows[s][digit[s]];
    for (std::size_t i = 0; i < n_files; ++i) {
      if (r[i] != 0) policy.place(s, i); else policy.remove(s, i);
    }
  };
  for (std::size_t s = 0; s < n_scbs; ++s) load_row(s);
  for (;;) {
    if (!visit(static_cast<const CachingPolicy&>(policy))) return;
    // Odometer: the last row is the least significant digit.
    std::size_t s = n_scbs;
    while (s > 0) {
      --s;
      if (++digit[s] < rows[s].size()) {
        load_row(s);
        break;
      }
      digit[s] = 0;
      load_row(s);
      if (s == 0) return;
    }
    if (n_scbs == 0) return;
  }
}

}  // namespace detail

/// Number of feasible placements: prod over SCBSs of sum_{k <= S_n} C(I, k).
inline std::uint64_t feasible_policy_count(const std::vector<std::size_t>& capacity,
                                           std::size_t n_files) {
  std::uint64_t total = 1;
  for (std::size_t c : capacity) {
    total = detail::saturating_mul(total, detail::count_rows(n_files, c));
  }
  return total;
}

/// Exhaustive minimizer of the closed-form cost. Among policies whose costs
/// agree to within 1e-12 (relative), the lexicographically smallest wins.
inline SolverReport exact_optimal(const Instance& instance, ExactLimits limits = {}) {
  const std::uint64_t space =
      feasible_policy_count(instance.cache_sizes(), instance.num_files());
  if (space > limits.max_policies) {
    throw CapacityError("exact search space has " + std::to_string(space) +
                            " policies, above the cap of " +
                            std::to_string(limits.max_policies),
                        space);
  }
  SolverReport report;
  bool have = false;
  detail::for_each_policy(
      instance.num_scbs(), instance.num_files(), instance.cache_sizes(),
      [&](const CachingPolicy& p) {
        CostBreakdown cost = cost_closed_form(instance, p);
        ++report.evaluations;
        const double tol = 1e-12 * std::max(1.0, std::abs(report.cost.total));
        if (!have || cost.total < report.cost.total - tol) {
          report.policy = p;
          report.cost = std::move(cost);
          have = true;
        }
        return true;
      });
  return report;
}

}  // namespace macp
