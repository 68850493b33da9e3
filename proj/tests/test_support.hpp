#pragma once

// Fixtures, random generators and test-only oracles shared by the suites.
// The oracles here recompute quantities straight from the demand rates and
// do not call into the library's probability or cost code.

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "macp/model.hpp"
#include "macp/random.hpp"

namespace macp::testing {

// Two SCBSs, three files, one slot per cache, c_B + c_W = 1, c_n = 0, d = 1.
inline Instance motivating_instance() {
  Matrix<double> demand = Matrix<double>::from_rows({
      {0.0, 0.0, 0.0},    // n0
      {0.51, 0.49, 0.0},  // n1
      {0.51, 0.0, 0.49},  // n2
  });
  return Instance({1, 1}, 0.5, 0.5, {0.0, 0.0}, std::move(demand), 1.0);
}

// i2 -> n1, i3 -> n2
inline CachingPolicy motivating_optimal() {
  return CachingPolicy::from_rows({{0, 1, 0}, {0, 0, 1}});
}

// i1 -> n1 and n2
inline CachingPolicy motivating_popular() {
  return CachingPolicy::from_rows({{1, 0, 0}, {1, 0, 0}});
}

struct RandomInstanceSpec {
  std::size_t max_scbs = 8;
  std::size_t max_files = 6;
  std::size_t max_cache = 3;
  double max_rate = 2.0;
  double max_deadline = 2.0;
  bool free_scbs = false;        // c_n = 0
  bool bounded_scbs_sum = false; // sum_n c_n <= c_B + c_W
  bool mbs_demand = true;        // random lambda_0 row
};

inline std::size_t pick(SplitMix64& gen, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(gen() % (hi - lo + 1));
}

inline Instance random_instance(SplitMix64& gen, const RandomInstanceSpec& spec = {}) {
  const std::size_t n = pick(gen, 1, spec.max_scbs);
  const std::size_t files = pick(gen, 1, spec.max_files);
  std::vector<std::size_t> cache(n);
  for (auto& c : cache) c = pick(gen, 0, spec.max_cache);
  const double cb = uniform_real(gen, 0.0, 2.0);
  const double cw = uniform_real(gen, 0.1, 2.0);
  std::vector<double> cn(n);
  for (auto& c : cn) {
    if (spec.free_scbs) {
      c = 0.0;
    } else if (spec.bounded_scbs_sum) {
      c = uniform_real(gen, 0.0, std::min(cw, (cb + cw) / static_cast<double>(n)));
    } else {
      c = uniform_real(gen, 0.0, cw);
    }
  }
  Matrix<double> demand(n + 1, files);
  for (std::size_t a = 0; a <= n; ++a) {
    for (std::size_t i = 0; i < files; ++i) {
      if (a == 0 && !spec.mbs_demand) continue;
      // Sprinkle exact zeros so zero-probability areas get exercised.
      demand(a, i) = gen() % 5 == 0 ? 0.0 : uniform_real(gen, 0.0, spec.max_rate);
    }
  }
  const double d = uniform_real(gen, 0.1, spec.max_deadline);
  return Instance(std::move(cache), cb, cw, std::move(cn), std::move(demand), d);
}

inline CachingPolicy random_policy(SplitMix64& gen, const Instance& instance) {
  CachingPolicy p = CachingPolicy::empty_for(instance);
  for (std::size_t s = 0; s < instance.num_scbs(); ++s) {
    const std::size_t want = pick(gen, 0, instance.cache_size(s));
    std::size_t placed = 0;
    for (std::size_t tries = 0; placed < want && tries < 64; ++tries) {
      const std::size_t i = pick(gen, 0, instance.num_files() - 1);
      if (!p.cached(s, i)) {
        p.place(s, i);
        ++placed;
      }
    }
  }
  return p;
}

// 1 - exp(-lambda d) recomputed from the raw rate.
inline double oracle_p(const Instance& instance, std::size_t area, std::size_t file) {
  return 1.0 - std::exp(-instance.rate(area, file) * instance.deadline());
}

// Probability that at least one area requests `file`.
inline double oracle_any_request(const Instance& instance, std::size_t file) {
  double none = 1.0;
  for (std::size_t a = 0; a < instance.num_areas(); ++a) none *= 1.0 - oracle_p(instance, a, file);
  return 1.0 - none;
}

// Enumerates all feasible policies by brute force over bitmasks and calls
// `visit` on each. For tiny instances only.
template <typename Visit>
void oracle_for_each_policy(const Instance& instance, Visit&& visit) {
  const std::size_t n = instance.num_scbs();
  const std::size_t files = instance.num_files();
  const std::uint64_t row_space = std::uint64_t{1} << files;
  std::vector<std::uint64_t> rows(n, 0);
  for (;;) {
    bool ok = true;
    for (std::size_t s = 0; s < n && ok; ++s) {
      ok = static_cast<std::size_t>(std::popcount(rows[s])) <= instance.cache_size(s);
    }
    if (ok) {
      CachingPolicy p = CachingPolicy::empty_for(instance);
      for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t i = 0; i < files; ++i) {
          if ((rows[s] >> i) & 1U) p.place(s, i);
        }
      }
      visit(p);
    }
    std::size_t s = 0;
    while (s < n && ++rows[s] == row_space) rows[s++] = 0;
    if (s == n) return;
  }
}

}  // namespace macp::testing
