#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "macp/objective.hpp"
#include "macp/random.hpp"
#include "macp/simulator.hpp"
#include "test_support.hpp"

namespace macp {
namespace {

using testing::random_instance;
using testing::random_policy;

// Exact Poisson pmf by recurrence, for the sampler checks.
std::vector<double> poisson_pmf(double mean, std::size_t kmax) {
  std::vector<double> pmf(kmax + 1);
  pmf[0] = std::exp(-mean);
  for (std::size_t k = 1; k <= kmax; ++k) pmf[k] = pmf[k - 1] * mean / static_cast<double>(k);
  return pmf;
}

TEST(PoissonSampler, MomentsMatchAcrossRegimes) {
  for (double mean : {0.05, 0.7, 3.0, 9.99, 10.0, 37.5, 400.0}) {
    SplitMix64 gen(substream_seed(99, static_cast<std::uint64_t>(mean * 1000)));
    const int n = 200'000;
    double sum = 0.0;
    double sq = 0.0;
    for (int t = 0; t < n; ++t) {
      const double k = static_cast<double>(sample_poisson(gen, mean));
      sum += k;
      sq += k * k;
    }
    const double m = sum / n;
    const double var = sq / n - m * m;
    // Standard error of the mean is sqrt(mean / n); allow 5 of them.
    EXPECT_NEAR(m, mean, 5.0 * std::sqrt(mean / n)) << "mean " << mean;
    EXPECT_NEAR(var / mean, 1.0, 0.05) << "mean " << mean;
  }
}

TEST(PoissonSampler, SmallMeanFrequenciesMatchPmf) {
  for (double mean : {0.4, 2.5, 15.0}) {
    SplitMix64 gen(substream_seed(7, static_cast<std::uint64_t>(mean * 10)));
    const int n = 400'000;
    const std::size_t kmax = static_cast<std::size_t>(mean + 8.0 * std::sqrt(mean) + 8.0);
    std::vector<double> counts(kmax + 1, 0.0);
    for (int t = 0; t < n; ++t) {
      const auto k = sample_poisson(gen, mean);
      if (k <= kmax) counts[k] += 1.0;
    }
    const auto pmf = poisson_pmf(mean, kmax);
    for (std::size_t k = 0; k <= kmax; ++k) {
      const double expected = pmf[k] * n;
      if (expected < 50.0) continue;
      EXPECT_NEAR(counts[k], expected, 5.0 * std::sqrt(expected)) << "mean " << mean << " k " << k;
    }
  }
}

TEST(PoissonSampler, RejectsNegativeMean) {
  SplitMix64 gen(1);
  EXPECT_THROW(sample_poisson(gen, -1.0), std::invalid_argument);
  EXPECT_EQ(sample_poisson(gen, 0.0), 0u);
}

TEST(Simulator, ZeroDemandIsFree) {
  const Instance inst({1, 1}, 1.0, 1.0, {0.0, 0.0}, Matrix<double>(3, 2, 0.0), 1.0);
  for (auto mode : {ServiceMode::kMulticast, ServiceMode::kUnicast}) {
    const SimReport r = simulate(inst, CachingPolicy::empty_for(inst), {500, mode, 3});
    EXPECT_EQ(r.mean_cost_per_period, 0.0);
    EXPECT_EQ(r.std_error, 0.0);
    EXPECT_EQ(r.mbs_transmissions + r.scbs_transmissions + r.unicast_transmissions, 0u);
    EXPECT_EQ(r.requests, 0u);
  }
}

TEST(Simulator, SeedDeterminism) {
  SplitMix64 gen(51);
  const Instance inst = random_instance(gen);
  const CachingPolicy p = random_policy(gen, inst);
  const SimConfig cfg{2000, ServiceMode::kMulticast, 1234};
  std::vector<PeriodRecord> ta, tb;
  const SimReport a = simulate(inst, p, cfg, ta);
  const SimReport b = simulate(inst, p, cfg, tb);
  EXPECT_EQ(a.mean_cost_per_period, b.mean_cost_per_period);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_EQ(a.mbs_transmissions, b.mbs_transmissions);
  ASSERT_EQ(ta.size(), tb.size());
  for (std::size_t t = 0; t < ta.size(); ++t) EXPECT_EQ(ta[t].cost, tb[t].cost);
  const SimReport c = simulate(inst, p, {2000, ServiceMode::kMulticast, 1235});
  EXPECT_NE(a.mean_cost_per_period, c.mean_cost_per_period);
}

TEST(Simulator, PeriodsAreIndependentOfRunLength) {
  // Substreams are keyed by period, so a shorter run is a prefix of a longer one.
  SplitMix64 gen(52);
  const Instance inst = random_instance(gen);
  const CachingPolicy p = random_policy(gen, inst);
  std::vector<PeriodRecord> shortrun, longrun;
  simulate(inst, p, {100, ServiceMode::kUnicast, 9}, shortrun);
  simulate(inst, p, {300, ServiceMode::kUnicast, 9}, longrun);
  for (std::size_t t = 0; t < shortrun.size(); ++t) EXPECT_EQ(shortrun[t].cost, longrun[t].cost);
}

TEST(Simulator, CounterInvariants) {
  SplitMix64 gen(53);
  for (int t = 0; t < 10; ++t) {
    const Instance inst = random_instance(gen);
    const CachingPolicy p = random_policy(gen, inst);
    std::vector<PeriodRecord> trace;
    const SimReport m = simulate(inst, p, {500, ServiceMode::kMulticast, 5}, trace);
    for (const auto& r : trace) EXPECT_LE(r.mbs_tx, inst.num_files());
    EXPECT_EQ(m.unicast_transmissions, 0u);
    const SimReport u = simulate(inst, p, {500, ServiceMode::kUnicast, 5});
    EXPECT_EQ(u.unicast_transmissions, u.requests);
    EXPECT_EQ(u.mbs_transmissions + u.scbs_transmissions, 0u);
    // Same seed: both modes see the same request counts.
    EXPECT_EQ(u.requests, m.requests);
    double mean = 0.0;
    for (const auto& r : trace) mean += r.cost;
    EXPECT_NEAR(mean / static_cast<double>(trace.size()), m.mean_cost_per_period, 1e-9);
  }
}

TEST(Simulator, MeanMatchesAnalyticCost) {
  SplitMix64 gen(54);
  for (int t = 0; t < 6; ++t) {
    const Instance inst = random_instance(gen, {.max_scbs = 5, .max_files = 4});
    const CachingPolicy p = random_policy(gen, inst);
    const SimReport m = simulate(inst, p, {20'000, ServiceMode::kMulticast, 100u + t});
    EXPECT_LE(std::abs(m.mean_cost_per_period - cost_closed_form(inst, p).total),
              4.0 * m.std_error);
    const SimReport u = simulate(inst, p, {20'000, ServiceMode::kUnicast, 200u + t});
    EXPECT_LE(std::abs(u.mean_cost_per_period - cost_unicast(inst, p).total), 4.0 * u.std_error);
  }
}

TEST(Simulator, RejectsInfeasiblePolicyAndZeroPeriods) {
  const Instance inst = testing::motivating_instance();
  const auto bad = CachingPolicy::from_rows({{1, 1, 0}, {0, 0, 0}});
  EXPECT_THROW(simulate(inst, bad, {10, ServiceMode::kMulticast, 1}), std::invalid_argument);
  EXPECT_THROW(simulate(inst, CachingPolicy::empty_for(inst), {0, ServiceMode::kMulticast, 1}),
               std::invalid_argument);
  EXPECT_THROW(parse_service_mode("broadcast"), std::invalid_argument);
}

}  // namespace
}  // namespace macp
