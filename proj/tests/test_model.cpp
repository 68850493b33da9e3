#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>

#include "macp/model.hpp"
#include "test_support.hpp"

namespace macp {
namespace {

using testing::motivating_instance;
using testing::random_instance;
using testing::random_policy;

TEST(RequestProbability, MotivatingExampleValues) {
  EXPECT_NEAR(request_probability(0.51, 1.0), 0.3995, 5e-5);
  EXPECT_NEAR(request_probability(0.49, 1.0), 0.3874, 5e-5);
  EXPECT_EQ(request_probability(0.0, 10.0), 0.0);
}

TEST(RequestProbability, RejectsBadArguments) {
  EXPECT_THROW(request_probability(-0.1, 1.0), std::invalid_argument);
  EXPECT_THROW(request_probability(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(request_probability(1.0, -2.0), std::invalid_argument);
  EXPECT_THROW(request_probability(NAN, 1.0), std::invalid_argument);
}

TEST(RequestProbability, MonotoneInRateAndDeadline) {
  SplitMix64 gen(7);
  for (int t = 0; t < 1000; ++t) {
    const double r1 = uniform_real(gen, 0.0, 5.0);
    const double r2 = r1 + uniform_real(gen, 0.0, 5.0);
    const double d1 = uniform_real(gen, 0.01, 5.0);
    const double d2 = d1 + uniform_real(gen, 0.0, 5.0);
    EXPECT_LE(request_probability(r1, d1), request_probability(r2, d1));
    EXPECT_LE(request_probability(r1, d1), request_probability(r1, d2));
    const double p = request_probability(r1, d1);
    EXPECT_GE(p, 0.0);
    EXPECT_LT(p, 1.0);
  }
}

TEST(SubsetProbability, ZeroDemandMakesEmptySubsetCertain) {
  Instance inst({1}, 1.0, 1.0, {0.0}, Matrix<double>(2, 2, 0.0), 3.0);
  EXPECT_EQ(subset_probability(inst, AreaSubset{}, 0), 1.0);
  EXPECT_EQ(subset_probability(inst, AreaSubset::of({1}), 1), 0.0);
}

TEST(SubsetProbability, MotivatingBothScbsRequestFirstFile) {
  const Instance inst = motivating_instance();
  const double p = subset_probability(inst, AreaSubset::of({1, 2}), 0);
  const double p1 = 1.0 - std::exp(-0.51);
  EXPECT_NEAR(p, p1 * p1, 1e-15);
  EXPECT_NEAR(p, 0.1596, 5e-5);
}

TEST(SubsetProbability, MatchesIndependentProduct) {
  SplitMix64 gen(11);
  for (int t = 0; t < 50; ++t) {
    const Instance inst = random_instance(gen, {.max_scbs = 5, .max_files = 3});
    const std::uint64_t subsets = std::uint64_t{1} << inst.num_areas();
    for (std::size_t i = 0; i < inst.num_files(); ++i) {
      for (std::uint64_t m = 0; m < subsets; ++m) {
        double expected = 1.0;
        for (std::size_t a = 0; a < inst.num_areas(); ++a) {
          const double p = testing::oracle_p(inst, a, i);
          expected *= ((m >> a) & 1U) ? p : 1.0 - p;
        }
        EXPECT_NEAR(subset_probability(inst, AreaSubset(m), i), expected, 1e-14);
      }
    }
  }
}

TEST(SubsetProbability, SumsToOneOverAllSubsets) {
  SplitMix64 gen(12);
  for (int t = 0; t < 20; ++t) {
    const Instance inst = random_instance(gen, {.max_scbs = 11, .max_files = 2});
    const std::uint64_t subsets = std::uint64_t{1} << inst.num_areas();
    for (std::size_t i = 0; i < inst.num_files(); ++i) {
      double total = 0.0;
      for (std::uint64_t m = 0; m < subsets; ++m) total += subset_probability(inst, AreaSubset(m), i);
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(SubsetProbability, RejectsOutOfRange) {
  const Instance inst = motivating_instance();
  EXPECT_THROW(subset_probability(inst, AreaSubset::of({1}), 3), std::invalid_argument);
  EXPECT_THROW(subset_probability(inst, AreaSubset::of({3}), 0), std::invalid_argument);
}

TEST(MbsTriggered, Examples) {
  const auto cached_at_first = CachingPolicy::from_rows({{1}, {0}});
  EXPECT_TRUE(mbs_triggered(cached_at_first, AreaSubset::of({kMbsOnlyArea}), 0));
  EXPECT_FALSE(mbs_triggered(cached_at_first, AreaSubset::of({1}), 0));
  EXPECT_TRUE(mbs_triggered(cached_at_first, AreaSubset::of({1, 2}), 0));
  const auto everywhere = CachingPolicy::from_rows({{1}, {1}});
  EXPECT_FALSE(mbs_triggered(everywhere, AreaSubset::of({1, 2}), 0));
  EXPECT_TRUE(mbs_triggered(everywhere, AreaSubset::of({0, 1, 2}), 0));
}

TEST(MbsTriggered, EmptySubsetIsAnError) {
  const auto p = CachingPolicy::from_rows({{1}});
  EXPECT_THROW(mbs_triggered(p, AreaSubset{}, 0), std::invalid_argument);
}

TEST(MbsTriggered, CharacterizationAndPolicyMonotonicity) {
  SplitMix64 gen(13);
  for (int t = 0; t < 200; ++t) {
    const Instance inst = random_instance(gen, {.max_scbs = 5, .max_files = 3});
    const CachingPolicy p = random_policy(gen, inst);
    const std::uint64_t subsets = std::uint64_t{1} << inst.num_areas();
    for (std::size_t i = 0; i < inst.num_files(); ++i) {
      std::uint64_t cached_areas = 0;
      for (std::size_t s = 0; s < inst.num_scbs(); ++s) {
        if (p.cached(s, i)) cached_areas |= std::uint64_t{1} << area_of_scbs(s);
      }
      for (std::uint64_t m = 1; m < subsets; ++m) {
        const bool served_locally = (m & ~cached_areas) == 0;
        EXPECT_EQ(mbs_triggered(p, AreaSubset(m), i), !served_locally);
        // Dropping any cached copy never turns a trigger off.
        for (std::size_t s = 0; s < inst.num_scbs(); ++s) {
          if (!p.cached(s, i)) continue;
          CachingPolicy fewer = p;
          fewer.remove(s, i);
          if (mbs_triggered(p, AreaSubset(m), i)) {
            EXPECT_TRUE(mbs_triggered(fewer, AreaSubset(m), i));
          }
        }
      }
    }
  }
}

TEST(Instance, Validation) {
  Matrix<double> demand(3, 2, 1.0);
  EXPECT_NO_THROW(Instance({1, 1}, 1.0, 1.0, {0.5, 1.0}, demand, 1.0));
  // c_n above c_W
  EXPECT_THROW(Instance({1, 1}, 1.0, 1.0, {0.5, 1.5}, demand, 1.0), std::invalid_argument);
  // wrong demand shape
  EXPECT_THROW(Instance({1}, 1.0, 1.0, {0.0}, demand, 1.0), std::invalid_argument);
  EXPECT_THROW(Instance({1, 1}, 1.0, 1.0, {0.0}, demand, 1.0), std::invalid_argument);
  EXPECT_THROW(Instance({1, 1}, 1.0, 1.0, {0.0, 0.0}, demand, 0.0), std::invalid_argument);
  EXPECT_THROW(Instance({1, 1}, -1.0, 1.0, {0.0, 0.0}, demand, 1.0), std::invalid_argument);
  Matrix<double> negative = demand;
  negative(1, 1) = -0.5;
  EXPECT_THROW(Instance({1, 1}, 1.0, 1.0, {0.0, 0.0}, negative, 1.0), std::invalid_argument);
  EXPECT_THROW(Instance({}, 1.0, 1.0, {}, Matrix<double>(1, 2, 0.0), 1.0), std::invalid_argument);
}

TEST(Instance, ClampsCacheToCatalog) {
  const Instance inst({7, 1}, 1.0, 1.0, {0.0, 0.0}, Matrix<double>(3, 2, 1.0), 1.0);
  EXPECT_EQ(inst.cache_size(0), 2u);
  EXPECT_EQ(inst.cache_size(1), 1u);
}

TEST(CachingPolicy, FeasibilityAndOrdering) {
  const Instance inst = motivating_instance();
  EXPECT_TRUE(testing::motivating_optimal().feasible_for(inst));
  const auto two = CachingPolicy::from_rows({{1, 1, 0}, {0, 0, 0}});
  EXPECT_FALSE(two.feasible_for(inst));
  EXPECT_THROW(two.require_feasible(inst), std::invalid_argument);
  EXPECT_FALSE(CachingPolicy(2, 2).feasible_for(inst));
  EXPECT_THROW(CachingPolicy::from_rows({{2}}), std::invalid_argument);
  EXPECT_LT(CachingPolicy::from_rows({{0, 1}}), CachingPolicy::from_rows({{1, 0}}));
}

}  // namespace
}  // namespace macp
