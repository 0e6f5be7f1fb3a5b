// Copyright 2026 The dsmm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dsmm/solvers.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "dsmm/errors.h"
#include "testing/oracles.h"

namespace dsmm {
namespace {

using ::dsmm::testing::AllPoints;
using ::dsmm::testing::FromLambda;

const SeparableFunction kExample(0.0, {{2, -3}, {-1, 4}});

SeparableFunction RandomSeparable(const std::vector<int>& sizes,
                                  testing::Rng& rng) {
  std::uniform_int_distribution<int> step(-3, 3);
  std::vector<std::vector<double>> tables;
  for (int k : sizes) {
    std::vector<double> row;
    for (int l = 1; l < k; ++l) row.push_back(step(rng));
    tables.push_back(row);
  }
  return SeparableFunction(1.0, tables);
}

TEST(MinimizeSeparableTest, Examples) {
  const LatticeDomain d({3, 3});
  const PointValue r = MinimizeSeparable(kExample, d);
  EXPECT_EQ(r.point, (LatticePoint{2, 1}));
  EXPECT_DOUBLE_EQ(r.value, -2.0);
  EXPECT_EQ(MinimizeSeparable(SeparableFunction(0, {{1, 1}, {2, 3}}), d).point,
            d.Zero());
  EXPECT_EQ(MinimizeSeparable(SeparableFunction(0, {{-1, -1}, {-2, -3}}), d).point,
            d.Top());
  // Ties go to the lowest level.
  EXPECT_EQ(MinimizeSeparable(SeparableFunction(0, {{1, -1}, {0, 0}}), d).point,
            (LatticePoint{0, 0}));
}

TEST(MinimizeSeparableCardinalityTest, Examples) {
  const LatticeDomain d({3, 3});
  const PointValue r = MinimizeSeparableCardinality(kExample, d, 2);
  EXPECT_EQ(r.point, (LatticePoint{0, 1}));
  EXPECT_DOUBLE_EQ(r.value, -1.0);
  EXPECT_EQ(MinimizeSeparableCardinality(kExample, d, 0).point, d.Zero());
  const PointValue free = MinimizeSeparable(kExample, d);
  const PointValue loose = MinimizeSeparableCardinality(kExample, d, 100);
  EXPECT_EQ(loose.point, free.point);
  EXPECT_DOUBLE_EQ(loose.value, free.value);
  EXPECT_THROW(MinimizeSeparableCardinality(kExample, d, -1), ArgumentError);
}

TEST(MinimizeSeparablePropertyTest, MatchesEnumeration) {
  testing::Rng rng(6);
  const std::vector<int> sizes{4, 3, 4};
  const LatticeDomain d(sizes);
  for (int trial = 0; trial < 100; ++trial) {
    const SeparableFunction s = RandomSeparable(sizes, rng);
    const OracleFunction f = s.ToOracle(d);
    const testing::RefMin free = testing::ReferenceMinimum(f);
    const PointValue got = MinimizeSeparable(s, d);
    EXPECT_DOUBLE_EQ(got.value, free.value);
    EXPECT_DOUBLE_EQ(s(got.point), got.value);
    for (int budget = 0; budget <= 5; ++budget) {
      const testing::RefMin ref = testing::ReferenceMinimum(f, budget);
      const PointValue c = MinimizeSeparableCardinality(s, d, budget);
      EXPECT_NEAR(c.value, ref.value, 1e-12);
      EXPECT_EQ(c.point, ref.point) << "budget " << budget;
    }
  }
}

TEST(DoubleGreedyTest, Examples) {
  const OracleFunction sum =
      FromLambda({3, 3}, [](const LatticePoint& x) { return double(x[0] + x[1]); });
  const PointValue r = MaximizeSubmodularDoubleGreedy(sum);
  EXPECT_EQ(r.point, (LatticePoint{2, 2}));
  EXPECT_DOUBLE_EQ(r.value, 4.0);
  const PointValue c =
      MaximizeSubmodularDoubleGreedy(Constant(LatticeDomain({3, 3}), 2.5));
  EXPECT_EQ(c.point, (LatticePoint{0, 0}));
  EXPECT_DOUBLE_EQ(c.value, 2.5);
}

TEST(DoubleGreedyPropertyTest, OneThirdOfTheMaximum) {
  testing::Rng rng(60);
  for (int trial = 0; trial < 100; ++trial) {
    const OracleFunction g = testing::RandomNonnegativeSubmodular({4, 4, 4}, rng);
    const PointValue r = MaximizeSubmodularDoubleGreedy(g);
    EXPECT_DOUBLE_EQ(g(r.point), r.value);
    EXPECT_GE(r.value, testing::ReferenceMaximum(g) / 3.0 - 1e-12);
  }
}

TEST(BruteForceMinimizeTest, Examples) {
  const OracleFunction bowl = FromLambda({3, 3}, [](const LatticePoint& x) {
    return double((x[0] - 1) * (x[0] - 1) + (x[1] - 1) * (x[1] - 1));
  });
  const PointValue r = BruteForceMinimize(bowl);
  EXPECT_EQ(r.point, (LatticePoint{1, 1}));
  EXPECT_DOUBLE_EQ(r.value, 0.0);
  EXPECT_EQ(BruteForceMinimize(Constant(LatticeDomain({3, 3}), 1.0)).point,
            (LatticePoint{0, 0}));
  const PointValue toy = BruteForceMinimize(testing::ToyProblem().V());
  EXPECT_EQ(toy.point, (LatticePoint{2, 2}));
  EXPECT_DOUBLE_EQ(toy.value, -2.0);
}

TEST(BruteForceMinimizeTest, RespectsCap) {
  const std::uint64_t saved = BruteForceCap();
  SetBruteForceCap(8);
  EXPECT_THROW(BruteForceMinimize(testing::ToyProblem().V()), CapExceededError);
  SetBruteForceCap(saved);
}

TEST(ProjectNonIncreasingTest, PoolsViolators) {
  const std::vector<double> a{0.5, 0.8};
  const std::vector<double> pa = ProjectNonIncreasing(a);
  EXPECT_NEAR(pa[0], 0.65, 1e-12);
  EXPECT_NEAR(pa[1], 0.65, 1e-12);
  const std::vector<double> b{1.4, 0.3, 0.5, -0.2};
  const std::vector<double> pb = ProjectNonIncreasing(b);
  EXPECT_EQ(pb[0], 1.0);
  EXPECT_NEAR(pb[1], 0.4, 1e-12);
  EXPECT_NEAR(pb[2], 0.4, 1e-12);
  EXPECT_EQ(pb[3], 0.0);
}

TEST(ProjectNonIncreasingPropertyTest, OutputIsFeasibleAndIdempotent) {
  testing::Rng rng(7);
  std::uniform_real_distribution<double> value(-0.5, 1.5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(1 + trial % 6);
    for (double& x : v) x = value(rng);
    const std::vector<double> p = ProjectNonIncreasing(v);
    for (std::size_t i = 0; i < p.size(); ++i) {
      EXPECT_GE(p[i], 0.0);
      EXPECT_LE(p[i], 1.0);
      if (i > 0) EXPECT_LE(p[i], p[i - 1] + 1e-15);
    }
    const std::vector<double> again = ProjectNonIncreasing(p);
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(again[i], p[i], 1e-12);
  }
}

TEST(RoundByThresholdsPropertyTest, NeverAboveTheExtension) {
  testing::Rng rng(13);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const OracleFunction f = testing::RandomTable({3, 4}, rng);
    RhoProfile rho;
    for (int k : {3, 4}) {
      std::vector<double> row(k - 1);
      for (double& r : row) r = unit(rng);
      std::sort(row.rbegin(), row.rend());
      rho.values.push_back(row);
    }
    const PointValue r = RoundByThresholds(f, rho);
    EXPECT_LE(r.value, GreedyExtension(f, rho).value + 1e-12);
  }
}

TEST(MinimizeSubmodularTest, NegProductBothMethods) {
  const OracleFunction f =
      FromLambda({3, 3}, [](const LatticePoint& x) { return -x[0] * x[1] * 1.0; });
  for (SfmMethod m : {SfmMethod::kBruteForce, SfmMethod::kSubgradient}) {
    SfmOptions options;
    options.method = m;
    const SfmResult r = MinimizeSubmodular(f, options);
    EXPECT_EQ(r.minimizer, (LatticePoint{2, 2})) << SfmMethodName(m);
    EXPECT_DOUBLE_EQ(r.value, -4.0);
  }
}

TEST(MinimizeSubmodularTest, SeparableSubgradientMatchesClosedForm) {
  testing::Rng rng(14);
  const LatticeDomain d({4, 3});
  SfmOptions options;
  options.method = SfmMethod::kSubgradient;
  for (int trial = 0; trial < 30; ++trial) {
    const SeparableFunction s = RandomSeparable(d.sizes(), rng);
    EXPECT_DOUBLE_EQ(MinimizeSubmodular(s.ToOracle(d), options).value,
                     MinimizeSeparable(s, d).value);
  }
}

TEST(MinimizeSubmodularPropertyTest, SubgradientOnTwoCoordinates) {
  testing::Rng rng(70);
  std::uniform_int_distribution<int> levels(2, 4);
  SfmOptions options;
  options.method = SfmMethod::kSubgradient;
  options.iterations = 500;
  int exact = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<int> sizes{levels(rng), levels(rng)};
    const OracleFunction f = testing::RandomSubmodular(sizes, rng);
    const double truth = testing::ReferenceMinimum(f).value;
    const SfmResult r = MinimizeSubmodular(f, options);
    EXPECT_GE(r.value, truth - 1e-9);
    EXPECT_DOUBLE_EQ(f(r.minimizer), r.value);
    EXPECT_GE(r.rounding_gap, -1e-9);
    if (r.value <= truth + 1e-9) ++exact;
  }
  EXPECT_GE(exact, 95);
}

TEST(SfmMethodTest, NamesRoundTrip) {
  for (SfmMethod m : {SfmMethod::kAuto, SfmMethod::kBruteForce, SfmMethod::kSubgradient}) {
    EXPECT_EQ(ParseSfmMethod(SfmMethodName(m)), m);
  }
  EXPECT_THROW(ParseSfmMethod("fast"), ArgumentError);
}

}  // namespace
}  // namespace dsmm
