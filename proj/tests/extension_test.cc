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

#include "dsmm/extension.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "dsmm/errors.h"
#include "testing/oracles.h"

namespace dsmm {
namespace {

using ::dsmm::testing::AllPoints;
using ::dsmm::testing::FromLambda;

OracleFunction NegProduct() {
  return FromLambda({3, 3},
                    [](const LatticePoint& x) { return -x[0] * x[1] * 1.0; });
}

RhoProfile RandomRho(const std::vector<int>& sizes, testing::Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RhoProfile rho;
  for (int k : sizes) {
    std::vector<double> row(k - 1);
    for (double& r : row) r = unit(rng);
    std::sort(row.rbegin(), row.rend());
    rho.values.push_back(row);
  }
  return rho;
}

// Integral of f over threshold points, from the sorted breakpoints of rho.
double IntegralForm(const OracleFunction& f, const RhoProfile& rho) {
  std::vector<double> cuts{0.0, 1.0};
  for (const auto& row : rho.values) cuts.insert(cuts.end(), row.begin(), row.end());
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double lo = cuts[s], hi = cuts[s + 1];
    if (hi - lo <= 0.0) continue;
    // theta is constant on (lo, hi]; probe at hi.
    LatticePoint x;
    for (const auto& row : rho.values) {
      int level = 0;
      for (double r : row) {
        if (r >= hi) ++level;
      }
      x.push_back(level);
    }
    total += (hi - lo) * f(x);
  }
  return total;
}

TEST(RhoTest, FromPoint) {
  const LatticeDomain d({3, 3});
  const RhoProfile rho = RhoFromPoint(d, std::vector<int>{1, 0});
  EXPECT_EQ(rho.values[0], (std::vector<double>{1, 0}));
  EXPECT_EQ(rho.values[1], (std::vector<double>{0, 0}));
  const RhoProfile top = RhoFromPoint(d, d.Top());
  const RhoProfile zero = RhoFromPoint(d, d.Zero());
  for (double r : top.values[1]) EXPECT_EQ(r, 1.0);
  for (double r : zero.values[0]) EXPECT_EQ(r, 0.0);
}

TEST(RhoTest, ValidateRejectsBadProfiles) {
  const LatticeDomain d({3});
  EXPECT_THROW((RhoProfile{{{0.2, 0.5}}}.Validate(d)), ArgumentError);
  EXPECT_THROW((RhoProfile{{{1.2, 0.5}}}.Validate(d)), ArgumentError);
  EXPECT_THROW((RhoProfile{{{0.5}}}.Validate(d)), ArgumentError);
  EXPECT_NO_THROW((RhoProfile{{{0.5, 0.5}}}.Validate(d)));
}

TEST(ThetaTest, Examples) {
  const std::vector<double> rho{0.8, 0.5};
  EXPECT_EQ(Theta(rho, 0.9), 0);
  EXPECT_EQ(Theta(rho, 0.6), 1);
  EXPECT_EQ(Theta(rho, 0.3), 2);
  const std::vector<double> tie{0.5, 0.5};
  EXPECT_EQ(Theta(tie, 0.5), 2);
  EXPECT_THROW(Theta(rho, 0.0), ArgumentError);
  EXPECT_THROW(Theta(rho, 1.5), ArgumentError);
}

TEST(ThetaTest, IndicatorProfilesRecoverThePoint) {
  const LatticeDomain d({4, 3});
  for (const LatticePoint& y : AllPoints(d.sizes())) {
    const RhoProfile rho = RhoFromPoint(d, y);
    for (double t : {1e-9, 0.3, 1.0}) EXPECT_EQ(ThresholdPoint(rho, t), y);
  }
}

TEST(GreedyExtensionTest, OneDimensionalExample) {
  const OracleFunction f = TableOracle(LatticeDomain({3}), {0, 2, 3});
  const GreedyResult r = GreedyExtension(f, RhoProfile{{{0.8, 0.5}}});
  EXPECT_NEAR(r.value, 2.1, 1e-12);
  EXPECT_EQ(r.weights.tables()[0], (std::vector<double>{2, 1}));
  EXPECT_NEAR(IntegralForm(f, RhoProfile{{{0.8, 0.5}}}), 2.1, 1e-12);
}

TEST(GreedyExtensionTest, NegProductExample) {
  const GreedyResult r =
      GreedyExtension(NegProduct(), RhoProfile{{{0.9, 0.4}, {0.7, 0.2}}});
  EXPECT_NEAR(r.value, -1.5, 1e-12);
  EXPECT_EQ(r.chain.increments(), (std::vector<int>{0, 1, 0, 1}));
  EXPECT_EQ(r.weights.tables()[0], (std::vector<double>{0, -1}));
  EXPECT_EQ(r.weights.tables()[1], (std::vector<double>{-1, -2}));
}

TEST(GreedyExtensionTest, TiesPreferLowerCoordinate) {
  const GreedyResult r =
      GreedyExtension(NegProduct(), RhoProfile{{{0.5, 0.5}, {0.5, 0.5}}});
  EXPECT_EQ(r.chain.increments(), (std::vector<int>{0, 0, 1, 1}));
}

TEST(GreedyExtensionPropertyTest, MatchesIntegralFormAndPoints) {
  testing::Rng rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::vector<int> sizes{4, 3, 3};
    const OracleFunction f = testing::RandomTable(sizes, rng);
    const RhoProfile rho = RandomRho(sizes, rng);
    EXPECT_NEAR(GreedyExtension(f, rho).value, IntegralForm(f, rho), 1e-9);
  }
  const OracleFunction f = testing::RandomTable({3, 4}, rng);
  for (const LatticePoint& y : AllPoints({3, 4})) {
    EXPECT_NEAR(GreedyExtension(f, RhoFromPoint(f.domain(), y)).value, f(y),
                1e-12);
  }
}

TEST(GreedyExtensionPropertyTest, ConvexForSubmodularFunctions) {
  testing::Rng rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const std::vector<int> sizes{3, 3, 3};
    const OracleFunction f = testing::RandomSubmodular(sizes, rng);
    const RhoProfile a = RandomRho(sizes, rng);
    const RhoProfile b = RandomRho(sizes, rng);
    RhoProfile mid = a;
    for (std::size_t i = 0; i < mid.values.size(); ++i) {
      for (std::size_t j = 0; j < mid.values[i].size(); ++j) {
        mid.values[i][j] = 0.5 * (a.values[i][j] + b.values[i][j]);
      }
    }
    EXPECT_LE(GreedyExtension(f, mid).value,
              0.5 * (GreedyExtension(f, a).value + GreedyExtension(f, b).value) +
                  1e-9);
  }
}

TEST(ChainTest, CanonicalChainThroughPoint) {
  const LatticeDomain d({3, 3});
  const Chain c = ChainContaining(d, std::vector<int>{1, 1});
  EXPECT_EQ(c.increments(), (std::vector<int>{0, 1, 0, 1}));
  const std::vector<LatticePoint> expected{{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}};
  EXPECT_EQ(c.Points(), expected);
  EXPECT_TRUE(c.Contains(std::vector<int>{1, 1}));
  EXPECT_FALSE(c.Contains(std::vector<int>{0, 1}));
}

TEST(ChainTest, RejectsMalformedIncrements) {
  const LatticeDomain d({3, 3});
  EXPECT_THROW(Chain(d, {0, 0, 0, 1}), ArgumentError);
  EXPECT_THROW(Chain(d, {0, 1, 0}), ArgumentError);
}

TEST(ChainTest, EveryModeContainsThePoint) {
  const LatticeDomain d({4, 2, 3});
  for (const LatticePoint& y : AllPoints(d.sizes())) {
    EXPECT_TRUE(ChainContaining(d, y).Contains(y));
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const Chain c = ChainContaining(d, y, ChainMode::Randomized(seed));
      EXPECT_TRUE(c.Contains(y));
      EXPECT_EQ(c.PointAt(0), d.Zero());
      EXPECT_EQ(c.PointAt(c.length()), d.Top());
    }
  }
}

TEST(LowerBoundTest, NegProductExample) {
  const OracleFunction f = NegProduct();
  const LatticePoint y{1, 1};
  const SeparableFunction h = LowerBound(f, y, ChainContaining(f.domain(), y));
  EXPECT_EQ(h.tables()[0], (std::vector<double>{0, -1}));
  EXPECT_EQ(h.tables()[1], (std::vector<double>{-1, -2}));
  EXPECT_DOUBLE_EQ(h(y), -1.0);
  EXPECT_DOUBLE_EQ(h(std::vector<int>{0, 1}), -1.0);
  EXPECT_DOUBLE_EQ(h(f.domain().Top()), f(f.domain().Top()));
}

TEST(LowerBoundTest, RequiresChainThroughPoint) {
  const OracleFunction f = NegProduct();
  const Chain c = ChainContaining(f.domain(), std::vector<int>{2, 0});
  EXPECT_THROW(LowerBound(f, std::vector<int>{0, 2}, c), ArgumentError);
}

TEST(LowerBoundTest, SeparableIsReproducedByEveryChain) {
  const LatticeDomain d({3, 4});
  const SeparableFunction s(2.0, {{1, -1}, {3, 0, -2}});
  const OracleFunction f = s.ToOracle(d);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const LatticePoint y{1, 2};
    const SeparableFunction h =
        LowerBound(f, y, ChainContaining(d, y, ChainMode::Randomized(seed)));
    for (const LatticePoint& x : AllPoints(d.sizes())) EXPECT_NEAR(h(x), s(x), 1e-12);
  }
}

TEST(LowerBoundPropertyTest, SandwichOnRandomSubmodular) {
  testing::Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const OracleFunction f = testing::RandomSubmodular({3, 3, 3}, rng);
    for (const LatticePoint& y : AllPoints({3, 3, 3})) {
      const Chain c = ChainContaining(f.domain(), y, ChainMode::Randomized(trial));
      const SeparableFunction h = LowerBound(f, y, c);
      for (const LatticePoint& p : c.Points()) EXPECT_NEAR(h(p), f(p), 1e-9);
      for (const LatticePoint& x : AllPoints({3, 3, 3})) {
        ASSERT_LE(h(x), f(x) + 1e-9);
      }
    }
  }
}

TEST(AdjacentChainFamilyTest, Example) {
  const LatticeDomain d({3, 3});
  const std::vector<Chain> family = AdjacentChainFamily(d, std::vector<int>{1, 1});
  ASSERT_EQ(family.size(), 2u);
  EXPECT_EQ(family[0].increments(), (std::vector<int>{0, 1, 0, 1}));
  EXPECT_EQ(family[1].increments(), (std::vector<int>{1, 0, 1, 0}));
}

TEST(AdjacentChainFamilyTest, CoversEveryAdjacentIncrement) {
  const LatticeDomain d({3, 4, 2});
  for (const LatticePoint& y : AllPoints(d.sizes())) {
    const std::vector<Chain> family = AdjacentChainFamily(d, y);
    const int at = y[0] + y[1] + y[2];
    std::set<int> before, after;
    for (const Chain& c : family) {
      EXPECT_TRUE(c.Contains(y));
      if (at > 0) before.insert(c.increments()[at - 1]);
      if (at < c.length()) after.insert(c.increments()[at]);
    }
    for (int i = 0; i < 3; ++i) {
      if (y[i] > 0) EXPECT_TRUE(before.count(i)) << PointToString(y);
      if (y[i] + 1 < d.size(i)) EXPECT_TRUE(after.count(i)) << PointToString(y);
    }
  }
}

TEST(BaseVertexCheckTest, Examples) {
  const OracleFunction f = NegProduct();
  const GreedyResult r = GreedyExtension(f, RhoProfile{{{0.9, 0.4}, {0.7, 0.2}}});
  EXPECT_TRUE(BaseVertexCheck(f, r.weights).holds);

  const OracleFunction product =
      FromLambda({3, 3}, [](const LatticePoint& x) { return x[0] * x[1] * 1.0; });
  const LatticePoint y{1, 1};
  const SeparableFunction w =
      ChainWeights(product, ChainContaining(product.domain(), y));
  EXPECT_FALSE(BaseVertexCheck(product, w).holds);

  const SeparableFunction s(0.0, {{1, 2}, {-1, 5}});
  EXPECT_TRUE(BaseVertexCheck(s.ToOracle(LatticeDomain({3, 3})), s).holds);
}

}  // namespace
}  // namespace dsmm
