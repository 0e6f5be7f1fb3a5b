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

#include "dsmm/mm.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "dsmm/errors.h"
#include "testing/oracles.h"

namespace dsmm {
namespace {

using ::dsmm::testing::AllPoints;
using ::dsmm::testing::FromLambda;

constexpr Algorithm kAlgorithms[] = {Algorithm::kSubSup, Algorithm::kSupSub,
                                     Algorithm::kModMod};

SolveOptions With(Algorithm a) {
  SolveOptions options;
  options.algorithm = a;
  return options;
}

DsProblem Bowl() {
  OracleFunction f = FromLambda({3, 3}, [](const LatticePoint& x) {
    return double((x[0] - 1) * (x[0] - 1) + (x[1] - 1) * (x[1] - 1));
  });
  return MakeProblem(f, Constant(f.domain(), 0.0));
}

// Independent re-check of the 2n-neighbour condition.
bool IsLocalMin(const OracleFunction& v, const LatticePoint& x,
                std::optional<int> budget) {
  int total = 0;
  for (int xi : x) total += xi;
  for (int i = 0; i < v.domain().n(); ++i) {
    for (int d : {-1, 1}) {
      LatticePoint y = x;
      y[i] += d;
      if (y[i] < 0 || y[i] >= v.domain().size(i)) continue;
      if (d > 0 && budget && total + 1 > *budget) continue;
      if (v(y) < v(x) - 1e-12) return false;
    }
  }
  return true;
}

TEST(AcceptStepTest, Examples) {
  EXPECT_TRUE(AcceptStep(-2.0, -2.3, 0.1));
  EXPECT_FALSE(AcceptStep(-2.0, -2.1, 0.1));
  EXPECT_FALSE(AcceptStep(1.0, 1.0, 0.0));
  EXPECT_TRUE(AcceptStep(1.0, 0.5, 0.0));
  EXPECT_TRUE(AcceptStep(2.0, 1.8, 0.1));
  EXPECT_FALSE(AcceptStep(2.0, 1.85, 0.1));
  EXPECT_TRUE(AcceptStep(0.0, -1e-3, 0.1));
}

TEST(CertifyLocalMinimumTest, Examples) {
  const DsProblem p = Bowl();
  const LocalMinCertificate at_center = CertifyLocalMinimum(p, std::vector<int>{1, 1});
  EXPECT_TRUE(at_center.passed);
  EXPECT_EQ(at_center.neighbors.size(), 4u);
  EXPECT_FALSE(at_center.chain_family.empty());

  const LocalMinCertificate at_corner = CertifyLocalMinimum(p, std::vector<int>{0, 0});
  EXPECT_FALSE(at_corner.passed);
  ASSERT_TRUE(at_corner.descending.has_value());
  EXPECT_EQ(at_corner.descending->coordinate, 0);
  EXPECT_EQ(at_corner.descending->direction, 1);
  EXPECT_DOUBLE_EQ(at_corner.descending->v, 1.0);

  const LatticeDomain single({2});
  const DsProblem flat = MakeProblem(Constant(single, 0.0), Constant(single, 0.0));
  EXPECT_TRUE(CertifyLocalMinimum(flat, std::vector<int>{0}).passed);
}

TEST(SolveTest, ToyProblemReachesGlobalMinimum) {
  for (Algorithm a : kAlgorithms) {
    const SolveReport r = Solve(testing::ToyProblem(), With(a));
    EXPECT_EQ(r.minimizer, (LatticePoint{2, 2})) << AlgorithmName(a);
    EXPECT_DOUBLE_EQ(r.value, -2.0);
    EXPECT_EQ(r.status, SolveStatus::kCertifiedLocalMin);
    ASSERT_TRUE(r.certificate.has_value());
    EXPECT_TRUE(r.certificate->passed);
  }
}

TEST(SolveTest, ModModTakesOneStepOnTheToyProblem) {
  const SolveReport r = ModMod(testing::ToyProblem(), With(Algorithm::kModMod));
  EXPECT_EQ(r.accepted_moves, 1);
  ASSERT_GE(r.iterates.size(), 2u);
  EXPECT_EQ(r.iterates[1].x, (LatticePoint{2, 2}));
  EXPECT_EQ(r.iterates[1].move, "mm");
  EXPECT_EQ(r.lambda, 0.0);
}

TEST(SolveTest, ZeroObjectiveStopsAtStart) {
  const OracleFunction f = testing::ToyProblem().f;
  for (Algorithm a : kAlgorithms) {
    const SolveReport r = Solve(MakeProblem(f, f), With(a));
    EXPECT_EQ(r.minimizer, (LatticePoint{0, 0}));
    EXPECT_EQ(r.accepted_moves, 0);
    EXPECT_EQ(r.status, SolveStatus::kCertifiedLocalMin);
  }
}

TEST(SolveTest, SupSubOnConvexSeparable) {
  const DsProblem p = Bowl();
  const SolveReport r = SupSub(p, With(Algorithm::kSupSub));
  EXPECT_EQ(r.status, SolveStatus::kCertifiedLocalMin);
  EXPECT_EQ(r.minimizer, (LatticePoint{1, 1}));
  EXPECT_DOUBLE_EQ(r.value, 0.0);
}

TEST(SolveTest, CardinalityBudget) {
  DsProblem p = testing::ToyProblem();
  p.budget = 2;
  const SolveReport r = Solve(p, With(Algorithm::kModMod));
  EXPECT_NEAR(r.value, std::sqrt(2.0) - 2.0, 1e-12);
  EXPECT_LE(r.minimizer[0] + r.minimizer[1], 2);
  EXPECT_THROW(Solve(p, With(Algorithm::kSubSup)), ArgumentError);
  EXPECT_THROW(Solve(p, With(Algorithm::kSupSub)), ArgumentError);
}

TEST(SolveTest, IterationBudget) {
  SolveOptions options = With(Algorithm::kModMod);
  options.max_iters = 1;
  const SolveReport r = Solve(testing::ToyProblem(), options);
  EXPECT_EQ(r.status, SolveStatus::kIterBudget);
  EXPECT_DOUBLE_EQ(r.value, -2.0);
  EXPECT_FALSE(r.certificate.has_value());
}

TEST(SolveTest, RejectsBadOptions) {
  SolveOptions options;
  options.max_iters = 0;
  EXPECT_THROW(Solve(testing::ToyProblem(), options), ArgumentError);
  options = SolveOptions();
  options.epsilon = -0.1;
  EXPECT_THROW(Solve(testing::ToyProblem(), options), ArgumentError);
  options = SolveOptions();
  options.start = LatticePoint{3, 0};
  EXPECT_THROW(Solve(testing::ToyProblem(), options), DomainError);
}

TEST(SolveTest, RandomizedChainsAreReproducible) {
  testing::Rng rng(3);
  const DsProblem p = MakeProblem(testing::RandomSubmodular({3, 3, 3}, rng),
                                  testing::RandomSubmodular({3, 3, 3}, rng));
  SolveOptions options = With(Algorithm::kSubSup);
  options.chain = ChainMode::Randomized(42);
  const SolveReport a = Solve(p, options);
  const SolveReport b = Solve(p, options);
  EXPECT_EQ(a.minimizer, b.minimizer);
  EXPECT_EQ(a.iterates.size(), b.iterates.size());
}

TEST(PredictedIterationBoundTest, Examples) {
  const OracleFunction f = testing::ToyProblem().f;
  EXPECT_EQ(PredictedIterationBound(MakeProblem(f, f), 0.1, 0.0).bound, 0.0);

  SolveOptions options = With(Algorithm::kModMod);
  options.epsilon = 0.1;
  const SolveReport r = Solve(testing::ToyProblem(), options);
  ASSERT_TRUE(r.predicted_bound.has_value());
  EXPECT_TRUE(std::isfinite(r.predicted_bound->bound));
  EXPECT_LE(r.accepted_moves, r.predicted_bound->bound + 1.0);
  EXPECT_THROW(PredictedIterationBound(testing::ToyProblem(), 0.0, -1.0),
               ArgumentError);
}

TEST(PredictedIterationBoundTest, InvariantUnderScaling) {
  const DsProblem p = testing::ToyProblem();
  const DsProblem scaled = MakeProblem(Scaled(p.f, 10.0), Scaled(p.g, 10.0));
  const IterationBound a = PredictedIterationBound(p, 0.1, -2.0);
  const IterationBound b = PredictedIterationBound(scaled, 0.1, -20.0);
  EXPECT_NEAR(a.bound, b.bound, 1e-9);
  EXPECT_NEAR(b.big_m, 10.0 * a.big_m, 1e-9);
}

// Descent, certification, trace consistency and oracle gaps on random
// instances for every algorithm and bound policy.
TEST(SolvePropertyTest, RandomInstances) {
  testing::Rng rng(100);
  for (int trial = 0; trial < 40; ++trial) {
    const std::vector<int> sizes{3, 4, 3};
    const DsProblem p = MakeProblem(
        trial % 2 ? testing::RandomSubmodular(sizes, rng) : testing::RandomDr(sizes, rng),
        testing::RandomSubmodular(sizes, rng));
    const OracleFunction v = p.V();
    const double truth = testing::ReferenceMinimum(v).value;
    for (Algorithm a : kAlgorithms) {
      for (UpperBoundPolicy ub : {UpperBoundPolicy::kTryBoth, UpperBoundPolicy::kGrow1,
                                  UpperBoundPolicy::kGrow2}) {
        SolveOptions options = With(a);
        options.ub_policy = ub;
        options.chain = trial % 3 ? ChainMode::Canonical() : ChainMode::Randomized(trial);
        const SolveReport r = Solve(p, options);
        double previous = r.iterates.front().v;
        for (const IterateRecord& it : r.iterates) {
          EXPECT_NEAR(it.v, v(it.x), 1e-12);
          if (!it.accepted) continue;
          EXPECT_LE(it.v, previous + 1e-12);
          previous = it.v;
        }
        EXPECT_EQ(r.iterates.back().x, r.minimizer);
        EXPECT_GE(r.value - truth, -1e-9);
        if (r.status == SolveStatus::kCertifiedLocalMin) {
          EXPECT_TRUE(IsLocalMin(v, r.minimizer, p.budget));
        }
      }
    }
  }
}

TEST(SolvePropertyTest, BudgetIsRespected) {
  testing::Rng rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    DsProblem p = MakeProblem(testing::RandomSubmodular({4, 4}, rng),
                              testing::RandomSubmodular({4, 4}, rng));
    p.budget = trial % 5;
    const SolveReport r = Solve(p, With(Algorithm::kModMod));
    for (const IterateRecord& it : r.iterates) {
      EXPECT_LE(it.x[0] + it.x[1], *p.budget);
    }
    EXPECT_GE(r.value - testing::ReferenceMinimum(p.V(), *p.budget).value, -1e-9);
    if (r.status == SolveStatus::kCertifiedLocalMin) {
      EXPECT_TRUE(IsLocalMin(p.V(), r.minimizer, p.budget));
    }
  }
}

TEST(EnumNamesTest, RoundTrip) {
  for (Algorithm a : kAlgorithms) EXPECT_EQ(ParseAlgorithm(AlgorithmName(a)), a);
  for (UpperBoundPolicy u : {UpperBoundPolicy::kTryBoth, UpperBoundPolicy::kGrow1,
                             UpperBoundPolicy::kGrow2}) {
    EXPECT_EQ(ParsePolicy(PolicyName(u)), u);
  }
  EXPECT_EQ(StatusName(SolveStatus::kCertifiedLocalMin), "certified_local_min");
  EXPECT_THROW(ParseAlgorithm("dca"), ArgumentError);
}

}  // namespace
}  // namespace dsmm
