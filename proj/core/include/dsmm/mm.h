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

// Majorisation-minimisation for v = f - g on the integer lattice.
//
//   SubSup: minimise f - h_g, h_g a chain lower bound of g tight at x_t.
//   SupSub: minimise m_f - g, m_f a separable upper bound of f tight at x_t.
//   ModMod: minimise m_f - h_g, a separable problem solved exactly.
//
// Every surrogate is tight at the current iterate, so its minimiser never
// increases v when the inner solve is exact. Inner solvers that are only
// approximate (double greedy, subgradient SFM) are compared against x_t and
// the better point is kept. When no move is accepted the loop retries with a
// family of chains that vary the increments adjacent to x_t, then checks all
// 2n neighbours before declaring a local minimum.

#ifndef DSMM_MM_H_
#define DSMM_MM_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dsmm/decompositions.h"
#include "dsmm/extension.h"
#include "dsmm/lattice.h"
#include "dsmm/solvers.h"
#include "dsmm/upper_bounds.h"

namespace dsmm {

enum class Algorithm { kSubSup, kSupSub, kModMod };
enum class UpperBoundPolicy { kTryBoth, kGrow1, kGrow2 };
enum class SolveStatus { kConverged, kIterBudget, kCertifiedLocalMin };

std::string_view AlgorithmName(Algorithm algorithm);
Algorithm ParseAlgorithm(std::string_view name);
std::string_view PolicyName(UpperBoundPolicy policy);
UpperBoundPolicy ParsePolicy(std::string_view name);
std::string_view StatusName(SolveStatus status);

struct SolveOptions {
  Algorithm algorithm = Algorithm::kModMod;
  // Relative improvement a step must achieve; 0 accepts any strict descent.
  double epsilon = 0.0;
  int max_iters = 100;
  ChainMode chain = ChainMode::Canonical();
  UpperBoundPolicy ub_policy = UpperBoundPolicy::kTryBoth;
  SfmOptions sfm;
  // Overrides every other lambda source for f.
  std::optional<double> lambda;
  // Defaults to the origin.
  std::optional<LatticePoint> start;
};

struct IterateRecord {
  int t = 0;
  LatticePoint x;
  double v = 0.0;
  double f = 0.0;
  double g = 0.0;
  // Surrogate value at the minimiser the inner solver returned, and at the
  // anchor x_{t-1} (equal to v there by tightness). NaN for records that do
  // not come from a surrogate.
  double surrogate = 0.0;
  double surrogate_at_anchor = 0.0;
  bool accepted = false;
  // init, mm, family, neighbor, or stall.
  std::string move;
  // Bound variant and chain used, for example "grow1/chain0".
  std::string detail;
  std::uint64_t calls_f = 0;
  std::uint64_t calls_g = 0;
  double wall_ms = 0.0;
};

struct NeighborCheck {
  int coordinate = 0;
  int direction = 0;  // +1 or -1
  LatticePoint point;
  double v = 0.0;
};

struct LocalMinCertificate {
  LatticePoint x;
  double v = 0.0;
  bool passed = false;
  std::vector<NeighborCheck> neighbors;
  // The steepest descending neighbour when the check fails.
  std::optional<NeighborCheck> descending;
  // Chains varying the increments adjacent to x.
  std::vector<Chain> chain_family;
};

struct IterationBound {
  // log(|M| / |m|) / epsilon, or 0 when m or M vanishes.
  double bound = 0.0;
  // f''(0) - g''(top) for the monotone pair with the modular term absorbed.
  double big_m = 0.0;
  // v(x^1).
  double small_m = 0.0;
};

struct SolveReport {
  Algorithm algorithm = Algorithm::kModMod;
  std::vector<IterateRecord> iterates;
  SolveStatus status = SolveStatus::kIterBudget;
  std::optional<LocalMinCertificate> certificate;
  std::optional<IterationBound> predicted_bound;
  LatticePoint minimizer;
  double value = 0.0;
  // Lambda used for f's upper bounds; unset for SubSup.
  std::optional<double> lambda;
  int accepted_moves = 0;
  std::uint64_t calls_f = 0;
  std::uint64_t calls_g = 0;
};

// v_new <= v_old - epsilon * max(|v_old|, 1e-12); for epsilon = 0 this is
// v_new < v_old - 1e-12.
bool AcceptStep(double v_old, double v_new, double epsilon);

// Compares v(x) against v(x +- e_i) for every feasible i (respecting the
// problem's cardinality budget) and records the adjacent chain family at x.
LocalMinCertificate CertifyLocalMinimum(const DsProblem& p,
                                        std::span<const int> x);

// Worst-case accepted-iteration count for the epsilon-approximate loop,
// given v(x^1). Requires an enumerable domain for the decompositions.
IterationBound PredictedIterationBound(const DsProblem& p, double epsilon,
                                       double v_first);

SolveReport SubSup(const DsProblem& p, const SolveOptions& options);
SolveReport SupSub(const DsProblem& p, const SolveOptions& options);
SolveReport ModMod(const DsProblem& p, const SolveOptions& options);
// Dispatches on options.algorithm.
SolveReport Solve(const DsProblem& p, const SolveOptions& options);

}  // namespace dsmm

#endif  // DSMM_MM_H_
