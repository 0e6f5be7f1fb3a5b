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

// Subproblem solvers for the majorisation-minimisation loops.
//
// All exact solvers break ties toward the lexicographically smallest point.

#ifndef DSMM_SOLVERS_H_
#define DSMM_SOLVERS_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "dsmm/extension.h"
#include "dsmm/lattice.h"

namespace dsmm {

struct PointValue {
  LatticePoint point;
  double value = 0.0;
};

// Exact minimiser of a separable function: per coordinate, the level with the
// smallest prefix sum (lowest level on ties). O(sum_i k_i).
PointValue MinimizeSeparable(const SeparableFunction& s,
                             const LatticeDomain& domain);

// Exact minimiser subject to sum_i x_i <= budget, by dynamic programming over
// (coordinate, remaining budget). Throws ArgumentError for negative budget.
PointValue MinimizeSeparableCardinality(const SeparableFunction& s,
                                        const LatticeDomain& domain,
                                        int budget);

// Deterministic double greedy on the lattice. Keeps a <= b (a = 0,
// b = top); for each coordinate compares the best gain from raising a_i with
// the best gain from lowering b_i, takes the larger (raising on ties), and
// fixes a_i = b_i at the chosen level. 1/3-approximate for non-negative
// submodular g.
PointValue MaximizeSubmodularDoubleGreedy(const OracleFunction& g);

// Exhaustive minimum; lexicographically smallest minimiser on ties.
PointValue BruteForceMinimize(const OracleFunction& v);

enum class SfmMethod {
  // Brute force on enumerable domains, subgradient otherwise.
  kAuto,
  kBruteForce,
  kSubgradient,
};

std::string_view SfmMethodName(SfmMethod method);
SfmMethod ParseSfmMethod(std::string_view name);

struct SfmOptions {
  SfmMethod method = SfmMethod::kAuto;
  int iterations = 500;
  // Step size numerator; <= 0 selects sqrt(r) / ||w|| per step.
  double step_scale = 0.0;
};

struct SfmResult {
  LatticePoint minimizer;
  double value = 0.0;
  SfmMethod method = SfmMethod::kBruteForce;
  // Subgradient only: smallest extension value seen, and
  // best_extension_value - value (non-negative up to rounding error).
  double best_extension_value = 0.0;
  double rounding_gap = 0.0;
  int iterations = 0;
};

// Projects onto non-increasing sequences in [0, 1]: pool adjacent violators,
// then clamp.
std::vector<double> ProjectNonIncreasing(std::span<const double> values);

// Rounds rho by evaluating f at ThresholdPoint(rho, t) for every distinct
// entry t in (0, 1] of rho, and at the origin.
PointValue RoundByThresholds(const OracleFunction& f, const RhoProfile& rho);

// Minimises a lattice submodular function. The subgradient method runs
// projected subgradient descent on the extension (subgradients from the
// greedy weights), keeps the best chain point visited, and finishes by
// threshold rounding of the best profile.
SfmResult MinimizeSubmodular(const OracleFunction& f,
                             const SfmOptions& options = {});

}  // namespace dsmm

#endif  // DSMM_SOLVERS_H_
