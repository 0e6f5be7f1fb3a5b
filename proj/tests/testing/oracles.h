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

// Test-only generators and reference oracles. The oracles work from the
// definitions (pairwise lattice inequalities, plain odometer enumeration)
// rather than the library's local second-difference checks.

#ifndef DSMM_TESTS_TESTING_ORACLES_H_
#define DSMM_TESTS_TESTING_ORACLES_H_

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "dsmm/decompositions.h"
#include "dsmm/lattice.h"

namespace dsmm::testing {

using Rng = std::mt19937_64;

// Every point of prod {0..k_i - 1}, last coordinate fastest.
std::vector<LatticePoint> AllPoints(const std::vector<int>& sizes);

OracleFunction FromLambda(std::vector<int> sizes,
                          std::function<double(const LatticePoint&)> fn);

struct RefMin {
  LatticePoint point;
  double value = 0.0;
};

// Exhaustive minimum, first (lexicographically smallest) point on ties.
// max_total restricts to sum(x) <= max_total when >= 0.
RefMin ReferenceMinimum(const OracleFunction& f, int max_total = -1);
double ReferenceMaximum(const OracleFunction& f);

// f(x) + f(y) >= f(x ^ y) + f(x v y) for every pair.
bool PairwiseSubmodular(const OracleFunction& f, double tol = 1e-9);
// Submodular plus concave along every coordinate line.
bool ReferenceDr(const OracleFunction& f, double tol = 1e-9);
// f(x) <= f(y) whenever x <= y componentwise.
bool ReferenceMonotone(const OracleFunction& f, double tol = 1e-9);

// Arbitrary table with entries in [-range, range].
OracleFunction RandomTable(const std::vector<int>& sizes, Rng& rng,
                           double range = 5.0);
// Random table plus a negative pairwise product large enough to make every
// cross difference non-positive. Neither monotone nor DR in general.
OracleFunction RandomSubmodular(const std::vector<int>& sizes, Rng& rng);
// Concave-of-nonnegative-sums plus concave separable terms minus pairwise
// products: DR-submodular, not monotone in general.
OracleFunction RandomDr(const std::vector<int>& sizes, Rng& rng);
// Shifted so that the minimum is exactly zero.
OracleFunction RandomNonnegativeSubmodular(const std::vector<int>& sizes,
                                           Rng& rng);
// x^T A x with integer entries in [-3, 3], A symmetric.
std::vector<std::vector<double>> RandomIntegerQuadratic(int n, Rng& rng);
OracleFunction QuadraticOracle(const std::vector<int>& sizes,
                               const std::vector<std::vector<double>>& a);

// f = sqrt(x1 + x2), g = x1 + x2 on {0,1,2}^2.
DsProblem ToyProblem();

}  // namespace dsmm::testing

#endif  // DSMM_TESTS_TESTING_ORACLES_H_
