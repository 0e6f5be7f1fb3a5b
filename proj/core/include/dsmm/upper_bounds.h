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

// Separable upper bounds for lattice submodular functions.
//
// A submodular f is split as f = lambda * sum_i x_i^2 + h where lambda covers
// the largest within-coordinate second difference, which makes h
// DR-submodular. DR functions admit separable upper bounds tight at an
// anchor x; adding the quadratic part back gives a separable bound for f.
//
// Variants, with a = max(x - y, 0) and b = max(y - x, 0):
//
//   grow1:  h(x) - sum_i [h(x) - h(x - a_i e_i)] + sum_i [h(b_i e_i) - h(0)]
//   grow2:  h(x) - sum_i [h(top) - h(top - a_i e_i)]
//                + sum_i [h(x + b_i e_i) - h(x)]
//   tight1: grow1 with the gains measured from min(x, y)
//   tight2: grow2 with the losses measured from max(x, y)
//
// grow1 and grow2 are separable. tight1 and tight2 are pointwise tighter but
// couple coordinates through min(x, y) and max(x, y), so they are exposed
// only as oracles.

#ifndef DSMM_UPPER_BOUNDS_H_
#define DSMM_UPPER_BOUNDS_H_

#include <span>
#include <string_view>
#include <vector>

#include "dsmm/lattice.h"

namespace dsmm {

enum class UpperBoundVariant { kGrow1, kGrow2, kTight1, kTight2 };

std::string_view VariantName(UpperBoundVariant variant);
// Throws ArgumentError for unknown names.
UpperBoundVariant ParseVariant(std::string_view name);

struct DrDecomposition {
  double lambda = 0.0;
  // lambda * sum_i x_i^2.
  SeparableFunction quad;
  // f - quad.
  OracleFunction residual;
};

// max(0, max over x, i of f(x + 2 e_i) - 2 f(x + e_i) + f(x)).
double LambdaBruteForce(const OracleFunction& f);

// For f(x) = x^T A x + b^T x + c: the within-coordinate second difference
// along i is 2 A_ii, so this returns max(0, 2 max_i A_ii).
double LambdaQuadratic(const std::vector<std::vector<double>>& a);

SeparableFunction QuadraticPart(const LatticeDomain& domain, double lambda);

// Throws ArgumentError for negative lambda.
DrDecomposition DrSplit(const OracleFunction& f, double lambda);

// Separable upper bound of a DR function h, tight at x. Only the grow
// variants are separable; tight variants throw ArgumentError here.
SeparableFunction ModularUpperBoundDr(const OracleFunction& h,
                                      std::span<const int> x,
                                      UpperBoundVariant variant);

// Any variant as a pointwise oracle bound of h anchored at x.
OracleFunction UpperBoundDrOracle(const OracleFunction& h,
                                  std::span<const int> x,
                                  UpperBoundVariant variant);

// quad + ModularUpperBoundDr(residual, x, variant). Majorises f and is tight
// at x whenever lambda >= LambdaBruteForce(f).
SeparableFunction UpperBoundFull(const OracleFunction& f, double lambda,
                                 std::span<const int> x,
                                 UpperBoundVariant variant);

// Same bound, any variant, as an oracle.
OracleFunction UpperBoundFullOracle(const OracleFunction& f, double lambda,
                                    std::span<const int> x,
                                    UpperBoundVariant variant);

}  // namespace dsmm

#endif  // DSMM_UPPER_BOUNDS_H_
