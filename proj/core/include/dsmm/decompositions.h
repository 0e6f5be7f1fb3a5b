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

// Difference-of-submodular problems and the decompositions used to bound
// them: modular + monotone splits, additive lower bounds on min v, and the
// construction of f, g from an arbitrary v.

#ifndef DSMM_DECOMPOSITIONS_H_
#define DSMM_DECOMPOSITIONS_H_

#include <optional>
#include <string>

#include "dsmm/lattice.h"

namespace dsmm {

// How a problem's (f, g) pair came about.
struct Provenance {
  enum class Kind { kNative, kConstructed };
  Kind kind = Kind::kNative;
  // Set for constructed problems.
  double n_bound = 0.0;
  double m_ref = 0.0;
  std::string reference;
};

// Minimise v(x) = f(x) - g(x) with f and g lattice submodular.
struct DsProblem {
  OracleFunction f;
  OracleFunction g;
  Provenance provenance;
  // Known lambda for f, e.g. from a quadratic form. Used before falling back
  // to brute force.
  std::optional<double> f_lambda_hint;
  // Cardinality budget sum_i x_i <= budget, honoured by ModMod.
  std::optional<int> budget;

  const LatticeDomain& domain() const { return f.domain(); }
  // v = f - g. Each evaluation also counts against f and g.
  OracleFunction V() const { return Difference(f, g); }
};

// Throws ArgumentError when f and g live on different domains.
DsProblem MakeProblem(OracleFunction f, OracleFunction g);

struct MonotoneDecomposition {
  enum class Method { kMinMarginal, kHarmonic };
  // Includes the constant f(0).
  SeparableFunction modular_part;
  // f - modular_part; zero at the origin.
  OracleFunction monotone_part;
  Method method = Method::kMinMarginal;
  // Checker verdict on monotone_part when the domain is enumerable.
  std::optional<Verdict> monotone_verdict;
};

// modular_part = f(0) + sum_k delta_k x_k with
// delta_k = f(top) - f(top - e_k). For DR f every marginal is >= delta_k, so
// the residual is monotone. With verify set, throws ValidationError if f is
// not DR.
MonotoneDecomposition MinMarginalDecomposition(const OracleFunction& f,
                                               bool verify = false);

// modular_part = f(0) + sum_k sum_{j <= y_k} m_{j,k} / j with
// m_{j,k} = f(top) - f(top - j e_k). The residual is not monotone in general;
// the attached verdict reports what the checker finds.
MonotoneDecomposition HarmonicDecomposition(const OracleFunction& f);

struct MonotoneSubmodularSplit {
  // lambda sum x_i^2 + f(0) + the min-marginal slopes of the DR residual.
  SeparableFunction modular;
  // Monotone, submodular, zero at the origin.
  OracleFunction monotone_submodular;
  double lambda = 0.0;
};

// Lambda split followed by a min-marginal decomposition of the DR residual.
// Uses lambda_hint when given, else LambdaBruteForce.
MonotoneSubmodularSplit SplitMonotoneSubmodular(
    const OracleFunction& f, std::optional<double> lambda_hint = std::nullopt);

// v = f' - g' + k with f', g' monotone submodular and k separable, k(0) = 0.
// The constant v(0) is carried by f'.
struct DsDecomposition {
  OracleFunction f_prime;
  OracleFunction g_prime;
  SeparableFunction k;
};

DsDecomposition DecomposeProblem(const DsProblem& p);

struct AdditiveBounds {
  // min_x (f' + k)(x) - g'(top); absent if the inner minimisation failed.
  std::optional<double> bound1;
  // f'(0) - g'(top) + sum_k min_y prefix_k(y).
  double bound2 = 0.0;
  // f'(0) - g'(top).
  double reference = 0.0;
  std::string bound1_error;
};

AdditiveBounds AdditiveLowerBounds(const DsProblem& p);

struct SecondDifferenceExtreme {
  double n_max = 0.0;
  std::optional<Witness> witness;
};

// max over x and i < j of |cross second difference of v|.
SecondDifferenceExtreme SecondDifferenceExtremes(const OracleFunction& v);

struct ReferenceQuadratic {
  OracleFunction g;
  // Every cross second difference of g equals -m_ref.
  double m_ref = 4.0;
};

// g(x) = sum_i x_i^2 - 4 sum_{i<j} x_i x_j. Throws ArgumentError for n = 1.
ReferenceQuadratic MakeReferenceQuadratic(const LatticeDomain& domain);

// f = v + (n_bound / m_ref) g_ref, g = (n_bound / m_ref) g_ref. On enumerable
// domains both parts are checked and a ValidationError carries the witness
// when n_bound was too small.
DsProblem DsConstruct(const OracleFunction& v, const OracleFunction& g_ref,
                      double m_ref, double n_bound);

// DsConstruct with the reference quadratic and n_bound from brute force.
DsProblem AutoSplit(const OracleFunction& v);

}  // namespace dsmm

#endif  // DSMM_DECOMPOSITIONS_H_
