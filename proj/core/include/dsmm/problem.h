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

// Problem descriptions, the JSON problem file format, and seeded ensembles.
// The schema is documented in docs/formats.md.

#ifndef DSMM_PROBLEM_H_
#define DSMM_PROBLEM_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dsmm/decompositions.h"
#include "dsmm/errors.h"
#include "dsmm/lattice.h"

namespace dsmm {

inline constexpr int kProblemFormatVersion = 1;

// Schema violation. path names the offending field, e.g. "f.values[3]".
class ParseError : public ValidationError {
 public:
  ParseError(std::string path, const std::string& message)
      : ValidationError(path + ": " + message), path_(std::move(path)) {}
  const char* kind() const noexcept override { return "parse"; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Row-major values, last coordinate fastest.
struct TableSpec {
  std::vector<double> values;
};

// x^T A x + b^T x + c at integer points.
struct QuadraticSpec {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  double c = 0.0;
};

// constant + sum_i sum_{j <= x_i} increments[i][j - 1].
struct SeparableSpec {
  double constant = 0.0;
  std::vector<std::vector<double>> increments;
};

enum class ConcaveShape { kSqrt, kLog1p, kSaturate };

std::string_view ConcaveShapeName(ConcaveShape shape);

// constant + sum_t coef_t * phi_t(weights_t . x), coef and weights >= 0.
// DR-submodular for every concave phi with phi(0) = 0.
struct ConcaveOfLinearSpec {
  struct Term {
    double coef = 1.0;
    std::vector<double> weights;
    ConcaveShape shape = ConcaveShape::kSqrt;
  };
  double constant = 0.0;
  std::vector<Term> terms;
};

// sum_r w_r (1 - prod_i (1 - p[i][r])^{x_i}): expected covered weight when
// x_i sensors of type i are placed. Monotone DR-submodular.
struct CoverageSpec {
  std::vector<std::vector<double>> probabilities;  // [coordinate][region]
  std::vector<double> region_weights;
};

using FunctionSpec = std::variant<TableSpec, QuadraticSpec, SeparableSpec,
                                  ConcaveOfLinearSpec, CoverageSpec>;

// v = lambda_cost * sum_i cost[i][x_i] - coverage(x).
struct CoverageTradeoffSpec {
  CoverageSpec coverage;
  // Level values, cost[i][0] .. cost[i][k_i - 1].
  std::vector<std::vector<double>> cost_tables;
  double lambda_cost = 1.0;
};

struct ProblemSpec {
  int version = kProblemFormatVersion;
  std::string name;
  std::vector<int> sizes;
  std::optional<FunctionSpec> f;
  std::optional<FunctionSpec> g;
  // Raw objective; with auto_split it is turned into (f, g) with the
  // reference quadratic.
  std::optional<FunctionSpec> v;
  bool auto_split = false;
  std::optional<CoverageTradeoffSpec> coverage_tradeoff;
  std::optional<int> budget;
};

OracleFunction BuildFunction(const FunctionSpec& spec,
                             const LatticeDomain& domain);

struct BuildOptions {
  // Check f and g with CheckSubmodular on enumerable domains.
  bool validate = true;
};

struct LoadedProblem {
  DsProblem problem;
  std::vector<std::string> warnings;
};

// Turns a spec into oracles. Throws ParseError for inconsistent specs and
// ValidationError (with witness) for non-submodular components.
LoadedProblem BuildProblem(const ProblemSpec& spec,
                           const BuildOptions& options = {});

ProblemSpec ParseProblemSpec(std::string_view json_text);
ProblemSpec ReadProblemSpec(const std::string& path);
std::string WriteProblemSpec(const ProblemSpec& spec);

enum class EnsembleKind { kCoverage, kConcaveOfLinearSums, kRandomTableAutosplit };

std::string_view EnsembleKindName(EnsembleKind kind);
EnsembleKind ParseEnsembleKind(std::string_view name);

struct EnsembleParams {
  int count = 20;
  int n = 3;
  int k = 3;
  // Coverage regions.
  int regions = 4;
  // Concave-of-linear terms per function.
  int terms = 3;
  // Scales every linear weight; 0 yields constant functions.
  double weight_scale = 1.0;
  // Random tables draw from [-table_range, table_range].
  double table_range = 5.0;
};

// Deterministic given the seed.
std::vector<ProblemSpec> GenerateEnsemble(EnsembleKind kind,
                                          const EnsembleParams& params,
                                          std::uint64_t seed);

}  // namespace dsmm

#endif  // DSMM_PROBLEM_H_
