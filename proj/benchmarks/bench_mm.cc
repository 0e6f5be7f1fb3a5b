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

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "dsmm/extension.h"
#include "dsmm/mm.h"
#include "dsmm/problem.h"
#include "dsmm/solvers.h"

namespace dsmm {
namespace {

std::vector<DsProblem> MakeEnsemble(EnsembleKind kind, int n, int k) {
  EnsembleParams params;
  params.count = 8;
  params.n = n;
  params.k = k;
  std::vector<DsProblem> problems;
  for (const ProblemSpec& spec : GenerateEnsemble(kind, params, 7)) {
    problems.push_back(BuildProblem(spec, BuildOptions{.validate = false}).problem);
  }
  return problems;
}

// Args: algorithm, n, k.
void BM_SolveCoverage(benchmark::State& state) {
  const auto problems = MakeEnsemble(EnsembleKind::kCoverage,
                                     static_cast<int>(state.range(1)),
                                     static_cast<int>(state.range(2)));
  SolveOptions options;
  options.algorithm = static_cast<Algorithm>(state.range(0));
  std::size_t next = 0;
  for (auto _ : state) {
    SolveReport report = Solve(problems[next++ % problems.size()], options);
    benchmark::DoNotOptimize(report.value);
  }
  state.SetLabel(std::string(AlgorithmName(options.algorithm)));
}
BENCHMARK(BM_SolveCoverage)
    ->ArgsProduct({{static_cast<int>(Algorithm::kSubSup),
                    static_cast<int>(Algorithm::kSupSub),
                    static_cast<int>(Algorithm::kModMod)},
                   {3, 6},
                   {4, 8}})
    ->Unit(benchmark::kMicrosecond);

void BM_SolveConcave(benchmark::State& state) {
  const auto problems = MakeEnsemble(EnsembleKind::kConcaveOfLinearSums,
                                     static_cast<int>(state.range(1)), 4);
  SolveOptions options;
  options.algorithm = static_cast<Algorithm>(state.range(0));
  std::size_t next = 0;
  for (auto _ : state) {
    SolveReport report = Solve(problems[next++ % problems.size()], options);
    benchmark::DoNotOptimize(report.value);
  }
  state.SetLabel(std::string(AlgorithmName(options.algorithm)));
}
BENCHMARK(BM_SolveConcave)
    ->ArgsProduct({{static_cast<int>(Algorithm::kSubSup),
                    static_cast<int>(Algorithm::kModMod)},
                   {3, 5}})
    ->Unit(benchmark::kMicrosecond);

void BM_GreedyExtension(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const DsProblem p = MakeEnsemble(EnsembleKind::kCoverage, n, k).front();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RhoProfile rho;
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(k - 1);
    for (double& v : row) v = unit(rng);
    std::sort(row.rbegin(), row.rend());
    rho.values.push_back(row);
  }
  for (auto _ : state) {
    GreedyResult r = GreedyExtension(p.g, rho);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_GreedyExtension)->ArgsProduct({{3, 8, 16}, {4, 16}});

void BM_SubgradientSfm(benchmark::State& state) {
  const DsProblem p =
      MakeEnsemble(EnsembleKind::kCoverage, static_cast<int>(state.range(0)), 4)
          .front();
  SfmOptions options;
  options.method = SfmMethod::kSubgradient;
  options.iterations = static_cast<int>(state.range(1));
  for (auto _ : state) {
    SfmResult r = MinimizeSubmodular(p.g, options);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_SubgradientSfm)
    ->ArgsProduct({{3, 6}, {100, 500}})
    ->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace dsmm

BENCHMARK_MAIN();
