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
#include <limits>
#include <set>
#include <string>

#include "dsmm/errors.h"

namespace dsmm {
namespace {

// Tie slack for the DP reconstruction.
constexpr double kTieSlack = 1e-12;

std::vector<double> Prefixes(const SeparableFunction& s, int i, int k) {
  std::vector<double> prefix(k, 0.0);
  for (int l = 1; l < k; ++l) prefix[l] = prefix[l - 1] + s.increment(i, l);
  return prefix;
}

// Keeps the better of two candidates, preferring the lexicographically
// smaller point on equal values.
void KeepBetter(PointValue& best, const LatticePoint& x, double value) {
  if (value < best.value || (value == best.value && x < best.point)) {
    best.point = x;
    best.value = value;
  }
}

}  // namespace

PointValue MinimizeSeparable(const SeparableFunction& s,
                             const LatticeDomain& domain) {
  if (!s.Matches(domain)) {
    throw ArgumentError("separable tables do not match the domain");
  }
  PointValue result{domain.Zero(), s.constant()};
  for (int i = 0; i < domain.n(); ++i) {
    const std::vector<double> prefix = Prefixes(s, i, domain.size(i));
    int best = 0;
    for (int l = 1; l < domain.size(i); ++l) {
      if (prefix[l] < prefix[best]) best = l;
    }
    result.point[i] = best;
    result.value += prefix[best];
  }
  return result;
}

PointValue MinimizeSeparableCardinality(const SeparableFunction& s,
                                        const LatticeDomain& domain,
                                        int budget) {
  if (budget < 0) throw ArgumentError("cardinality budget must be >= 0");
  if (!s.Matches(domain)) {
    throw ArgumentError("separable tables do not match the domain");
  }
  const int n = domain.n();
  const int cap = std::min(budget, domain.rank());
  std::vector<std::vector<double>> prefix(n);
  for (int i = 0; i < n; ++i) prefix[i] = Prefixes(s, i, domain.size(i));

  // best[i][b]: minimum of sum_{j >= i} prefix_j(x_j) with sum_{j >= i} x_j <= b.
  std::vector<std::vector<double>> best(n + 1, std::vector<double>(cap + 1, 0.0));
  for (int i = n - 1; i >= 0; --i) {
    for (int b = 0; b <= cap; ++b) {
      double value = std::numeric_limits<double>::infinity();
      const int top = std::min(domain.size(i) - 1, b);
      for (int l = 0; l <= top; ++l) {
        value = std::min(value, prefix[i][l] + best[i + 1][b - l]);
      }
      best[i][b] = value;
    }
  }

  PointValue result{domain.Zero(), s.constant()};
  int remaining = cap;
  for (int i = 0; i < n; ++i) {
    const int top = std::min(domain.size(i) - 1, remaining);
    for (int l = 0; l <= top; ++l) {
      if (prefix[i][l] + best[i + 1][remaining - l] <=
          best[i][remaining] + kTieSlack) {
        result.point[i] = l;
        result.value += prefix[i][l];
        remaining -= l;
        break;
      }
    }
  }
  return result;
}

PointValue MaximizeSubmodularDoubleGreedy(const OracleFunction& g) {
  const LatticeDomain& d = g.domain();
  LatticePoint a = d.Zero();
  LatticePoint b = d.Top();
  double ga = g(a);
  double gb = g(b);
  for (int i = 0; i < d.n(); ++i) {
    const int lo = a[i];
    const int hi = b[i];
    std::vector<double> raise(hi - lo + 1, 0.0);
    std::vector<double> lower(hi - lo + 1, 0.0);
    LatticePoint probe = a;
    for (int l = lo + 1; l <= hi; ++l) {
      probe[i] = l;
      raise[l - lo] = g(probe) - ga;
    }
    probe = b;
    for (int l = lo; l < hi; ++l) {
      probe[i] = l;
      lower[l - lo] = g(probe) - gb;
    }
    // Raising prefers the lowest level on ties, lowering the highest.
    int raise_level = lo;
    for (int l = lo + 1; l <= hi; ++l) {
      if (raise[l - lo] > raise[raise_level - lo]) raise_level = l;
    }
    int lower_level = hi;
    for (int l = hi - 1; l >= lo; --l) {
      if (lower[l - lo] > lower[lower_level - lo]) lower_level = l;
    }
    const double alpha = raise[raise_level - lo];
    const double beta = lower[lower_level - lo];
    const int level = alpha >= beta ? raise_level : lower_level;
    ga += raise[level - lo];
    gb += lower[level - lo];
    a[i] = level;
    b[i] = level;
  }
  return PointValue{a, ga};
}

PointValue BruteForceMinimize(const OracleFunction& v) {
  const LatticeDomain& d = v.domain();
  d.RequireEnumerable("brute-force minimisation");
  PointValue best{d.Zero(), std::numeric_limits<double>::infinity()};
  d.ForEachPoint([&](const LatticePoint& x) {
    const double value = v(x);
    if (value < best.value) {
      best.point = x;
      best.value = value;
    }
  });
  return best;
}

std::string_view SfmMethodName(SfmMethod method) {
  switch (method) {
    case SfmMethod::kAuto:
      return "auto";
    case SfmMethod::kBruteForce:
      return "brute";
    case SfmMethod::kSubgradient:
      return "subgrad";
  }
  return "unknown";
}

SfmMethod ParseSfmMethod(std::string_view name) {
  if (name == "auto") return SfmMethod::kAuto;
  if (name == "brute" || name == "brute_force") return SfmMethod::kBruteForce;
  if (name == "subgrad" || name == "subgradient") return SfmMethod::kSubgradient;
  throw ArgumentError("unknown submodular minimisation method '" +
                      std::string(name) + "'");
}

std::vector<double> ProjectNonIncreasing(std::span<const double> values) {
  // Blocks of (sum, count); adjacent blocks merge while means increase.
  std::vector<double> sums;
  std::vector<int> counts;
  for (double v : values) {
    sums.push_back(v);
    counts.push_back(1);
    while (sums.size() > 1) {
      const std::size_t last = sums.size() - 1;
      const double mean_prev = sums[last - 1] / counts[last - 1];
      const double mean_last = sums[last] / counts[last];
      if (mean_prev >= mean_last) break;
      sums[last - 1] += sums[last];
      counts[last - 1] += counts[last];
      sums.pop_back();
      counts.pop_back();
    }
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (std::size_t blk = 0; blk < sums.size(); ++blk) {
    const double mean = std::clamp(sums[blk] / counts[blk], 0.0, 1.0);
    out.insert(out.end(), counts[blk], mean);
  }
  return out;
}

PointValue RoundByThresholds(const OracleFunction& f, const RhoProfile& rho) {
  const LatticeDomain& d = f.domain();
  std::set<double> thresholds;
  for (const auto& row : rho.values) {
    for (double t : row) {
      if (t > 0.0 && t <= 1.0) thresholds.insert(t);
    }
  }
  PointValue best{d.Zero(), f(d.Zero())};
  for (double t : thresholds) {
    const LatticePoint x = ThresholdPoint(rho, t);
    KeepBetter(best, x, f(x));
  }
  return best;
}

SfmResult MinimizeSubmodular(const OracleFunction& f,
                             const SfmOptions& options) {
  const LatticeDomain& d = f.domain();
  SfmMethod method = options.method;
  if (method == SfmMethod::kAuto) {
    method = d.Enumerable() ? SfmMethod::kBruteForce : SfmMethod::kSubgradient;
  }
  if (method == SfmMethod::kBruteForce) {
    const PointValue best = BruteForceMinimize(f);
    SfmResult result;
    result.minimizer = best.point;
    result.value = best.value;
    result.method = SfmMethod::kBruteForce;
    result.best_extension_value = best.value;
    return result;
  }

  RhoProfile rho;
  rho.values.resize(d.n());
  for (int i = 0; i < d.n(); ++i) rho.values[i].assign(d.size(i) - 1, 0.5);

  PointValue best_point{d.Zero(), std::numeric_limits<double>::infinity()};
  RhoProfile best_rho = rho;
  double best_extension = std::numeric_limits<double>::infinity();
  const double diameter = std::sqrt(static_cast<double>(d.rank()));
  int iterations = 0;

  for (int t = 1; t <= std::max(options.iterations, 1); ++t) {
    iterations = t;
    const GreedyResult greedy = GreedyExtension(f, rho);
    if (greedy.value < best_extension) {
      best_extension = greedy.value;
      best_rho = rho;
    }
    // Chain points are exactly the threshold roundings of rho.
    LatticePoint p = d.Zero();
    KeepBetter(best_point, p, greedy.chain_values[0]);
    for (int s = 0; s < greedy.chain.length(); ++s) {
      ++p[greedy.chain.increments()[s]];
      KeepBetter(best_point, p, greedy.chain_values[s + 1]);
    }

    double norm2 = 0.0;
    for (const auto& row : greedy.weights.tables()) {
      for (double w : row) norm2 += w * w;
    }
    if (norm2 == 0.0) break;
    const double step =
        (options.step_scale > 0.0 ? options.step_scale
                                  : diameter / std::sqrt(norm2)) /
        std::sqrt(static_cast<double>(t));
    for (int i = 0; i < d.n(); ++i) {
      std::vector<double> moved = rho.values[i];
      for (std::size_t j = 0; j < moved.size(); ++j) {
        moved[j] -= step * greedy.weights.tables()[i][j];
      }
      rho.values[i] = ProjectNonIncreasing(moved);
    }
  }

  const PointValue rounded = RoundByThresholds(f, best_rho);
  KeepBetter(best_point, rounded.point, rounded.value);

  SfmResult result;
  result.minimizer = best_point.point;
  result.value = best_point.value;
  result.method = SfmMethod::kSubgradient;
  result.best_extension_value = best_extension;
  result.rounding_gap = best_extension - best_point.value;
  result.iterations = iterations;
  return result;
}

}  // namespace dsmm
