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
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>

#include "dsmm/errors.h"

namespace dsmm {

void RhoProfile::Validate(const LatticeDomain& domain) const {
  if (static_cast<int>(values.size()) != domain.n()) {
    throw ArgumentError("rho profile has " + std::to_string(values.size()) +
                        " coordinates, domain has " +
                        std::to_string(domain.n()));
  }
  for (int i = 0; i < domain.n(); ++i) {
    const auto& rho = values[i];
    if (static_cast<int>(rho.size()) != domain.size(i) - 1) {
      throw ArgumentError("rho profile for coordinate " + std::to_string(i) +
                          " has the wrong length");
    }
    for (std::size_t j = 0; j < rho.size(); ++j) {
      if (!(rho[j] >= -kCheckTolerance && rho[j] <= 1.0 + kCheckTolerance)) {
        throw ArgumentError("rho entry outside [0, 1] at coordinate " +
                            std::to_string(i));
      }
      if (j > 0 && rho[j] > rho[j - 1] + kCheckTolerance) {
        throw ArgumentError("rho profile increases within coordinate " +
                            std::to_string(i));
      }
    }
  }
}

RhoProfile RhoFromPoint(const LatticeDomain& domain, std::span<const int> y) {
  domain.RequireContains(y);
  RhoProfile rho;
  rho.values.resize(domain.n());
  for (int i = 0; i < domain.n(); ++i) {
    rho.values[i].assign(domain.size(i) - 1, 0.0);
    for (int j = 1; j <= y[i]; ++j) rho.values[i][j - 1] = 1.0;
  }
  return rho;
}

int Theta(std::span<const double> rho_i, double t) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw ArgumentError("threshold must lie in (0, 1], got " +
                        std::to_string(t));
  }
  int level = 0;
  for (std::size_t j = 0; j < rho_i.size(); ++j) {
    if (rho_i[j] >= t) level = static_cast<int>(j) + 1;
  }
  return level;
}

LatticePoint ThresholdPoint(const RhoProfile& rho, double t) {
  LatticePoint x(rho.values.size());
  for (std::size_t i = 0; i < rho.values.size(); ++i) {
    x[i] = Theta(rho.values[i], t);
  }
  return x;
}

Chain::Chain(const LatticeDomain& domain, std::vector<int> increments)
    : n_(domain.n()), increments_(std::move(increments)) {
  std::vector<int> counts(domain.n(), 0);
  for (int i : increments_) {
    if (i < 0 || i >= domain.n()) {
      throw ArgumentError("chain increment names coordinate " +
                          std::to_string(i) + " outside the domain");
    }
    ++counts[i];
  }
  for (int i = 0; i < domain.n(); ++i) {
    if (counts[i] != domain.size(i) - 1) {
      throw ArgumentError("chain raises coordinate " + std::to_string(i) + " " +
                          std::to_string(counts[i]) + " times, expected " +
                          std::to_string(domain.size(i) - 1));
    }
  }
}

LatticePoint Chain::PointAt(int s) const {
  if (s < 0 || s > length()) throw ArgumentError("chain index out of range");
  LatticePoint p(n_, 0);
  for (int step = 0; step < s; ++step) ++p[increments_[step]];
  return p;
}

std::vector<LatticePoint> Chain::Points() const {
  std::vector<LatticePoint> points;
  points.reserve(increments_.size() + 1);
  LatticePoint p(n_, 0);
  points.push_back(p);
  for (int i : increments_) {
    ++p[i];
    points.push_back(p);
  }
  return points;
}

bool Chain::Contains(std::span<const int> y) const {
  if (static_cast<int>(y.size()) != n_) return false;
  const int s = std::accumulate(y.begin(), y.end(), 0);
  if (s < 0 || s > length()) return false;
  const LatticePoint p = PointAt(s);
  return std::equal(p.begin(), p.end(), y.begin());
}

Chain ChainContaining(const LatticeDomain& domain, std::span<const int> y,
                      ChainMode mode) {
  domain.RequireContains(y);
  std::vector<int> before;
  std::vector<int> after;
  for (int i = 0; i < domain.n(); ++i) {
    before.insert(before.end(), y[i], i);
  }
  for (int i = 0; i < domain.n(); ++i) {
    after.insert(after.end(), domain.size(i) - 1 - y[i], i);
  }
  if (mode.kind == ChainMode::Kind::kRandomized) {
    std::mt19937_64 rng(mode.seed);
    std::shuffle(before.begin(), before.end(), rng);
    std::shuffle(after.begin(), after.end(), rng);
  }
  before.insert(before.end(), after.begin(), after.end());
  return Chain(domain, std::move(before));
}

SeparableFunction ChainWeights(const OracleFunction& f, const Chain& chain) {
  const LatticeDomain& domain = f.domain();
  std::vector<std::vector<double>> tables(domain.n());
  for (int i = 0; i < domain.n(); ++i) tables[i].assign(domain.size(i) - 1, 0.0);
  LatticePoint p = domain.Zero();
  const double f0 = f(p);
  double previous = f0;
  for (int i : chain.increments()) {
    ++p[i];
    const double current = f(p);
    tables[i][p[i] - 1] = current - previous;
    previous = current;
  }
  return SeparableFunction(f0, std::move(tables));
}

GreedyResult GreedyExtension(const OracleFunction& f, const RhoProfile& rho) {
  const LatticeDomain& domain = f.domain();
  rho.Validate(domain);

  // Merge the per-coordinate sequences; each coordinate's entries are
  // consumed in level order, so within-coordinate order is preserved even
  // when a profile is non-increasing only up to tolerance.
  std::vector<int> next(domain.n(), 0);
  std::vector<int> order;
  std::vector<double> thresholds;
  order.reserve(domain.rank());
  thresholds.reserve(domain.rank());
  for (int step = 0; step < domain.rank(); ++step) {
    int best = -1;
    for (int i = 0; i < domain.n(); ++i) {
      if (next[i] >= domain.size(i) - 1) continue;
      if (best < 0 || rho.values[i][next[i]] > rho.values[best][next[best]]) {
        best = i;
      }
    }
    thresholds.push_back(rho.values[best][next[best]]);
    order.push_back(best);
    ++next[best];
  }

  Chain chain(domain, std::move(order));
  std::vector<std::vector<double>> tables(domain.n());
  for (int i = 0; i < domain.n(); ++i) tables[i].assign(domain.size(i) - 1, 0.0);
  std::vector<double> chain_values;
  chain_values.reserve(domain.rank() + 1);

  LatticePoint p = domain.Zero();
  const double f0 = f(p);
  chain_values.push_back(f0);
  for (int s = 0; s < chain.length(); ++s) {
    const int i = chain.increments()[s];
    ++p[i];
    const double current = f(p);
    const double w = current - chain_values.back();
    tables[i][p[i] - 1] = w;
    chain_values.push_back(current);
  }
  // Summation by parts: sum of (t_s - t_{s+1}) f(y(s)). Exact at 0/1 profiles.
  const int r = chain.length();
  double value = r == 0 ? f0 : (1.0 - thresholds[0]) * f0;
  for (int s = 1; s <= r; ++s) {
    const double next = s < r ? thresholds[s] : 0.0;
    value += (thresholds[s - 1] - next) * chain_values[s];
  }
  return GreedyResult{value, SeparableFunction(f0, std::move(tables)),
                      std::move(chain), std::move(chain_values)};
}

SeparableFunction LowerBound(const OracleFunction& f, std::span<const int> y,
                             const Chain& chain) {
  f.domain().RequireContains(y);
  if (!chain.Contains(y)) {
    throw ArgumentError("chain does not contain " + PointToString(y) +
                        "; the lower bound would not be tight there");
  }
  return ChainWeights(f, chain);
}

std::vector<Chain> AdjacentChainFamily(const LatticeDomain& domain,
                                       std::span<const int> y) {
  domain.RequireContains(y);
  std::vector<int> lowerable;
  std::vector<int> raisable;
  for (int i = 0; i < domain.n(); ++i) {
    if (y[i] > 0) lowerable.push_back(i);
    if (y[i] < domain.size(i) - 1) raisable.push_back(i);
  }
  const std::size_t count =
      std::max<std::size_t>({lowerable.size(), raisable.size(), 1});

  std::vector<Chain> family;
  std::set<std::vector<int>> seen;
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<int> increments;
    for (std::size_t k = 0; k < lowerable.size(); ++k) {
      const int i = lowerable[(c + k) % lowerable.size()];
      increments.insert(increments.end(), y[i], i);
    }
    for (std::size_t k = 0; k < raisable.size(); ++k) {
      const int i = raisable[(c + k) % raisable.size()];
      increments.insert(increments.end(), domain.size(i) - 1 - y[i], i);
    }
    if (seen.insert(increments).second) {
      family.emplace_back(domain, std::move(increments));
    }
  }
  return family;
}

Verdict BaseVertexCheck(const OracleFunction& f,
                        const SeparableFunction& weights) {
  const LatticeDomain& domain = f.domain();
  domain.RequireEnumerable("base polyhedron check");
  if (!weights.Matches(domain)) {
    throw ArgumentError("weights do not match the domain");
  }
  const LatticePoint top = domain.Top();
  const double f0 = f(domain.Zero());
  Verdict verdict;
  double worst = 0.0;
  domain.ForEachPoint([&](const LatticePoint& x) {
    const double lhs = weights(x) - weights.constant();
    const double rhs = f(x) - f0;
    double violation = lhs - rhs;
    if (x == top) violation = std::abs(violation);
    if (violation > kCheckTolerance && (verdict.holds || violation > worst)) {
      verdict.holds = false;
      verdict.witness = Witness{x, -1, -1, lhs - rhs};
      worst = violation;
    }
  });
  return verdict;
}

}  // namespace dsmm
