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

// The convex extension of a lattice function to reverse-cumulative profiles,
// evaluated by the greedy algorithm, plus maximal chains and the separable
// lower bound that is tight along a chain.

#ifndef DSMM_EXTENSION_H_
#define DSMM_EXTENSION_H_

#include <cstdint>
#include <span>
#include <vector>

#include "dsmm/lattice.h"

namespace dsmm {

// Per coordinate i, rho_i(1) >= rho_i(2) >= ... >= rho_i(k_i - 1), all in
// [0, 1]. values[i][j - 1] holds rho_i(j).
struct RhoProfile {
  std::vector<std::vector<double>> values;

  // Throws ArgumentError if the shape does not match the domain, an entry
  // leaves [0, 1], or a coordinate increases by more than kCheckTolerance.
  void Validate(const LatticeDomain& domain) const;
};

// Indicator profile of y: rho_i(j) = 1 for j <= y_i, else 0.
RhoProfile RhoFromPoint(const LatticeDomain& domain, std::span<const int> y);

// Level selected by threshold t in (0, 1]: the largest level whose
// rho_i(level) is >= t, or 0 when t exceeds rho_i(1). Intervals are
// right-closed, so ties go to the higher level.
int Theta(std::span<const double> rho_i, double t);

// Threshold rounding x(t) = (Theta(rho_1, t), ..., Theta(rho_n, t)).
LatticePoint ThresholdPoint(const RhoProfile& rho, double t);

// A maximal chain 0 = p_0 < p_1 < ... < p_r = top, stored as the coordinate
// raised at each step.
class Chain {
 public:
  // Throws ArgumentError unless coordinate i appears exactly k_i - 1 times.
  Chain(const LatticeDomain& domain, std::vector<int> increments);

  const std::vector<int>& increments() const { return increments_; }
  int length() const { return static_cast<int>(increments_.size()); }

  // p_s for s in [0, r].
  LatticePoint PointAt(int s) const;
  std::vector<LatticePoint> Points() const;

  // True when p_{|y|} == y, where |y| = sum_i y_i.
  bool Contains(std::span<const int> y) const;

 private:
  int n_;
  std::vector<int> increments_;
};

struct ChainMode {
  enum class Kind { kCanonical, kRandomized };
  Kind kind = Kind::kCanonical;
  std::uint64_t seed = 0;

  static ChainMode Canonical() { return {}; }
  static ChainMode Randomized(std::uint64_t seed) {
    return {Kind::kRandomized, seed};
  }
};

// A chain through y. Canonical raises coordinate 0 to y_0, ..., coordinate
// n-1 to y_{n-1}, then each coordinate in order to its top level. Randomized
// shuffles the increments below y and those above y independently.
Chain ChainContaining(const LatticeDomain& domain, std::span<const int> y,
                      ChainMode mode = ChainMode::Canonical());

struct GreedyResult {
  // f_down(rho).
  double value = 0.0;
  // Constant f(0); w_i(j) = f(p_s) - f(p_{s-1}) for the step raising i to j.
  SeparableFunction weights;
  // The chain induced by sorting rho, and f at each of its r + 1 points.
  Chain chain;
  std::vector<double> chain_values;
};

// Evaluates the extension by the greedy algorithm: sort all r entries of rho
// in decreasing order (same-coordinate entries keep level order, cross
// coordinate ties go to the lower index) and walk the induced chain.
// Exactly r + 1 oracle calls.
GreedyResult GreedyExtension(const OracleFunction& f, const RhoProfile& rho);

// Weights f(p_s) - f(p_{s-1}) along an explicit chain, with constant f(0).
// Exactly r + 1 oracle calls.
SeparableFunction ChainWeights(const OracleFunction& f, const Chain& chain);

// h_{f,y}: the separable function built from chain increments. Equal to f on
// every chain point and, for submodular f, below f everywhere. Throws
// ArgumentError if the chain does not contain y.
SeparableFunction LowerBound(const OracleFunction& f, std::span<const int> y,
                             const Chain& chain);

// Chains through y such that every coordinate that can be lowered at y shows
// up as the last increment before y, and every coordinate that can be raised
// shows up as the first increment after y. Size max(#lowerable, #raisable),
// at least one chain.
std::vector<Chain> AdjacentChainFamily(const LatticeDomain& domain,
                                       std::span<const int> y);

// Checks sum_i sum_{j <= x_i} w_i(j) <= f(x) - f(0) for every x and equality
// at the top point. The constant of weights is ignored.
Verdict BaseVertexCheck(const OracleFunction& f,
                        const SeparableFunction& weights);

}  // namespace dsmm

#endif  // DSMM_EXTENSION_H_
