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

// Core lattice types: the box domain prod_i {0, ..., k_i - 1}, function
// oracles with call accounting, separable (modular) functions, and the
// brute-force structural checkers built on second differences.

#ifndef DSMM_LATTICE_H_
#define DSMM_LATTICE_H_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dsmm {

// Absolute tolerance used by every structural check.
inline constexpr double kCheckTolerance = 1e-9;

inline constexpr std::uint64_t kDefaultBruteForceCap = 1'000'000;

// Process-wide limit on the number of lattice points an enumerating routine
// may visit. Routines beyond the cap throw CapExceededError.
std::uint64_t BruteForceCap();
void SetBruteForceCap(std::uint64_t cap);

using LatticePoint = std::vector<int>;

class LatticeDomain {
 public:
  // Throws ArgumentError unless sizes is non-empty and every k_i >= 2.
  explicit LatticeDomain(std::vector<int> sizes);

  int n() const { return static_cast<int>(sizes_.size()); }
  int size(int i) const { return sizes_[i]; }
  const std::vector<int>& sizes() const { return sizes_; }

  // Sum of (k_i - 1): the length of every maximal chain.
  int rank() const { return rank_; }

  // Product of k_i, or nullopt when it does not fit in 64 bits.
  std::optional<std::uint64_t> NumPoints() const { return num_points_; }
  bool Enumerable() const;
  // Throws CapExceededError when the domain is larger than BruteForceCap().
  void RequireEnumerable(const char* what) const;

  bool Contains(std::span<const int> x) const;
  void RequireContains(std::span<const int> x) const;

  LatticePoint Zero() const { return LatticePoint(sizes_.size(), 0); }
  // The all-(k_i - 1) point.
  LatticePoint Top() const;

  // Row-major index, last coordinate fastest.
  std::uint64_t IndexOf(std::span<const int> x) const;
  LatticePoint PointAt(std::uint64_t index) const;

  // Visits every point in row-major order. Requires an enumerable domain.
  void ForEachPoint(const std::function<void(const LatticePoint&)>& fn) const;

  bool operator==(const LatticeDomain& other) const {
    return sizes_ == other.sizes_;
  }

 private:
  std::vector<int> sizes_;
  int rank_ = 0;
  std::optional<std::uint64_t> num_points_;
};

// Advances x to the next point in row-major order; false after the last one.
bool NextPoint(const LatticeDomain& domain, LatticePoint& x);

std::string PointToString(std::span<const int> x);

// A deterministic function on a lattice domain. Copies share the evaluator
// and the call counter, so a copy counts as the same function.
class OracleFunction {
 public:
  using Evaluator = std::function<double(std::span<const int>)>;

  OracleFunction(LatticeDomain domain, Evaluator eval);

  // Evaluates at x and bumps the call counter. Throws DomainError when x is
  // outside the domain.
  double operator()(std::span<const int> x) const;
  double operator()(const LatticePoint& x) const {
    return (*this)(std::span<const int>(x));
  }

  const LatticeDomain& domain() const { return *domain_; }
  std::uint64_t call_count() const { return calls_->load(); }
  void ResetCallCount() const { calls_->store(0); }

 private:
  std::shared_ptr<const LatticeDomain> domain_;
  std::shared_ptr<const Evaluator> eval_;
  std::shared_ptr<std::atomic<std::uint64_t>> calls_;
};

// Pointwise combinations. The results own fresh counters; each evaluation
// also counts once against every operand.
OracleFunction Difference(const OracleFunction& a, const OracleFunction& b);
OracleFunction Sum(const OracleFunction& a, const OracleFunction& b);
OracleFunction Scaled(const OracleFunction& a, double factor);
OracleFunction Constant(const LatticeDomain& domain, double value);

// Oracle over a row-major value table (last coordinate fastest).
OracleFunction TableOracle(const LatticeDomain& domain,
                           std::vector<double> values);

// Evaluates f at every point of an enumerable domain, in row-major order.
std::vector<double> Tabulate(const OracleFunction& f);

// value(x) = constant + sum_i sum_{j=1}^{x_i} w_i(j).
//
// Used for every modular object in the library: subgradient lower bounds,
// DR upper bounds, lambda * sum x_i^2, and the modular parts of
// decompositions.
class SeparableFunction {
 public:
  SeparableFunction() = default;
  // tables[i] holds w_i(1), ..., w_i(k_i - 1).
  SeparableFunction(double constant, std::vector<std::vector<double>> tables);

  static SeparableFunction Zero(const LatticeDomain& domain);
  // value(x) = base + sum_i levels[i][x_i]; levels[i] has k_i entries.
  static SeparableFunction FromLevelValues(
      double base, const std::vector<std::vector<double>>& levels);

  double constant() const { return constant_; }
  const std::vector<std::vector<double>>& tables() const { return tables_; }
  int n() const { return static_cast<int>(tables_.size()); }
  // w_i(level), 1 <= level <= k_i - 1.
  double increment(int i, int level) const { return tables_[i][level - 1]; }

  // sum_{j=1}^{level} w_i(j).
  double Prefix(int i, int level) const;
  double operator()(std::span<const int> x) const;
  double operator()(const LatticePoint& x) const {
    return (*this)(std::span<const int>(x));
  }

  // True when tables are sized k_i - 1 for the given domain.
  bool Matches(const LatticeDomain& domain) const;

  OracleFunction ToOracle(const LatticeDomain& domain) const;

  SeparableFunction& operator+=(const SeparableFunction& other);
  SeparableFunction& operator-=(const SeparableFunction& other);
  SeparableFunction& operator*=(double factor);

 private:
  double constant_ = 0.0;
  std::vector<std::vector<double>> tables_;
};

SeparableFunction operator+(SeparableFunction a, const SeparableFunction& b);
SeparableFunction operator-(SeparableFunction a, const SeparableFunction& b);
SeparableFunction operator*(SeparableFunction a, double factor);

// f - s and f + s as oracles.
OracleFunction Minus(const OracleFunction& f, const SeparableFunction& s);
OracleFunction Plus(const OracleFunction& f, const SeparableFunction& s);

// Location and size of the worst violation found by a checker. j is -1 for
// single-coordinate checks.
struct Witness {
  LatticePoint x;
  int i = -1;
  int j = -1;
  double value = 0.0;
};

struct Verdict {
  bool holds = true;
  std::optional<Witness> witness;

  explicit operator bool() const { return holds; }
};

// f(x + e_i + e_j) - f(x + e_i) - f(x + e_j) + f(x). Four oracle calls.
double SecondDifferenceCross(const OracleFunction& f, std::span<const int> x,
                             int i, int j);
// f(x + 2 e_i) - 2 f(x + e_i) + f(x).
double SecondDifferenceWithin(const OracleFunction& f, std::span<const int> x,
                              int i);

// All cross second differences <= kCheckTolerance. Equivalent to the
// min/max lattice inequality on integer boxes.
Verdict CheckSubmodular(const OracleFunction& f);
// Submodular and coordinatewise concave.
Verdict CheckDr(const OracleFunction& f);
// f(x + e_i) - f(x) >= -kCheckTolerance everywhere.
Verdict CheckMonotone(const OracleFunction& f);

}  // namespace dsmm

#endif  // DSMM_LATTICE_H_
