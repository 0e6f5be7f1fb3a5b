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

#include "dsmm/lattice.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "dsmm/errors.h"

namespace dsmm {
namespace {

std::atomic<std::uint64_t> g_brute_force_cap{kDefaultBruteForceCap};

}  // namespace

std::uint64_t BruteForceCap() { return g_brute_force_cap.load(); }
void SetBruteForceCap(std::uint64_t cap) { g_brute_force_cap.store(cap); }

LatticeDomain::LatticeDomain(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) {
    throw ArgumentError("lattice domain needs at least one coordinate");
  }
  std::uint64_t count = 1;
  bool overflow = false;
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    const int k = sizes_[i];
    if (k < 2) {
      throw ArgumentError("coordinate " + std::to_string(i) +
                          " has k = " + std::to_string(k) +
                          "; every coordinate needs at least 2 levels");
    }
    rank_ += k - 1;
    if (!overflow) {
      if (count > std::numeric_limits<std::uint64_t>::max() /
                      static_cast<std::uint64_t>(k)) {
        overflow = true;
      } else {
        count *= static_cast<std::uint64_t>(k);
      }
    }
  }
  if (!overflow) num_points_ = count;
}

bool LatticeDomain::Enumerable() const {
  return num_points_.has_value() && *num_points_ <= BruteForceCap();
}

void LatticeDomain::RequireEnumerable(const char* what) const {
  if (Enumerable()) return;
  std::ostringstream msg;
  msg << what << ": domain has ";
  if (num_points_) {
    msg << *num_points_;
  } else {
    msg << "more than 2^64";
  }
  msg << " points, above the brute-force cap of " << BruteForceCap();
  throw CapExceededError(msg.str());
}

bool LatticeDomain::Contains(std::span<const int> x) const {
  if (x.size() != sizes_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0 || x[i] >= sizes_[i]) return false;
  }
  return true;
}

void LatticeDomain::RequireContains(std::span<const int> x) const {
  if (!Contains(x)) {
    throw DomainError("point " + PointToString(x) + " is outside the domain " +
                      PointToString(sizes_));
  }
}

LatticePoint LatticeDomain::Top() const {
  LatticePoint top(sizes_.size());
  for (std::size_t i = 0; i < sizes_.size(); ++i) top[i] = sizes_[i] - 1;
  return top;
}

std::uint64_t LatticeDomain::IndexOf(std::span<const int> x) const {
  RequireContains(x);
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    index = index * static_cast<std::uint64_t>(sizes_[i]) +
            static_cast<std::uint64_t>(x[i]);
  }
  return index;
}

LatticePoint LatticeDomain::PointAt(std::uint64_t index) const {
  LatticePoint x(sizes_.size());
  for (std::size_t i = sizes_.size(); i-- > 0;) {
    const auto k = static_cast<std::uint64_t>(sizes_[i]);
    x[i] = static_cast<int>(index % k);
    index /= k;
  }
  if (index != 0) throw DomainError("point index out of range");
  return x;
}

void LatticeDomain::ForEachPoint(
    const std::function<void(const LatticePoint&)>& fn) const {
  RequireEnumerable("enumeration");
  LatticePoint x = Zero();
  do {
    fn(x);
  } while (NextPoint(*this, x));
}

bool NextPoint(const LatticeDomain& domain, LatticePoint& x) {
  for (int i = domain.n() - 1; i >= 0; --i) {
    if (++x[i] < domain.size(i)) return true;
    x[i] = 0;
  }
  return false;
}

std::string PointToString(std::span<const int> x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(x[i]);
  }
  return out + ")";
}

OracleFunction::OracleFunction(LatticeDomain domain, Evaluator eval)
    : domain_(std::make_shared<const LatticeDomain>(std::move(domain))),
      eval_(std::make_shared<const Evaluator>(std::move(eval))),
      calls_(std::make_shared<std::atomic<std::uint64_t>>(0)) {}

double OracleFunction::operator()(std::span<const int> x) const {
  domain_->RequireContains(x);
  calls_->fetch_add(1, std::memory_order_relaxed);
  return (*eval_)(x);
}

OracleFunction Difference(const OracleFunction& a, const OracleFunction& b) {
  if (!(a.domain() == b.domain())) {
    throw ArgumentError("difference of functions on different domains");
  }
  return OracleFunction(a.domain(),
                        [a, b](std::span<const int> x) { return a(x) - b(x); });
}

OracleFunction Sum(const OracleFunction& a, const OracleFunction& b) {
  if (!(a.domain() == b.domain())) {
    throw ArgumentError("sum of functions on different domains");
  }
  return OracleFunction(a.domain(),
                        [a, b](std::span<const int> x) { return a(x) + b(x); });
}

OracleFunction Scaled(const OracleFunction& a, double factor) {
  return OracleFunction(
      a.domain(), [a, factor](std::span<const int> x) { return factor * a(x); });
}

OracleFunction Constant(const LatticeDomain& domain, double value) {
  return OracleFunction(domain, [value](std::span<const int>) { return value; });
}

OracleFunction TableOracle(const LatticeDomain& domain,
                           std::vector<double> values) {
  if (!domain.NumPoints() || *domain.NumPoints() != values.size()) {
    throw ArgumentError("table has " + std::to_string(values.size()) +
                        " values; the domain has a different point count");
  }
  auto table = std::make_shared<const std::vector<double>>(std::move(values));
  return OracleFunction(domain, [domain, table](std::span<const int> x) {
    return (*table)[domain.IndexOf(x)];
  });
}

std::vector<double> Tabulate(const OracleFunction& f) {
  std::vector<double> values;
  f.domain().ForEachPoint([&](const LatticePoint& x) { values.push_back(f(x)); });
  return values;
}

SeparableFunction::SeparableFunction(double constant,
                                     std::vector<std::vector<double>> tables)
    : constant_(constant), tables_(std::move(tables)) {}

SeparableFunction SeparableFunction::Zero(const LatticeDomain& domain) {
  std::vector<std::vector<double>> tables(domain.n());
  for (int i = 0; i < domain.n(); ++i) tables[i].assign(domain.size(i) - 1, 0.0);
  return SeparableFunction(0.0, std::move(tables));
}

SeparableFunction SeparableFunction::FromLevelValues(
    double base, const std::vector<std::vector<double>>& levels) {
  double constant = base;
  std::vector<std::vector<double>> tables(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i].empty()) throw ArgumentError("empty level table");
    constant += levels[i][0];
    for (std::size_t j = 1; j < levels[i].size(); ++j) {
      tables[i].push_back(levels[i][j] - levels[i][j - 1]);
    }
  }
  return SeparableFunction(constant, std::move(tables));
}

double SeparableFunction::Prefix(int i, int level) const {
  double sum = 0.0;
  for (int j = 0; j < level; ++j) sum += tables_[i][j];
  return sum;
}

double SeparableFunction::operator()(std::span<const int> x) const {
  if (x.size() != tables_.size()) {
    throw DomainError("separable function evaluated at " + PointToString(x) +
                      " with wrong arity");
  }
  double value = constant_;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0 || x[i] > static_cast<int>(tables_[i].size())) {
      throw DomainError("separable function evaluated outside its tables at " +
                        PointToString(x));
    }
    value += Prefix(static_cast<int>(i), x[i]);
  }
  return value;
}

bool SeparableFunction::Matches(const LatticeDomain& domain) const {
  if (n() != domain.n()) return false;
  for (int i = 0; i < domain.n(); ++i) {
    if (static_cast<int>(tables_[i].size()) != domain.size(i) - 1) return false;
  }
  return true;
}

OracleFunction SeparableFunction::ToOracle(const LatticeDomain& domain) const {
  if (!Matches(domain)) {
    throw ArgumentError("separable tables do not match the domain");
  }
  return OracleFunction(domain, [s = *this](std::span<const int> x) {
    return s(x);
  });
}

SeparableFunction& SeparableFunction::operator+=(const SeparableFunction& other) {
  if (tables_.empty() && constant_ == 0.0) {
    *this = other;
    return *this;
  }
  if (other.tables_.size() != tables_.size()) {
    throw ArgumentError("adding separable functions of different arity");
  }
  constant_ += other.constant_;
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    if (other.tables_[i].size() != tables_[i].size()) {
      throw ArgumentError("adding separable functions of different shape");
    }
    for (std::size_t j = 0; j < tables_[i].size(); ++j) {
      tables_[i][j] += other.tables_[i][j];
    }
  }
  return *this;
}

SeparableFunction& SeparableFunction::operator-=(const SeparableFunction& other) {
  return *this += other * -1.0;
}

SeparableFunction& SeparableFunction::operator*=(double factor) {
  constant_ *= factor;
  for (auto& table : tables_) {
    for (double& w : table) w *= factor;
  }
  return *this;
}

SeparableFunction operator+(SeparableFunction a, const SeparableFunction& b) {
  return a += b;
}
SeparableFunction operator-(SeparableFunction a, const SeparableFunction& b) {
  return a -= b;
}
SeparableFunction operator*(SeparableFunction a, double factor) {
  return a *= factor;
}

OracleFunction Minus(const OracleFunction& f, const SeparableFunction& s) {
  if (!s.Matches(f.domain())) {
    throw ArgumentError("separable tables do not match the domain");
  }
  return OracleFunction(f.domain(),
                        [f, s](std::span<const int> x) { return f(x) - s(x); });
}

OracleFunction Plus(const OracleFunction& f, const SeparableFunction& s) {
  if (!s.Matches(f.domain())) {
    throw ArgumentError("separable tables do not match the domain");
  }
  return OracleFunction(f.domain(),
                        [f, s](std::span<const int> x) { return f(x) + s(x); });
}

double SecondDifferenceCross(const OracleFunction& f, std::span<const int> x,
                             int i, int j) {
  const LatticeDomain& d = f.domain();
  if (i == j) throw ArgumentError("cross second difference needs i != j");
  if (i < 0 || j < 0 || i >= d.n() || j >= d.n()) {
    throw DomainError("coordinate index out of range");
  }
  LatticePoint xi(x.begin(), x.end());
  LatticePoint xj = xi;
  LatticePoint xij = xi;
  xi[i] += 1;
  xj[j] += 1;
  xij[i] += 1;
  xij[j] += 1;
  d.RequireContains(x);
  d.RequireContains(xij);
  return f(xij) - f(xi) - f(xj) + f(x);
}

double SecondDifferenceWithin(const OracleFunction& f, std::span<const int> x,
                              int i) {
  const LatticeDomain& d = f.domain();
  if (i < 0 || i >= d.n()) throw DomainError("coordinate index out of range");
  LatticePoint x1(x.begin(), x.end());
  LatticePoint x2 = x1;
  x1[i] += 1;
  x2[i] += 2;
  d.RequireContains(x);
  d.RequireContains(x2);
  return f(x2) - 2.0 * f(x1) + f(x);
}

namespace {

// Tracks the largest violation seen so far.
class ViolationTracker {
 public:
  void Offer(const LatticePoint& x, int i, int j, double value,
             double magnitude) {
    if (verdict_.holds || magnitude > worst_) {
      verdict_.holds = false;
      verdict_.witness = Witness{x, i, j, value};
      worst_ = magnitude;
    }
  }
  Verdict& verdict() { return verdict_; }

 private:
  Verdict verdict_;
  double worst_ = 0.0;
};

Verdict ScanCross(const OracleFunction& f) {
  const LatticeDomain& d = f.domain();
  d.RequireEnumerable("submodularity check");
  ViolationTracker tracker;
  d.ForEachPoint([&](const LatticePoint& x) {
    for (int i = 0; i < d.n(); ++i) {
      if (x[i] + 1 >= d.size(i)) continue;
      for (int j = i + 1; j < d.n(); ++j) {
        if (x[j] + 1 >= d.size(j)) continue;
        const double diff = SecondDifferenceCross(f, x, i, j);
        if (diff > kCheckTolerance) tracker.Offer(x, i, j, diff, diff);
      }
    }
  });
  return tracker.verdict();
}

}  // namespace

Verdict CheckSubmodular(const OracleFunction& f) { return ScanCross(f); }

Verdict CheckDr(const OracleFunction& f) {
  Verdict verdict = ScanCross(f);
  if (!verdict.holds) return verdict;
  const LatticeDomain& d = f.domain();
  ViolationTracker tracker;
  d.ForEachPoint([&](const LatticePoint& x) {
    for (int i = 0; i < d.n(); ++i) {
      if (x[i] + 2 >= d.size(i)) continue;
      const double diff = SecondDifferenceWithin(f, x, i);
      if (diff > kCheckTolerance) tracker.Offer(x, i, -1, diff, diff);
    }
  });
  return tracker.verdict();
}

Verdict CheckMonotone(const OracleFunction& f) {
  const LatticeDomain& d = f.domain();
  d.RequireEnumerable("monotonicity check");
  ViolationTracker tracker;
  d.ForEachPoint([&](const LatticePoint& x) {
    const double fx = f(x);
    LatticePoint y = x;
    for (int i = 0; i < d.n(); ++i) {
      if (x[i] + 1 >= d.size(i)) continue;
      y[i] += 1;
      const double marginal = f(y) - fx;
      y[i] -= 1;
      if (marginal < -kCheckTolerance) {
        tracker.Offer(x, i, -1, marginal, -marginal);
      }
    }
  });
  return tracker.verdict();
}

}  // namespace dsmm
