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

#include "dsmm/upper_bounds.h"

#include <algorithm>
#include <string>

#include "dsmm/errors.h"

namespace dsmm {

std::string_view VariantName(UpperBoundVariant variant) {
  switch (variant) {
    case UpperBoundVariant::kGrow1:
      return "grow1";
    case UpperBoundVariant::kGrow2:
      return "grow2";
    case UpperBoundVariant::kTight1:
      return "tight1";
    case UpperBoundVariant::kTight2:
      return "tight2";
  }
  return "unknown";
}

UpperBoundVariant ParseVariant(std::string_view name) {
  if (name == "grow1") return UpperBoundVariant::kGrow1;
  if (name == "grow2") return UpperBoundVariant::kGrow2;
  if (name == "tight1") return UpperBoundVariant::kTight1;
  if (name == "tight2") return UpperBoundVariant::kTight2;
  throw ArgumentError("unknown upper bound variant '" + std::string(name) + "'");
}

double LambdaBruteForce(const OracleFunction& f) {
  const LatticeDomain& d = f.domain();
  d.RequireEnumerable("lambda estimation");
  double lambda = 0.0;
  d.ForEachPoint([&](const LatticePoint& x) {
    for (int i = 0; i < d.n(); ++i) {
      if (x[i] + 2 >= d.size(i)) continue;
      lambda = std::max(lambda, SecondDifferenceWithin(f, x, i));
    }
  });
  return lambda;
}

double LambdaQuadratic(const std::vector<std::vector<double>>& a) {
  double max_diag = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != a.size()) {
      throw ArgumentError("quadratic form matrix must be square");
    }
    max_diag = std::max(max_diag, a[i][i]);
  }
  return 2.0 * max_diag;
}

SeparableFunction QuadraticPart(const LatticeDomain& domain, double lambda) {
  std::vector<std::vector<double>> tables(domain.n());
  for (int i = 0; i < domain.n(); ++i) {
    for (int j = 1; j < domain.size(i); ++j) {
      tables[i].push_back(lambda * (2.0 * j - 1.0));
    }
  }
  return SeparableFunction(0.0, std::move(tables));
}

DrDecomposition DrSplit(const OracleFunction& f, double lambda) {
  if (!(lambda >= 0.0)) {
    throw ArgumentError("lambda must be non-negative, got " +
                        std::to_string(lambda));
  }
  SeparableFunction quad = QuadraticPart(f.domain(), lambda);
  OracleFunction residual = Minus(f, quad);
  return DrDecomposition{lambda, std::move(quad), std::move(residual)};
}

namespace {

LatticePoint Shifted(std::span<const int> x, int i, int delta) {
  LatticePoint y(x.begin(), x.end());
  y[i] += delta;
  return y;
}

}  // namespace

SeparableFunction ModularUpperBoundDr(const OracleFunction& h,
                                      std::span<const int> x,
                                      UpperBoundVariant variant) {
  const LatticeDomain& d = h.domain();
  d.RequireContains(x);
  if (variant != UpperBoundVariant::kGrow1 &&
      variant != UpperBoundVariant::kGrow2) {
    throw ArgumentError(std::string(VariantName(variant)) +
                        " is not separable; use UpperBoundDrOracle");
  }
  const bool grow1 = variant == UpperBoundVariant::kGrow1;
  const LatticePoint zero = d.Zero();
  const LatticePoint top = d.Top();
  const double hx = h(x);
  const double h_anchor_down = grow1 ? hx : h(top);
  const double h_anchor_up = grow1 ? h(zero) : hx;
  const std::span<const int> down_base = grow1 ? x : std::span<const int>(top);
  const std::span<const int> up_base = grow1 ? std::span<const int>(zero) : x;

  // levels[i][l]: contribution of coordinate i when y_i = l.
  std::vector<std::vector<double>> levels(d.n());
  for (int i = 0; i < d.n(); ++i) {
    levels[i].assign(d.size(i), 0.0);
    for (int l = 0; l < x[i]; ++l) {
      const int a = x[i] - l;
      levels[i][l] = -(h_anchor_down - h(Shifted(down_base, i, -a)));
    }
    for (int l = x[i] + 1; l < d.size(i); ++l) {
      const int b = l - x[i];
      levels[i][l] = h(Shifted(up_base, i, b)) - h_anchor_up;
    }
  }
  return SeparableFunction::FromLevelValues(hx, levels);
}

OracleFunction UpperBoundDrOracle(const OracleFunction& h,
                                  std::span<const int> x,
                                  UpperBoundVariant variant) {
  const LatticeDomain& d = h.domain();
  d.RequireContains(x);
  if (variant == UpperBoundVariant::kGrow1 ||
      variant == UpperBoundVariant::kGrow2) {
    return ModularUpperBoundDr(h, x, variant).ToOracle(d);
  }
  const LatticePoint anchor(x.begin(), x.end());
  const bool tight1 = variant == UpperBoundVariant::kTight1;
  return OracleFunction(d, [h, anchor, tight1](std::span<const int> y) {
    const int n = static_cast<int>(anchor.size());
    LatticePoint lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
      lo[i] = std::min(anchor[i], y[i]);
      hi[i] = std::max(anchor[i], y[i]);
    }
    const double hx = h(anchor);
    double value = hx;
    if (tight1) {
      const double h_lo = h(lo);
      for (int i = 0; i < n; ++i) {
        const int a = std::max(anchor[i] - y[i], 0);
        const int b = std::max(y[i] - anchor[i], 0);
        if (a > 0) value -= hx - h(Shifted(anchor, i, -a));
        if (b > 0) value += h(Shifted(lo, i, b)) - h_lo;
      }
    } else {
      const double h_hi = h(hi);
      for (int i = 0; i < n; ++i) {
        const int a = std::max(anchor[i] - y[i], 0);
        const int b = std::max(y[i] - anchor[i], 0);
        if (a > 0) value -= h_hi - h(Shifted(hi, i, -a));
        if (b > 0) value += h(Shifted(anchor, i, b)) - hx;
      }
    }
    return value;
  });
}

SeparableFunction UpperBoundFull(const OracleFunction& f, double lambda,
                                 std::span<const int> x,
                                 UpperBoundVariant variant) {
  const DrDecomposition split = DrSplit(f, lambda);
  return split.quad + ModularUpperBoundDr(split.residual, x, variant);
}

OracleFunction UpperBoundFullOracle(const OracleFunction& f, double lambda,
                                    std::span<const int> x,
                                    UpperBoundVariant variant) {
  const DrDecomposition split = DrSplit(f, lambda);
  return Plus(UpperBoundDrOracle(split.residual, x, variant), split.quad);
}

}  // namespace dsmm
