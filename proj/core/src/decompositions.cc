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

#include "dsmm/decompositions.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "dsmm/errors.h"
#include "dsmm/solvers.h"
#include "dsmm/upper_bounds.h"

namespace dsmm {

DsProblem MakeProblem(OracleFunction f, OracleFunction g) {
  if (!(f.domain() == g.domain())) {
    throw ArgumentError("f and g must share a domain");
  }
  return DsProblem{std::move(f), std::move(g), {}, std::nullopt, std::nullopt};
}

namespace {

LatticePoint Lowered(const LatticePoint& x, int i, int by) {
  LatticePoint y = x;
  y[i] -= by;
  return y;
}

MonotoneDecomposition Finish(const OracleFunction& f,
                             SeparableFunction modular,
                             MonotoneDecomposition::Method method) {
  OracleFunction monotone = Minus(f, modular);
  std::optional<Verdict> verdict;
  if (f.domain().Enumerable()) verdict = CheckMonotone(monotone);
  return MonotoneDecomposition{std::move(modular), std::move(monotone), method,
                               std::move(verdict)};
}

}  // namespace

MonotoneDecomposition MinMarginalDecomposition(const OracleFunction& f,
                                               bool verify) {
  const LatticeDomain& d = f.domain();
  if (verify) {
    const Verdict dr = CheckDr(f);
    if (!dr.holds) {
      throw ValidationError(
          "min-marginal decomposition needs a DR-submodular input; violation "
          "at " +
          PointToString(dr.witness->x));
    }
  }
  const LatticePoint top = d.Top();
  const double f_top = f(top);
  std::vector<std::vector<double>> tables(d.n());
  for (int k = 0; k < d.n(); ++k) {
    const double delta = f_top - f(Lowered(top, k, 1));
    tables[k].assign(d.size(k) - 1, delta);
  }
  SeparableFunction modular(f(d.Zero()), std::move(tables));
  return Finish(f, std::move(modular),
                MonotoneDecomposition::Method::kMinMarginal);
}

MonotoneDecomposition HarmonicDecomposition(const OracleFunction& f) {
  const LatticeDomain& d = f.domain();
  const LatticePoint top = d.Top();
  const double f_top = f(top);
  std::vector<std::vector<double>> tables(d.n());
  for (int k = 0; k < d.n(); ++k) {
    for (int j = 1; j < d.size(k); ++j) {
      const double m_jk = f_top - f(Lowered(top, k, j));
      tables[k].push_back(m_jk / j);
    }
  }
  SeparableFunction modular(f(d.Zero()), std::move(tables));
  return Finish(f, std::move(modular), MonotoneDecomposition::Method::kHarmonic);
}

MonotoneSubmodularSplit SplitMonotoneSubmodular(
    const OracleFunction& f, std::optional<double> lambda_hint) {
  const double lambda = lambda_hint ? *lambda_hint : LambdaBruteForce(f);
  DrDecomposition split = DrSplit(f, lambda);
  MonotoneDecomposition mono = MinMarginalDecomposition(split.residual);
  SeparableFunction modular = split.quad + mono.modular_part;
  OracleFunction residual = Minus(f, modular);
  return MonotoneSubmodularSplit{std::move(modular), std::move(residual),
                                 lambda};
}

DsDecomposition DecomposeProblem(const DsProblem& p) {
  const MonotoneSubmodularSplit fs = SplitMonotoneSubmodular(p.f, p.f_lambda_hint);
  const MonotoneSubmodularSplit gs = SplitMonotoneSubmodular(p.g);
  const SeparableFunction modular = fs.modular - gs.modular;
  // The constant v(0) rides on f'.
  const SeparableFunction offset(modular.constant(),
                                 SeparableFunction::Zero(p.domain()).tables());
  return DsDecomposition{Plus(fs.monotone_submodular, offset),
                         gs.monotone_submodular,
                         SeparableFunction(0.0, modular.tables())};
}

AdditiveBounds AdditiveLowerBounds(const DsProblem& p) {
  const DsDecomposition dec = DecomposeProblem(p);
  const LatticeDomain& d = p.domain();
  AdditiveBounds bounds;
  const double f0 = dec.f_prime(d.Zero());
  const double g_top = dec.g_prime(d.Top());
  bounds.reference = f0 - g_top;

  double modular_min = 0.0;
  for (int i = 0; i < d.n(); ++i) {
    double best = 0.0;
    for (int l = 1; l < d.size(i); ++l) best = std::min(best, dec.k.Prefix(i, l));
    modular_min += best;
  }
  bounds.bound2 = bounds.reference + modular_min;

  try {
    const SfmResult inner = MinimizeSubmodular(Plus(dec.f_prime, dec.k));
    bounds.bound1 = inner.value - g_top;
  } catch (const Error& e) {
    bounds.bound1_error = e.what();
  }
  return bounds;
}

SecondDifferenceExtreme SecondDifferenceExtremes(const OracleFunction& v) {
  const LatticeDomain& d = v.domain();
  d.RequireEnumerable("second difference scan");
  SecondDifferenceExtreme result;
  d.ForEachPoint([&](const LatticePoint& x) {
    for (int i = 0; i < d.n(); ++i) {
      if (x[i] + 1 >= d.size(i)) continue;
      for (int j = i + 1; j < d.n(); ++j) {
        if (x[j] + 1 >= d.size(j)) continue;
        const double diff = SecondDifferenceCross(v, x, i, j);
        if (!result.witness || std::abs(diff) > result.n_max) {
          result.n_max = std::abs(diff);
          result.witness = Witness{x, i, j, diff};
        }
      }
    }
  });
  return result;
}

ReferenceQuadratic MakeReferenceQuadratic(const LatticeDomain& domain) {
  if (domain.n() < 2) {
    throw ArgumentError(
        "the reference quadratic needs at least two coordinates");
  }
  OracleFunction g(domain, [](std::span<const int> x) {
    double squares = 0.0;
    double linear = 0.0;
    double cross = 0.0;
    for (int xi : x) {
      squares += static_cast<double>(xi) * xi;
      cross += linear * xi;
      linear += xi;
    }
    return squares - 4.0 * cross;
  });
  return ReferenceQuadratic{std::move(g), 4.0};
}

DsProblem DsConstruct(const OracleFunction& v, const OracleFunction& g_ref,
                      double m_ref, double n_bound) {
  if (!(m_ref > 0.0)) throw ArgumentError("m_ref must be positive");
  if (!(n_bound >= 0.0)) throw ArgumentError("n_bound must be non-negative");
  if (!(v.domain() == g_ref.domain())) {
    throw ArgumentError("v and the reference function must share a domain");
  }
  const double scale = n_bound / m_ref;
  OracleFunction g = Scaled(g_ref, scale);
  OracleFunction f(v.domain(), [v, g](std::span<const int> x) {
    return v(x) + g(x);
  });
  if (v.domain().Enumerable()) {
    for (const OracleFunction* part : {&f, &g}) {
      const Verdict verdict = CheckSubmodular(*part);
      if (!verdict.holds) {
        const Witness& w = *verdict.witness;
        throw ValidationError(
            std::string("constructed ") + (part == &f ? "f" : "g") +
            " is not submodular: cross difference " + std::to_string(w.value) +
            " at " + PointToString(w.x) + " (i=" + std::to_string(w.i) +
            ", j=" + std::to_string(w.j) + "); n_bound is too small");
      }
    }
  }
  DsProblem p = MakeProblem(std::move(f), std::move(g));
  p.provenance.kind = Provenance::Kind::kConstructed;
  p.provenance.n_bound = n_bound;
  p.provenance.m_ref = m_ref;
  p.provenance.reference = "reference_quadratic";
  return p;
}

DsProblem AutoSplit(const OracleFunction& v) {
  const SecondDifferenceExtreme extreme = SecondDifferenceExtremes(v);
  const ReferenceQuadratic ref = MakeReferenceQuadratic(v.domain());
  return DsConstruct(v, ref.g, ref.m_ref, extreme.n_max);
}

}  // namespace dsmm
