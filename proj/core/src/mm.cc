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

#include "dsmm/mm.h"

#include <algorithm>
#include <chrono>
#include <functional>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "dsmm/errors.h"

namespace dsmm {
namespace {

constexpr double kTiny = 1e-12;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Clock = std::chrono::steady_clock;

int Total(std::span<const int> x) { return std::accumulate(x.begin(), x.end(), 0); }

struct Candidate {
  LatticePoint x;
  double v = 0.0;
  double surrogate = kNaN;
  double surrogate_at_anchor = kNaN;
  std::string detail;
};

std::vector<UpperBoundVariant> Variants(UpperBoundPolicy policy) {
  switch (policy) {
    case UpperBoundPolicy::kGrow1:
      return {UpperBoundVariant::kGrow1};
    case UpperBoundPolicy::kGrow2:
      return {UpperBoundVariant::kGrow2};
    case UpperBoundPolicy::kTryBoth:
      break;
  }
  return {UpperBoundVariant::kGrow1, UpperBoundVariant::kGrow2};
}

double ResolveLambda(const DsProblem& p, const SolveOptions& options) {
  if (options.lambda) {
    if (*options.lambda < 0.0) throw ArgumentError("lambda must be >= 0");
    return *options.lambda;
  }
  if (p.f_lambda_hint) return *p.f_lambda_hint;
  if (!p.domain().Enumerable()) {
    throw ArgumentError(
        "no lambda for f: the domain is above the brute-force cap, supply "
        "one explicitly (--lambda)");
  }
  return LambdaBruteForce(p.f);
}

// Shared loop state and bookkeeping for the three algorithms.
class MmRun {
 public:
  MmRun(const DsProblem& p, const SolveOptions& options)
      : p_(p),
        options_(options),
        v_(p.V()),
        start_calls_f_(p.f.call_count()),
        start_calls_g_(p.g.call_count()),
        started_(Clock::now()) {
    if (options.max_iters < 1) throw ArgumentError("max_iters must be >= 1");
    if (!(options.epsilon >= 0.0)) throw ArgumentError("epsilon must be >= 0");
    report_.algorithm = options.algorithm;
    if (p.budget && options.algorithm != Algorithm::kModMod) {
      throw ArgumentError("a cardinality budget is only supported by modmod");
    }
    x_ = options.start ? *options.start : p.domain().Zero();
    p.domain().RequireContains(x_);
    if (p.budget && Total(x_) > *p.budget) {
      throw ArgumentError("start point violates the cardinality budget");
    }
    v_x_ = v_(x_);
    Record(0, x_, v_x_, kNaN, kNaN, true, "init", "");
  }

  const DsProblem& problem() const { return p_; }
  const SolveOptions& options() const { return options_; }
  const LatticePoint& x() const { return x_; }
  double v() const { return v_x_; }
  double Value(std::span<const int> x) const { return v_(x); }

  Chain PrimaryChain(int t) const {
    ChainMode mode = options_.chain;
    if (mode.kind == ChainMode::Kind::kRandomized) mode.seed += t;
    return ChainContaining(p_.domain(), x_, mode);
  }

  // Warm-compare: keep x_t unless the candidate is at least as good.
  Candidate WarmCompare(Candidate c) const {
    c.v = v_(c.x);
    if (c.v > v_x_) {
      c.x = x_;
      c.v = v_x_;
    }
    return c;
  }

  void Accept(int t, const Candidate& c, const char* move) {
    x_ = c.x;
    v_x_ = c.v;
    ++report_.accepted_moves;
    if (!first_move_value_) first_move_value_ = c.v;
    Record(t, x_, v_x_, c.surrogate, c.surrogate_at_anchor, true, move,
           c.detail);
  }

  void Stall(int t, const Candidate& c) {
    Record(t, x_, v_x_, c.surrogate, c.surrogate_at_anchor, false, "stall",
           c.detail);
  }

  SolveReport Finish(SolveStatus status,
                     std::optional<LocalMinCertificate> certificate) {
    report_.status = status;
    report_.certificate = std::move(certificate);
    report_.minimizer = x_;
    report_.value = v_x_;
    report_.calls_f = p_.f.call_count() - start_calls_f_;
    report_.calls_g = p_.g.call_count() - start_calls_g_;
    if (options_.epsilon > 0.0 && p_.domain().Enumerable()) {
      report_.predicted_bound = PredictedIterationBound(
          p_, options_.epsilon,
          first_move_value_ ? *first_move_value_ : report_.iterates[0].v);
    }
    return std::move(report_);
  }

  SolveReport& report() { return report_; }

 private:
  void Record(int t, const LatticePoint& x, double v, double surrogate,
              double surrogate_at_anchor, bool accepted, const char* move,
              const std::string& detail) {
    IterateRecord r;
    r.t = t;
    r.x = x;
    r.v = v;
    r.f = p_.f(x);
    r.g = p_.g(x);
    r.surrogate = surrogate;
    r.surrogate_at_anchor = surrogate_at_anchor;
    r.accepted = accepted;
    r.move = move;
    r.detail = detail;
    r.calls_f = p_.f.call_count() - start_calls_f_;
    r.calls_g = p_.g.call_count() - start_calls_g_;
    r.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - started_)
                    .count();
    report_.iterates.push_back(std::move(r));
  }

  const DsProblem& p_;
  const SolveOptions& options_;
  OracleFunction v_;
  std::uint64_t start_calls_f_;
  std::uint64_t start_calls_g_;
  Clock::time_point started_;
  LatticePoint x_;
  double v_x_ = 0.0;
  std::optional<double> first_move_value_;
  SolveReport report_;
};

// A proposal generator: given the run state, an attempt index, and whether
// the loop is in the fallback sweep, returns the candidates to try in order.
using Proposer = std::function<std::vector<Candidate>(MmRun&, int t, bool fallback)>;

SolveReport RunLoop(MmRun& run, const Proposer& propose) {
  const SolveOptions& options = run.options();
  for (int t = 1; t <= options.max_iters; ++t) {
    std::optional<Candidate> best_attempt;
    bool moved = false;
    for (bool fallback : {false, true}) {
      for (Candidate& c : propose(run, t, fallback)) {
        if (AcceptStep(run.v(), c.v, options.epsilon)) {
          run.Accept(t, c, fallback ? "family" : "mm");
          moved = true;
          break;
        }
        if (!best_attempt) best_attempt = std::move(c);
      }
      if (moved) break;
    }
    if (moved) continue;

    LocalMinCertificate cert = CertifyLocalMinimum(run.problem(), run.x());
    if (cert.passed) {
      if (best_attempt) run.Stall(t, *best_attempt);
      return run.Finish(SolveStatus::kCertifiedLocalMin, std::move(cert));
    }
    const NeighborCheck& down = *cert.descending;
    if (AcceptStep(run.v(), down.v, options.epsilon)) {
      Candidate c;
      c.x = down.point;
      c.v = down.v;
      c.detail = "coordinate " + std::to_string(down.coordinate) +
                 (down.direction > 0 ? " +1" : " -1");
      run.Accept(t, c, "neighbor");
      continue;
    }
    if (best_attempt) run.Stall(t, *best_attempt);
    return run.Finish(SolveStatus::kConverged, std::nullopt);
  }
  return run.Finish(SolveStatus::kIterBudget, std::nullopt);
}

std::string ChainLabel(const char* prefix, std::size_t index) {
  return std::string(prefix) + std::to_string(index);
}

}  // namespace

std::string_view AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kSubSup:
      return "subsup";
    case Algorithm::kSupSub:
      return "supsub";
    case Algorithm::kModMod:
      return "modmod";
  }
  return "unknown";
}

Algorithm ParseAlgorithm(std::string_view name) {
  if (name == "subsup") return Algorithm::kSubSup;
  if (name == "supsub") return Algorithm::kSupSub;
  if (name == "modmod") return Algorithm::kModMod;
  throw ArgumentError("unknown algorithm '" + std::string(name) + "'");
}

std::string_view PolicyName(UpperBoundPolicy policy) {
  switch (policy) {
    case UpperBoundPolicy::kTryBoth:
      return "try_both";
    case UpperBoundPolicy::kGrow1:
      return "grow1";
    case UpperBoundPolicy::kGrow2:
      return "grow2";
  }
  return "unknown";
}

UpperBoundPolicy ParsePolicy(std::string_view name) {
  if (name == "try_both") return UpperBoundPolicy::kTryBoth;
  if (name == "grow1") return UpperBoundPolicy::kGrow1;
  if (name == "grow2") return UpperBoundPolicy::kGrow2;
  throw ArgumentError("unknown upper bound policy '" + std::string(name) + "'");
}

std::string_view StatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kConverged:
      return "converged";
    case SolveStatus::kIterBudget:
      return "iter_budget";
    case SolveStatus::kCertifiedLocalMin:
      return "certified_local_min";
  }
  return "unknown";
}

bool AcceptStep(double v_old, double v_new, double epsilon) {
  if (epsilon == 0.0) return v_new < v_old - kTiny;
  return v_new <= v_old - epsilon * std::max(std::abs(v_old), kTiny);
}

LocalMinCertificate CertifyLocalMinimum(const DsProblem& p,
                                        std::span<const int> x) {
  const LatticeDomain& d = p.domain();
  d.RequireContains(x);
  const OracleFunction v = p.V();
  LocalMinCertificate cert;
  cert.x.assign(x.begin(), x.end());
  cert.v = v(x);
  cert.passed = true;
  const int total = Total(x);
  for (int i = 0; i < d.n(); ++i) {
    for (int dir : {-1, +1}) {
      const int level = x[i] + dir;
      if (level < 0 || level >= d.size(i)) continue;
      if (dir > 0 && p.budget && total + 1 > *p.budget) continue;
      NeighborCheck check;
      check.coordinate = i;
      check.direction = dir;
      check.point = cert.x;
      check.point[i] = level;
      check.v = v(check.point);
      if (check.v < cert.v - kTiny) {
        cert.passed = false;
        if (!cert.descending || check.v < cert.descending->v) {
          cert.descending = check;
        }
      }
      cert.neighbors.push_back(std::move(check));
    }
  }
  cert.chain_family = AdjacentChainFamily(d, x);
  return cert;
}

IterationBound PredictedIterationBound(const DsProblem& p, double epsilon,
                                       double v_first) {
  if (!(epsilon > 0.0)) {
    throw ArgumentError("the iteration bound needs epsilon > 0");
  }
  const DsDecomposition dec = DecomposeProblem(p);
  const LatticeDomain& d = p.domain();
  // Absorb the modular term: positive increments join f', negative ones g',
  // so that min v >= f''(0) - g''(top).
  double negative_mass = 0.0;
  for (const auto& table : dec.k.tables()) {
    for (double w : table) negative_mass += std::max(-w, 0.0);
  }
  IterationBound out;
  out.big_m = dec.f_prime(d.Zero()) - (dec.g_prime(d.Top()) + negative_mass);
  out.small_m = v_first;
  if (out.small_m == 0.0 || out.big_m == 0.0) {
    out.bound = 0.0;
  } else {
    out.bound = std::log(std::abs(out.big_m) / std::abs(out.small_m)) / epsilon;
  }
  return out;
}

SolveReport SubSup(const DsProblem& p, const SolveOptions& options) {
  SolveOptions opts = options;
  opts.algorithm = Algorithm::kSubSup;
  MmRun run(p, opts);
  const Proposer propose = [](MmRun& r, int t, bool fallback) {
    const DsProblem& prob = r.problem();
    std::vector<Chain> chains;
    if (fallback) {
      chains = AdjacentChainFamily(prob.domain(), r.x());
    } else {
      chains.push_back(r.PrimaryChain(t));
    }
    std::vector<Candidate> out;
    for (std::size_t c = 0; c < chains.size(); ++c) {
      const SeparableFunction h = LowerBound(prob.g, r.x(), chains[c]);
      const OracleFunction surrogate = Minus(prob.f, h);
      const SfmResult sfm = MinimizeSubmodular(surrogate, r.options().sfm);
      Candidate cand;
      cand.x = sfm.minimizer;
      cand.surrogate = sfm.value;
      cand.surrogate_at_anchor = surrogate(r.x());
      cand.detail = ChainLabel(fallback ? "family" : "chain", c);
      out.push_back(r.WarmCompare(std::move(cand)));
    }
    return out;
  };
  return RunLoop(run, propose);
}

SolveReport SupSub(const DsProblem& p, const SolveOptions& options) {
  SolveOptions opts = options;
  opts.algorithm = Algorithm::kSupSub;
  MmRun run(p, opts);
  const double lambda = ResolveLambda(p, opts);
  run.report().lambda = lambda;
  const Proposer propose = [lambda](MmRun& r, int, bool fallback) {
    std::vector<Candidate> out;
    // Both bound variants are already tried on the first pass.
    if (fallback) return out;
    const DsProblem& prob = r.problem();
    for (UpperBoundVariant variant : Variants(r.options().ub_policy)) {
      const SeparableFunction m = UpperBoundFull(prob.f, lambda, r.x(), variant);
      const OracleFunction gain = Minus(prob.g, m);
      const PointValue best = MaximizeSubmodularDoubleGreedy(gain);
      Candidate cand;
      cand.x = best.point;
      cand.surrogate = -best.value;
      cand.surrogate_at_anchor = m(r.x()) - prob.g(r.x());
      cand.detail = std::string(VariantName(variant));
      out.push_back(r.WarmCompare(std::move(cand)));
    }
    return out;
  };
  return RunLoop(run, propose);
}

SolveReport ModMod(const DsProblem& p, const SolveOptions& options) {
  SolveOptions opts = options;
  opts.algorithm = Algorithm::kModMod;
  MmRun run(p, opts);
  const double lambda = ResolveLambda(p, opts);
  run.report().lambda = lambda;
  const Proposer propose = [lambda](MmRun& r, int t, bool fallback) {
    const DsProblem& prob = r.problem();
    std::vector<Chain> chains;
    if (fallback) {
      chains = AdjacentChainFamily(prob.domain(), r.x());
    } else {
      chains.push_back(r.PrimaryChain(t));
    }
    std::vector<Candidate> out;
    for (UpperBoundVariant variant : Variants(r.options().ub_policy)) {
      const SeparableFunction m = UpperBoundFull(prob.f, lambda, r.x(), variant);
      for (std::size_t c = 0; c < chains.size(); ++c) {
        const SeparableFunction surrogate =
            m - LowerBound(prob.g, r.x(), chains[c]);
        const PointValue best =
            prob.budget ? MinimizeSeparableCardinality(surrogate, prob.domain(),
                                                       *prob.budget)
                        : MinimizeSeparable(surrogate, prob.domain());
        Candidate cand;
        cand.x = best.point;
        cand.surrogate = best.value;
        cand.surrogate_at_anchor = surrogate(r.x());
        cand.detail = std::string(VariantName(variant)) + "/" +
                      ChainLabel(fallback ? "family" : "chain", c);
        out.push_back(r.WarmCompare(std::move(cand)));
      }
    }
    return out;
  };
  return RunLoop(run, propose);
}

SolveReport Solve(const DsProblem& p, const SolveOptions& options) {
  switch (options.algorithm) {
    case Algorithm::kSubSup:
      return SubSup(p, options);
    case Algorithm::kSupSub:
      return SupSub(p, options);
    case Algorithm::kModMod:
      return ModMod(p, options);
  }
  throw ArgumentError("unknown algorithm");
}

}  // namespace dsmm
