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

#include "dsmm/problem.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "dsmm/upper_bounds.h"

namespace dsmm {
namespace {

using nlohmann::json;

// Field accessors that report the JSON path on failure.
class Reader {
 public:
  Reader(const json& node, std::string path)
      : node_(node), path_(std::move(path)) {}

  const json& node() const { return node_; }
  const std::string& path() const { return path_; }

  bool Has(const char* key) const {
    return node_.is_object() && node_.contains(key) && !node_[key].is_null();
  }

  Reader Child(const char* key) const {
    if (!Has(key)) throw ParseError(Join(key), "missing required field");
    return Reader(node_[key], Join(key));
  }

  Reader At(std::size_t index) const {
    return Reader(node_[index], path_ + "[" + std::to_string(index) + "]");
  }

  double Number() const {
    if (!node_.is_number()) throw ParseError(path_, "expected a number");
    const double value = node_.get<double>();
    if (!std::isfinite(value)) throw ParseError(path_, "expected a finite number");
    return value;
  }

  int Integer() const {
    if (!node_.is_number_integer()) throw ParseError(path_, "expected an integer");
    return node_.get<int>();
  }

  std::string String() const {
    if (!node_.is_string()) throw ParseError(path_, "expected a string");
    return node_.get<std::string>();
  }

  bool Bool() const {
    if (!node_.is_boolean()) throw ParseError(path_, "expected true or false");
    return node_.get<bool>();
  }

  std::size_t ArraySize() const {
    if (!node_.is_array()) throw ParseError(path_, "expected an array");
    return node_.size();
  }

  std::vector<double> Numbers() const {
    std::vector<double> out(ArraySize());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = At(i).Number();
    return out;
  }

  std::vector<std::vector<double>> Matrix() const {
    std::vector<std::vector<double>> out(ArraySize());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = At(i).Numbers();
    return out;
  }

 private:
  std::string Join(const char* key) const {
    return path_.empty() ? std::string(key) : path_ + "." + key;
  }

  const json& node_;
  std::string path_;
};

ConcaveShape ParseShape(const Reader& r) {
  const std::string name = r.String();
  if (name == "sqrt") return ConcaveShape::kSqrt;
  if (name == "log1p") return ConcaveShape::kLog1p;
  if (name == "saturate") return ConcaveShape::kSaturate;
  throw ParseError(r.path(), "unknown concave shape '" + name + "'");
}

double ApplyShape(ConcaveShape shape, double z) {
  switch (shape) {
    case ConcaveShape::kSqrt:
      return std::sqrt(z);
    case ConcaveShape::kLog1p:
      return std::log1p(z);
    case ConcaveShape::kSaturate:
      return 1.0 - std::exp(-z);
  }
  return 0.0;
}

CoverageSpec ParseCoverage(const Reader& r) {
  CoverageSpec spec;
  spec.probabilities = r.Child("probabilities").Matrix();
  spec.region_weights = r.Child("region_weights").Numbers();
  return spec;
}

FunctionSpec ParseFunction(const Reader& r) {
  if (!r.node().is_object()) throw ParseError(r.path(), "expected an object");
  const std::string type = r.Child("type").String();
  if (type == "table") {
    return TableSpec{r.Child("values").Numbers()};
  }
  if (type == "quadratic") {
    QuadraticSpec spec;
    spec.a = r.Child("A").Matrix();
    if (r.Has("b")) spec.b = r.Child("b").Numbers();
    if (r.Has("c")) spec.c = r.Child("c").Number();
    return spec;
  }
  if (type == "separable") {
    SeparableSpec spec;
    if (r.Has("constant")) spec.constant = r.Child("constant").Number();
    spec.increments = r.Child("increments").Matrix();
    return spec;
  }
  if (type == "concave_of_linear") {
    ConcaveOfLinearSpec spec;
    if (r.Has("constant")) spec.constant = r.Child("constant").Number();
    const Reader terms = r.Child("terms");
    for (std::size_t t = 0; t < terms.ArraySize(); ++t) {
      const Reader term = terms.At(t);
      ConcaveOfLinearSpec::Term out;
      if (term.Has("coef")) out.coef = term.Child("coef").Number();
      out.weights = term.Child("weights").Numbers();
      if (term.Has("shape")) out.shape = ParseShape(term.Child("shape"));
      spec.terms.push_back(std::move(out));
    }
    return spec;
  }
  if (type == "coverage") return ParseCoverage(r);
  throw ParseError(r.path() + ".type", "unknown function type '" + type + "'");
}

json FunctionToJson(const FunctionSpec& spec) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TableSpec>) {
          return {{"type", "table"}, {"values", s.values}};
        } else if constexpr (std::is_same_v<T, QuadraticSpec>) {
          return {{"type", "quadratic"}, {"A", s.a}, {"b", s.b}, {"c", s.c}};
        } else if constexpr (std::is_same_v<T, SeparableSpec>) {
          return {{"type", "separable"},
                  {"constant", s.constant},
                  {"increments", s.increments}};
        } else if constexpr (std::is_same_v<T, ConcaveOfLinearSpec>) {
          json terms = json::array();
          for (const auto& t : s.terms) {
            terms.push_back({{"coef", t.coef},
                             {"weights", t.weights},
                             {"shape", ConcaveShapeName(t.shape)}});
          }
          return {{"type", "concave_of_linear"},
                  {"constant", s.constant},
                  {"terms", terms}};
        } else {
          return {{"type", "coverage"},
                  {"probabilities", s.probabilities},
                  {"region_weights", s.region_weights}};
        }
      },
      spec);
}

void RequireShape(const std::string& path, std::size_t got, std::size_t want,
                  const char* what) {
  if (got != want) {
    throw ParseError(path, std::string(what) + " has " + std::to_string(got) +
                               " entries, expected " + std::to_string(want));
  }
}

void ValidateCoverage(const CoverageSpec& spec, const LatticeDomain& domain,
                      const std::string& path) {
  RequireShape(path + ".probabilities", spec.probabilities.size(),
               static_cast<std::size_t>(domain.n()), "probabilities");
  for (std::size_t i = 0; i < spec.probabilities.size(); ++i) {
    RequireShape(path + ".probabilities[" + std::to_string(i) + "]",
                 spec.probabilities[i].size(), spec.region_weights.size(),
                 "probability row");
    for (std::size_t r = 0; r < spec.probabilities[i].size(); ++r) {
      const double p = spec.probabilities[i][r];
      if (!(p >= 0.0 && p <= 1.0)) {
        throw ParseError(path + ".probabilities[" + std::to_string(i) + "][" +
                             std::to_string(r) + "]",
                         "probability must lie in [0, 1]");
      }
    }
  }
  for (std::size_t r = 0; r < spec.region_weights.size(); ++r) {
    if (!(spec.region_weights[r] >= 0.0)) {
      throw ParseError(path + ".region_weights[" + std::to_string(r) + "]",
                       "region weight must be >= 0");
    }
  }
}

OracleFunction CoverageOracle(const CoverageSpec& spec,
                              const LatticeDomain& domain) {
  return OracleFunction(domain, [spec](std::span<const int> x) {
    double total = 0.0;
    for (std::size_t r = 0; r < spec.region_weights.size(); ++r) {
      double miss = 1.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        miss *= std::pow(1.0 - spec.probabilities[i][r], x[i]);
      }
      total += spec.region_weights[r] * (1.0 - miss);
    }
    return total;
  });
}

OracleFunction BuildChecked(const FunctionSpec& spec,
                            const LatticeDomain& domain,
                            const std::string& path) {
  return std::visit(
      [&](const auto& s) -> OracleFunction {
        using T = std::decay_t<decltype(s)>;
        const auto n = static_cast<std::size_t>(domain.n());
        if constexpr (std::is_same_v<T, TableSpec>) {
          if (!domain.NumPoints() || *domain.NumPoints() != s.values.size()) {
            throw ParseError(path + ".values",
                             "table has " + std::to_string(s.values.size()) +
                                 " values; the domain has " +
                                 (domain.NumPoints()
                                      ? std::to_string(*domain.NumPoints())
                                      : std::string("too many")) +
                                 " points");
          }
          return TableOracle(domain, s.values);
        } else if constexpr (std::is_same_v<T, QuadraticSpec>) {
          RequireShape(path + ".A", s.a.size(), n, "A");
          for (std::size_t i = 0; i < n; ++i) {
            RequireShape(path + ".A[" + std::to_string(i) + "]", s.a[i].size(),
                         n, "A row");
          }
          std::vector<double> b = s.b;
          if (b.empty()) b.assign(n, 0.0);
          RequireShape(path + ".b", b.size(), n, "b");
          return OracleFunction(domain, [a = s.a, b, c = s.c](
                                            std::span<const int> x) {
            double value = c;
            for (std::size_t i = 0; i < x.size(); ++i) {
              value += b[i] * x[i];
              for (std::size_t j = 0; j < x.size(); ++j) {
                value += a[i][j] * x[i] * x[j];
              }
            }
            return value;
          });
        } else if constexpr (std::is_same_v<T, SeparableSpec>) {
          SeparableFunction sep(s.constant, s.increments);
          if (!sep.Matches(domain)) {
            throw ParseError(path + ".increments",
                             "need one row of k_i - 1 increments per coordinate");
          }
          return sep.ToOracle(domain);
        } else if constexpr (std::is_same_v<T, ConcaveOfLinearSpec>) {
          for (std::size_t t = 0; t < s.terms.size(); ++t) {
            const std::string tp = path + ".terms[" + std::to_string(t) + "]";
            RequireShape(tp + ".weights", s.terms[t].weights.size(), n, "weights");
            if (!(s.terms[t].coef >= 0.0)) {
              throw ParseError(tp + ".coef", "coefficient must be >= 0");
            }
            for (double w : s.terms[t].weights) {
              if (!(w >= 0.0)) throw ParseError(tp + ".weights", "weights must be >= 0");
            }
          }
          return OracleFunction(domain, [s](std::span<const int> x) {
            double value = s.constant;
            for (const auto& term : s.terms) {
              double z = 0.0;
              for (std::size_t i = 0; i < x.size(); ++i) z += term.weights[i] * x[i];
              value += term.coef * ApplyShape(term.shape, z);
            }
            return value;
          });
        } else {
          ValidateCoverage(s, domain, path);
          return CoverageOracle(s, domain);
        }
      },
      spec);
}

std::optional<double> LambdaHint(const FunctionSpec& spec) {
  if (const auto* q = std::get_if<QuadraticSpec>(&spec)) return LambdaQuadratic(q->a);
  if (std::holds_alternative<ConcaveOfLinearSpec>(spec) ||
      std::holds_alternative<CoverageSpec>(spec) ||
      std::holds_alternative<SeparableSpec>(spec)) {
    // DR inputs; separable ones have no cross terms but may be convex.
    if (const auto* s = std::get_if<SeparableSpec>(&spec)) {
      double lambda = 0.0;
      for (const auto& row : s->increments) {
        for (std::size_t j = 1; j < row.size(); ++j) {
          lambda = std::max(lambda, row[j] - row[j - 1]);
        }
      }
      return lambda;
    }
    return 0.0;
  }
  return std::nullopt;
}

void ValidateComponent(const OracleFunction& fn, const char* name,
                       std::vector<std::string>& warnings) {
  if (!fn.domain().Enumerable()) {
    warnings.push_back(std::string(name) +
                       ": domain above the brute-force cap; submodularity not "
                       "verified");
    return;
  }
  const Verdict verdict = CheckSubmodular(fn);
  if (!verdict.holds) {
    const Witness& w = *verdict.witness;
    throw ValidationError(std::string(name) +
                          " is not submodular: cross second difference " +
                          std::to_string(w.value) + " at x=" +
                          PointToString(w.x) + ", i=" + std::to_string(w.i) +
                          ", j=" + std::to_string(w.j));
  }
}

}  // namespace

std::string_view ConcaveShapeName(ConcaveShape shape) {
  switch (shape) {
    case ConcaveShape::kSqrt:
      return "sqrt";
    case ConcaveShape::kLog1p:
      return "log1p";
    case ConcaveShape::kSaturate:
      return "saturate";
  }
  return "unknown";
}

OracleFunction BuildFunction(const FunctionSpec& spec,
                             const LatticeDomain& domain) {
  return BuildChecked(spec, domain, "function");
}

LoadedProblem BuildProblem(const ProblemSpec& spec, const BuildOptions& options) {
  if (spec.version != kProblemFormatVersion) {
    throw ParseError("version", "unsupported version " +
                                    std::to_string(spec.version));
  }
  std::optional<LatticeDomain> maybe_domain;
  try {
    maybe_domain.emplace(spec.sizes);
  } catch (const ArgumentError& e) {
    throw ParseError("domain", e.what());
  }
  const LatticeDomain& domain = *maybe_domain;
  std::vector<std::string> warnings;

  std::optional<DsProblem> problem;
  if (spec.coverage_tradeoff) {
    if (spec.f || spec.g || spec.v) {
      throw ParseError("coverage_tradeoff",
                       "cannot be combined with f, g or v");
    }
    const CoverageTradeoffSpec& ct = *spec.coverage_tradeoff;
    ValidateCoverage(ct.coverage, domain, "coverage_tradeoff");
    RequireShape("coverage_tradeoff.cost_tables", ct.cost_tables.size(),
                 static_cast<std::size_t>(domain.n()), "cost_tables");
    for (int i = 0; i < domain.n(); ++i) {
      RequireShape("coverage_tradeoff.cost_tables[" + std::to_string(i) + "]",
                   ct.cost_tables[i].size(),
                   static_cast<std::size_t>(domain.size(i)), "cost table");
    }
    if (!(ct.lambda_cost >= 0.0)) {
      throw ParseError("coverage_tradeoff.lambda_cost", "must be >= 0");
    }
    SeparableFunction cost =
        SeparableFunction::FromLevelValues(0.0, ct.cost_tables) * ct.lambda_cost;
    double lambda = 0.0;
    for (const auto& row : cost.tables()) {
      for (std::size_t j = 1; j < row.size(); ++j) {
        lambda = std::max(lambda, row[j] - row[j - 1]);
      }
    }
    problem = MakeProblem(cost.ToOracle(domain),
                          CoverageOracle(ct.coverage, domain));
    problem->f_lambda_hint = lambda;
  } else if (spec.v) {
    if (spec.f || spec.g) throw ParseError("v", "cannot be combined with f or g");
    if (!spec.auto_split) {
      throw ParseError("auto_split",
                       "a raw objective v needs auto_split: true to be solved");
    }
    problem = AutoSplit(BuildChecked(*spec.v, domain, "v"));
  } else {
    if (!spec.f) throw ParseError("f", "missing required field");
    if (!spec.g) throw ParseError("g", "missing required field");
    OracleFunction f = BuildChecked(*spec.f, domain, "f");
    OracleFunction g = BuildChecked(*spec.g, domain, "g");
    problem = MakeProblem(std::move(f), std::move(g));
    problem->f_lambda_hint = LambdaHint(*spec.f);
    if (options.validate) {
      ValidateComponent(problem->f, "f", warnings);
      ValidateComponent(problem->g, "g", warnings);
    }
  }
  if (spec.budget) {
    if (*spec.budget < 0) throw ParseError("budget", "must be >= 0");
    problem->budget = spec.budget;
  }
  return LoadedProblem{std::move(*problem), std::move(warnings)};
}

ProblemSpec ParseProblemSpec(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("$", std::string("malformed JSON: ") + e.what());
  }
  const Reader r(root, "");
  if (!root.is_object()) throw ParseError("$", "expected a JSON object");
  ProblemSpec spec;
  spec.version = r.Child("version").Integer();
  if (spec.version != kProblemFormatVersion) {
    throw ParseError("version",
                     "unsupported version " + std::to_string(spec.version));
  }
  if (r.Has("name")) spec.name = r.Child("name").String();
  const Reader sizes = r.Child("domain");
  for (std::size_t i = 0; i < sizes.ArraySize(); ++i) {
    const int k = sizes.At(i).Integer();
    if (k < 2) {
      throw ParseError("domain[" + std::to_string(i) + "]",
                       "every coordinate needs at least 2 levels");
    }
    spec.sizes.push_back(k);
  }
  if (spec.sizes.empty()) throw ParseError("domain", "needs at least one size");
  if (r.Has("f")) spec.f = ParseFunction(r.Child("f"));
  if (r.Has("g")) spec.g = ParseFunction(r.Child("g"));
  if (r.Has("v")) spec.v = ParseFunction(r.Child("v"));
  if (r.Has("auto_split")) spec.auto_split = r.Child("auto_split").Bool();
  if (r.Has("budget")) spec.budget = r.Child("budget").Integer();
  if (r.Has("coverage_tradeoff")) {
    const Reader ct = r.Child("coverage_tradeoff");
    CoverageTradeoffSpec out;
    out.coverage = ParseCoverage(ct);
    out.cost_tables = ct.Child("cost_tables").Matrix();
    if (ct.Has("lambda_cost")) out.lambda_cost = ct.Child("lambda_cost").Number();
    spec.coverage_tradeoff = std::move(out);
  }
  return spec;
}

ProblemSpec ReadProblemSpec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open problem file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseProblemSpec(buffer.str());
}

std::string WriteProblemSpec(const ProblemSpec& spec) {
  json root;
  root["version"] = spec.version;
  if (!spec.name.empty()) root["name"] = spec.name;
  root["domain"] = spec.sizes;
  if (spec.f) root["f"] = FunctionToJson(*spec.f);
  if (spec.g) root["g"] = FunctionToJson(*spec.g);
  if (spec.v) root["v"] = FunctionToJson(*spec.v);
  if (spec.auto_split) root["auto_split"] = true;
  if (spec.budget) root["budget"] = *spec.budget;
  if (spec.coverage_tradeoff) {
    const CoverageTradeoffSpec& ct = *spec.coverage_tradeoff;
    root["coverage_tradeoff"] = {
        {"probabilities", ct.coverage.probabilities},
        {"region_weights", ct.coverage.region_weights},
        {"cost_tables", ct.cost_tables},
        {"lambda_cost", ct.lambda_cost}};
  }
  return root.dump(2);
}

std::string_view EnsembleKindName(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::kCoverage:
      return "coverage";
    case EnsembleKind::kConcaveOfLinearSums:
      return "concave_of_linear_sums";
    case EnsembleKind::kRandomTableAutosplit:
      return "random_table_autosplit";
  }
  return "unknown";
}

EnsembleKind ParseEnsembleKind(std::string_view name) {
  if (name == "coverage") return EnsembleKind::kCoverage;
  if (name == "concave_of_linear_sums") return EnsembleKind::kConcaveOfLinearSums;
  if (name == "random_table_autosplit") return EnsembleKind::kRandomTableAutosplit;
  throw ArgumentError("unknown ensemble kind '" + std::string(name) + "'");
}

namespace {

ConcaveOfLinearSpec RandomConcaveOfLinear(const EnsembleParams& params,
                                          std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(0.2, 2.0);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  std::uniform_int_distribution<int> shape(0, 2);
  ConcaveOfLinearSpec spec;
  for (int t = 0; t < params.terms; ++t) {
    ConcaveOfLinearSpec::Term term;
    term.coef = coef(rng);
    for (int i = 0; i < params.n; ++i) {
      term.weights.push_back(params.weight_scale * weight(rng));
    }
    term.shape = static_cast<ConcaveShape>(shape(rng));
    spec.terms.push_back(std::move(term));
  }
  return spec;
}

}  // namespace

std::vector<ProblemSpec> GenerateEnsemble(EnsembleKind kind,
                                          const EnsembleParams& params,
                                          std::uint64_t seed) {
  if (params.count < 0 || params.n < 1 || params.k < 2 || params.regions < 1 ||
      params.terms < 0) {
    throw ArgumentError("invalid ensemble parameters");
  }
  std::mt19937_64 rng(seed);
  std::vector<ProblemSpec> out;
  for (int idx = 0; idx < params.count; ++idx) {
    ProblemSpec spec;
    spec.name = std::string(EnsembleKindName(kind)) + "-" + std::to_string(seed) +
                "-" + std::to_string(idx);
    spec.sizes.assign(params.n, params.k);
    switch (kind) {
      case EnsembleKind::kCoverage: {
        std::uniform_real_distribution<double> prob(0.05, 0.6);
        std::uniform_real_distribution<double> region_weight(0.5, 2.0);
        std::uniform_real_distribution<double> cost_step(0.1, 1.0);
        std::uniform_real_distribution<double> tradeoff(0.2, 1.5);
        CoverageTradeoffSpec ct;
        ct.coverage.probabilities.assign(params.n, {});
        for (int i = 0; i < params.n; ++i) {
          for (int r = 0; r < params.regions; ++r) {
            ct.coverage.probabilities[i].push_back(prob(rng));
          }
        }
        for (int r = 0; r < params.regions; ++r) {
          ct.coverage.region_weights.push_back(region_weight(rng));
        }
        for (int i = 0; i < params.n; ++i) {
          // Concave, increasing cost levels.
          std::vector<double> steps;
          for (int j = 1; j < params.k; ++j) steps.push_back(cost_step(rng));
          std::sort(steps.rbegin(), steps.rend());
          std::vector<double> levels{0.0};
          for (double s : steps) levels.push_back(levels.back() + s);
          ct.cost_tables.push_back(std::move(levels));
        }
        ct.lambda_cost = tradeoff(rng);
        spec.coverage_tradeoff = std::move(ct);
        break;
      }
      case EnsembleKind::kConcaveOfLinearSums:
        spec.f = RandomConcaveOfLinear(params, rng);
        spec.g = RandomConcaveOfLinear(params, rng);
        break;
      case EnsembleKind::kRandomTableAutosplit: {
        const LatticeDomain domain(spec.sizes);
        domain.RequireEnumerable("random table ensemble");
        std::uniform_real_distribution<double> value(-params.table_range,
                                                     params.table_range);
        TableSpec table;
        table.values.resize(*domain.NumPoints());
        for (double& v : table.values) v = value(rng);
        spec.v = std::move(table);
        spec.auto_split = true;
        break;
      }
    }
    out.push_back(std::move(spec));
  }
  return out;
}

}  // namespace dsmm
