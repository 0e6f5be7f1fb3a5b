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

#include "cli.h"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <thread>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"
#include "dsmm/decompositions.h"
#include "dsmm/errors.h"
#include "dsmm/extension.h"
#include "dsmm/lattice.h"
#include "dsmm/mm.h"
#include "dsmm/problem.h"
#include "dsmm/report_io.h"
#include "dsmm/solvers.h"
#include "dsmm/upper_bounds.h"

namespace dsmm::cli {
namespace {

using nlohmann::ordered_json;

// Bench compares against brute force only on small domains.
constexpr std::uint64_t kBenchPointLimit = 10'000;

struct SolveFlags {
  std::string algorithm = "modmod";
  double epsilon = 0.0;
  int max_iters = 100;
  std::string chain = "canonical";
  std::uint64_t seed = 0;
  std::optional<double> lambda;
  std::string ub = "try_both";
  std::string sfm = "auto";
  int sfm_iters = 500;
  std::optional<int> budget;
  std::string trace;
  std::string summary;
};

void AddSolveFlags(CLI::App* app, SolveFlags& flags) {
  app->add_option("--algorithm", flags.algorithm, "subsup, supsub or modmod")
      ->check(CLI::IsMember({"subsup", "supsub", "modmod"}));
  app->add_option("--epsilon", flags.epsilon,
                  "relative improvement required to accept a step");
  app->add_option("--max-iters", flags.max_iters, "iteration budget");
  app->add_option("--chain", flags.chain, "canonical or randomized")
      ->check(CLI::IsMember({"canonical", "randomized"}));
  app->add_option("--seed", flags.seed, "seed for randomized chains");
  app->add_option("--lambda", flags.lambda,
                  "within-coordinate convexity bound for f");
  app->add_option("--ub", flags.ub, "try_both, grow1 or grow2")
      ->check(CLI::IsMember({"try_both", "grow1", "grow2"}));
  app->add_option("--sfm", flags.sfm, "inner minimiser: auto, brute, subgrad")
      ->check(CLI::IsMember({"auto", "brute", "subgrad"}));
  app->add_option("--sfm-iters", flags.sfm_iters, "subgradient iterations");
  app->add_option("--budget", flags.budget,
                  "cardinality budget sum(x) <= B (modmod only)");
  app->add_option("--trace", flags.trace, "JSONL trace output");
  app->add_option("--summary", flags.summary, "CSV summary output");
}

SolveOptions ToOptions(const SolveFlags& flags) {
  SolveOptions options;
  options.algorithm = ParseAlgorithm(flags.algorithm);
  options.epsilon = flags.epsilon;
  options.max_iters = flags.max_iters;
  options.chain = flags.chain == "randomized"
                      ? ChainMode::Randomized(flags.seed)
                      : ChainMode::Canonical();
  options.ub_policy = ParsePolicy(flags.ub);
  options.sfm.method = ParseSfmMethod(flags.sfm);
  options.sfm.iterations = flags.sfm_iters;
  options.lambda = flags.lambda;
  return options;
}

LoadedProblem Load(const std::string& path, std::optional<int> budget,
                   std::ostream& err, bool validate = true) {
  BuildOptions build;
  build.validate = validate;
  LoadedProblem loaded = BuildProblem(ReadProblemSpec(path), build);
  if (budget) {
    if (*budget < 0) throw ArgumentError("--budget must be >= 0");
    loaded.problem.budget = budget;
  }
  for (const std::string& w : loaded.warnings) err << "warning: " << w << '\n';
  return loaded;
}

std::string NameOf(const std::string& path) {
  const ProblemSpec spec = ReadProblemSpec(path);
  return spec.name.empty() ? std::filesystem::path(path).stem().string()
                           : spec.name;
}

std::ofstream OpenOutput(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write " + path);
  return out;
}

// Exhaustive minimum of v over the feasible set, ties to the
// lexicographically smallest point.
PointValue BruteForceFeasible(const DsProblem& p) {
  const OracleFunction v = p.V();
  if (!p.budget) return BruteForceMinimize(v);
  p.domain().RequireEnumerable("brute-force minimisation");
  PointValue best{{}, std::numeric_limits<double>::infinity()};
  p.domain().ForEachPoint([&](const LatticePoint& x) {
    int total = 0;
    for (int xi : x) total += xi;
    if (total > *p.budget) return;
    const double value = v(x);
    if (value < best.value) best = PointValue{x, value};
  });
  return best;
}

ordered_json WitnessJson(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  ordered_json out = {{"x", w->x}, {"i", w->i}};
  if (w->j >= 0) out["j"] = w->j;
  out["value"] = w->value;
  return out;
}

ordered_json VerdictJson(const Verdict& verdict) {
  return {{"holds", verdict.holds}, {"witness", WitnessJson(verdict.witness)}};
}

ordered_json SeparableJson(const SeparableFunction& s) {
  return {{"constant", s.constant()}, {"increments", s.tables()}};
}

LatticePoint ParsePoint(const std::string& text, const LatticeDomain& domain) {
  LatticePoint x;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      x.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ArgumentError("--at expects comma-separated integers, got '" +
                          text + "'");
    }
  }
  domain.RequireContains(x);
  return x;
}

int RunSolve(const std::string& path, const SolveFlags& flags,
             std::ostream& out, std::ostream& err) {
  LoadedProblem loaded = Load(path, flags.budget, err);
  const SolveReport report = Solve(loaded.problem, ToOptions(flags));
  const std::string name = NameOf(path);
  if (!flags.trace.empty()) {
    std::ofstream trace = OpenOutput(flags.trace);
    WriteTrace(trace, report);
  }
  if (!flags.summary.empty()) {
    std::ofstream summary = OpenOutput(flags.summary);
    summary << SummaryCsvHeader() << '\n' << SummaryCsvRow(name, report) << '\n';
  }
  out << SummaryJson(name, report) << '\n';
  return kExitOk;
}

int RunCheck(const std::string& path, std::ostream& out, std::ostream& err) {
  const ProblemSpec spec = ReadProblemSpec(path);
  const LatticeDomain domain(spec.sizes);
  domain.RequireEnumerable("check");
  std::vector<std::pair<std::string, OracleFunction>> parts;
  if (spec.coverage_tradeoff) {
    LoadedProblem loaded = BuildProblem(spec, BuildOptions{false});
    parts.emplace_back("f", loaded.problem.f);
    parts.emplace_back("g", loaded.problem.g);
  }
  if (spec.f) parts.emplace_back("f", BuildFunction(*spec.f, domain));
  if (spec.g) parts.emplace_back("g", BuildFunction(*spec.g, domain));
  if (spec.v) parts.emplace_back("v", BuildFunction(*spec.v, domain));

  bool all_submodular = true;
  ordered_json components = ordered_json::object();
  for (const auto& [name, fn] : parts) {
    const Verdict sub = CheckSubmodular(fn);
    all_submodular = all_submodular && sub.holds;
    components[name] = {{"submodular", VerdictJson(sub)},
                        {"dr_submodular", VerdictJson(CheckDr(fn))},
                        {"monotone", VerdictJson(CheckMonotone(fn))}};
  }
  ordered_json root = {{"problem", NameOf(path)},
                       {"components", components},
                       {"all_submodular", all_submodular}};
  out << root.dump(2) << '\n';
  if (!all_submodular) {
    err << "error: a component is not submodular\n";
    return kExitValidation;
  }
  return kExitOk;
}

int RunDecompose(const std::string& path, std::optional<double> lambda,
                 std::ostream& out, std::ostream& err) {
  LoadedProblem loaded = Load(path, std::nullopt, err);
  DsProblem& p = loaded.problem;
  if (lambda) p.f_lambda_hint = lambda;
  p.domain().RequireEnumerable("decompose");

  const MonotoneSubmodularSplit fs = SplitMonotoneSubmodular(p.f, p.f_lambda_hint);
  const MonotoneSubmodularSplit gs = SplitMonotoneSubmodular(p.g);
  const DsDecomposition dec = DecomposeProblem(p);
  const AdditiveBounds bounds = AdditiveLowerBounds(p);

  ordered_json root = {
      {"problem", NameOf(path)},
      {"f", {{"lambda", fs.lambda}, {"modular", SeparableJson(fs.modular)}}},
      {"g", {{"lambda", gs.lambda}, {"modular", SeparableJson(gs.modular)}}},
      {"k", SeparableJson(dec.k)},
      {"f_prime_monotone", VerdictJson(CheckMonotone(dec.f_prime))},
      {"g_prime_monotone", VerdictJson(CheckMonotone(dec.g_prime))},
      {"additive_bounds",
       {{"bound1", bounds.bound1 ? ordered_json(*bounds.bound1) : nullptr},
        {"bound2", bounds.bound2},
        {"reference", bounds.reference}}}};
  if (!bounds.bound1_error.empty()) {
    root["additive_bounds"]["bound1_error"] = bounds.bound1_error;
  }
  out << root.dump(2) << '\n';
  return kExitOk;
}

int RunBounds(const std::string& path, const std::string& at,
              const SolveFlags& flags, std::ostream& out, std::ostream& err) {
  LoadedProblem loaded = Load(path, std::nullopt, err);
  const DsProblem& p = loaded.problem;
  const LatticePoint x = ParsePoint(at, p.domain());
  const SolveOptions options = ToOptions(flags);

  const Chain chain = ChainContaining(p.domain(), x, options.chain);
  const SeparableFunction lower = LowerBound(p.g, x, chain);
  double lambda = 0.0;
  if (flags.lambda) {
    lambda = *flags.lambda;
  } else if (p.f_lambda_hint) {
    lambda = *p.f_lambda_hint;
  } else {
    p.domain().RequireEnumerable("lambda for f");
    lambda = LambdaBruteForce(p.f);
  }
  ordered_json upper = ordered_json::object();
  for (UpperBoundVariant variant :
       {UpperBoundVariant::kGrow1, UpperBoundVariant::kGrow2}) {
    upper[std::string(VariantName(variant))] =
        SeparableJson(UpperBoundFull(p.f, lambda, x, variant));
  }
  ordered_json root = {
      {"problem", NameOf(path)},
      {"anchor", x},
      {"g_lower", {{"chain", chain.increments()}, {"bound", SeparableJson(lower)}}},
      {"f_upper", {{"lambda", lambda}, {"variants", upper}}}};
  out << root.dump(2) << '\n';
  return kExitOk;
}

int RunOracle(const std::string& path, std::optional<int> budget,
              std::ostream& out, std::ostream& err) {
  LoadedProblem loaded = Load(path, budget, err);
  const PointValue best = BruteForceFeasible(loaded.problem);
  ordered_json root = {{"problem", NameOf(path)},
                       {"minimizer", best.point},
                       {"value", best.value}};
  if (loaded.problem.budget) root["budget"] = *loaded.problem.budget;
  out << root.dump(2) << '\n';
  return kExitOk;
}

struct EnsembleFlags {
  std::string kind = "coverage";
  EnsembleParams params;
  std::uint64_t seed = 0;
};

void AddEnsembleFlags(CLI::App* app, EnsembleFlags& flags) {
  app->add_option("--kind", flags.kind,
                  "coverage, concave_of_linear_sums or random_table_autosplit")
      ->check(CLI::IsMember(
          {"coverage", "concave_of_linear_sums", "random_table_autosplit"}));
  app->add_option("--count", flags.params.count, "number of instances");
  app->add_option("--n", flags.params.n, "coordinates");
  app->add_option("--k", flags.params.k, "levels per coordinate");
  app->add_option("--regions", flags.params.regions, "coverage regions");
  app->add_option("--terms", flags.params.terms, "concave terms per function");
  app->add_option("--ensemble-seed", flags.seed, "ensemble seed");
}

struct BenchRow {
  std::string name;
  SolveReport report;
  double brute = 0.0;
  std::string error;
};

int RunBench(const EnsembleFlags& ensemble, const SolveFlags& flags, int jobs,
             std::ostream& out, std::ostream& err) {
  const std::vector<ProblemSpec> specs = GenerateEnsemble(
      ParseEnsembleKind(ensemble.kind), ensemble.params, ensemble.seed);
  if (!specs.empty()) {
    const LatticeDomain domain(specs.front().sizes);
    if (!domain.NumPoints() || *domain.NumPoints() > kBenchPointLimit) {
      throw CapExceededError("bench compares against brute force and needs at "
                             "most " + std::to_string(kBenchPointLimit) +
                             " points per instance");
    }
  }
  const SolveOptions options = ToOptions(flags);
  std::vector<BenchRow> rows(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      BenchRow& row = rows[i];
      row.name = specs[i].name;
      try {
        LoadedProblem loaded = BuildProblem(specs[i]);
        if (flags.budget) loaded.problem.budget = flags.budget;
        row.report = Solve(loaded.problem, options);
        row.brute = BruteForceFeasible(loaded.problem).value;
      } catch (const std::exception& e) {
        row.error = ErrorRecord(e);
      }
    }
  };
  const int workers = std::max(1, jobs);
  std::vector<std::thread> threads;
  for (int w = 1; w < workers; ++w) threads.emplace_back(worker);
  worker();
  for (std::thread& t : threads) t.join();

  if (!flags.trace.empty()) {
    std::filesystem::create_directories(flags.trace);
    for (const BenchRow& row : rows) {
      if (!row.error.empty()) continue;
      std::ofstream trace =
          OpenOutput((std::filesystem::path(flags.trace) / (row.name + ".jsonl"))
                         .string());
      WriteTrace(trace, row.report);
    }
  }

  double min_gap = std::numeric_limits<double>::infinity();
  double max_gap = -std::numeric_limits<double>::infinity();
  double sum_gap = 0.0;
  int solved = 0;
  int exact = 0;
  std::map<std::string, int> statuses;
  std::ostringstream csv;
  csv << "instance,algorithm,status,value,bruteforce,gap,accepted_moves,"
         "predicted_bound,calls_f,calls_g\n";
  for (const BenchRow& row : rows) {
    if (!row.error.empty()) {
      err << row.error << '\n';
      continue;
    }
    const double gap = row.report.value - row.brute;
    ++solved;
    min_gap = std::min(min_gap, gap);
    max_gap = std::max(max_gap, gap);
    sum_gap += gap;
    if (std::abs(gap) <= kCheckTolerance) ++exact;
    ++statuses[std::string(StatusName(row.report.status))];
    csv.precision(17);
    csv << row.name << ',' << AlgorithmName(row.report.algorithm) << ','
        << StatusName(row.report.status) << ',' << row.report.value << ','
        << row.brute << ',' << gap << ',' << row.report.accepted_moves << ',';
    if (row.report.predicted_bound) csv << row.report.predicted_bound->bound;
    csv << ',' << row.report.calls_f << ',' << row.report.calls_g << '\n';
  }
  if (!flags.summary.empty()) {
    std::ofstream summary = OpenOutput(flags.summary);
    summary << csv.str();
  }
  ordered_json root = {
      {"kind", ensemble.kind},
      {"algorithm", flags.algorithm},
      {"instances", specs.size()},
      {"solved", solved},
      {"exact", exact},
      {"min_gap", solved ? ordered_json(min_gap) : nullptr},
      {"max_gap", solved ? ordered_json(max_gap) : nullptr},
      {"mean_gap", solved ? ordered_json(sum_gap / solved) : nullptr},
      {"statuses", statuses}};
  out << root.dump(2) << '\n';
  return solved == static_cast<int>(specs.size()) ? kExitOk : kExitError;
}

int RunGenerate(const EnsembleFlags& ensemble, const std::string& dir,
                std::ostream& out) {
  const std::vector<ProblemSpec> specs = GenerateEnsemble(
      ParseEnsembleKind(ensemble.kind), ensemble.params, ensemble.seed);
  std::filesystem::create_directories(dir);
  for (const ProblemSpec& spec : specs) {
    const std::string file =
        (std::filesystem::path(dir) / (spec.name + ".json")).string();
    std::ofstream stream = OpenOutput(file);
    stream << WriteProblemSpec(spec) << '\n';
    out << file << '\n';
  }
  return kExitOk;
}

std::optional<std::uint64_t> CapFromEnvironment() {
  const char* raw = std::getenv(kCapEnv);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const unsigned long long cap = std::stoull(raw, &used);
    if (used != std::string(raw).size()) throw std::invalid_argument(raw);
    return cap;
  } catch (const std::exception&) {
    throw ArgumentError(std::string(kCapEnv) + " must be a positive integer");
  }
}

// Restores the process-wide cap when a run ends.
class CapGuard {
 public:
  CapGuard() : saved_(BruteForceCap()) {}
  ~CapGuard() { SetBruteForceCap(saved_); }

 private:
  std::uint64_t saved_;
};

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Difference-of-submodular minimisation on integer lattices"};
  app.name("dsmm");
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::uint64_t> cap;
  app.add_option("--cap", cap, "brute-force point cap (overrides DSMM_CAP)");

  std::string problem_path;
  SolveFlags solve_flags;
  EnsembleFlags ensemble;
  std::optional<double> decompose_lambda;
  std::string at;
  std::string out_dir;
  int jobs = 1;

  CLI::App* solve = app.add_subcommand("solve", "run an MM algorithm");
  solve->add_option("problem", problem_path, "problem file")->required();
  AddSolveFlags(solve, solve_flags);

  CLI::App* check = app.add_subcommand(
      "check", "submodular, DR-submodular and monotone verdicts");
  check->add_option("problem", problem_path, "problem file")->required();

  CLI::App* decompose = app.add_subcommand(
      "decompose", "lambda split, monotone split and additive bounds");
  decompose->add_option("problem", problem_path, "problem file")->required();
  decompose->add_option("--lambda", decompose_lambda, "lambda for f");

  CLI::App* bounds = app.add_subcommand(
      "bounds", "separable lower bound of g and upper bounds of f at a point");
  bounds->add_option("problem", problem_path, "problem file")->required();
  bounds->add_option("--at", at, "anchor, e.g. 1,0,2")->required();
  bounds->add_option("--chain", solve_flags.chain, "canonical or randomized")
      ->check(CLI::IsMember({"canonical", "randomized"}));
  bounds->add_option("--seed", solve_flags.seed, "seed for randomized chains");
  bounds->add_option("--lambda", solve_flags.lambda, "lambda for f");

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force minimum");
  oracle->add_option("problem", problem_path, "problem file")->required();
  oracle->add_option("--budget", solve_flags.budget, "cardinality budget");

  CLI::App* bench = app.add_subcommand(
      "bench", "solve a generated ensemble and report gaps to brute force");
  AddSolveFlags(bench, solve_flags);
  AddEnsembleFlags(bench, ensemble);
  bench->add_option("--jobs", jobs, "parallel workers");

  CLI::App* generate = app.add_subcommand("generate", "write ensemble files");
  AddEnsembleFlags(generate, ensemble);
  generate->add_option("--out", out_dir, "output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  CapGuard guard;
  try {
    if (cap) {
      SetBruteForceCap(*cap);
    } else if (const auto env_cap = CapFromEnvironment()) {
      SetBruteForceCap(*env_cap);
    }
    if (solve->parsed()) return RunSolve(problem_path, solve_flags, out, err);
    if (check->parsed()) return RunCheck(problem_path, out, err);
    if (decompose->parsed()) {
      return RunDecompose(problem_path, decompose_lambda, out, err);
    }
    if (bounds->parsed()) return RunBounds(problem_path, at, solve_flags, out, err);
    if (oracle->parsed()) {
      return RunOracle(problem_path, solve_flags.budget, out, err);
    }
    if (bench->parsed()) return RunBench(ensemble, solve_flags, jobs, out, err);
    if (generate->parsed()) return RunGenerate(ensemble, out_dir, out);
  } catch (const CapExceededError& e) {
    err << ErrorRecord(e) << '\n';
    return kExitCap;
  } catch (const ValidationError& e) {
    err << ErrorRecord(e) << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << ErrorRecord(e) << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace dsmm::cli
