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

#include "dsmm/report_io.h"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "dsmm/errors.h"

namespace dsmm {
namespace {

using nlohmann::ordered_json;

// JSON has no NaN; non-surrogate fields become null.
ordered_json Number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

std::string PointField(const LatticePoint& x) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(x[i]);
  }
  return out;
}

std::string CsvNumber(double value) {
  if (!std::isfinite(value)) return "";
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

std::string CsvText(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) {
    return std::string(text);
  }
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

ordered_json NeighborJson(const NeighborCheck& n) {
  return {{"coordinate", n.coordinate},
          {"direction", n.direction},
          {"x", n.point},
          {"v", Number(n.v)}};
}

}  // namespace

std::string TraceLine(const IterateRecord& r) {
  ordered_json line = {{"t", r.t},
                       {"x", r.x},
                       {"v", Number(r.v)},
                       {"f", Number(r.f)},
                       {"g", Number(r.g)},
                       {"surrogate", Number(r.surrogate)},
                       {"surrogate_at_anchor", Number(r.surrogate_at_anchor)},
                       {"accepted", r.accepted},
                       {"move", r.move},
                       {"detail", r.detail},
                       {"calls_f", r.calls_f},
                       {"calls_g", r.calls_g},
                       {"wall_ms", Number(r.wall_ms)}};
  return line.dump();
}

void WriteTrace(std::ostream& out, const SolveReport& report) {
  for (const IterateRecord& r : report.iterates) out << TraceLine(r) << '\n';
}

std::string SummaryCsvHeader() {
  return "problem,algorithm,status,value,minimizer,iterations,accepted_moves,"
         "calls_f,calls_g,lambda,predicted_bound,certified";
}

std::string SummaryCsvRow(std::string_view problem_name,
                          const SolveReport& report) {
  std::ostringstream out;
  out << CsvText(problem_name) << ',' << AlgorithmName(report.algorithm) << ','
      << StatusName(report.status) << ',' << CsvNumber(report.value) << ','
      << PointField(report.minimizer) << ','
      << (report.iterates.empty() ? 0 : report.iterates.back().t) << ','
      << report.accepted_moves << ',' << report.calls_f << ','
      << report.calls_g << ','
      << (report.lambda ? CsvNumber(*report.lambda) : "") << ','
      << (report.predicted_bound ? CsvNumber(report.predicted_bound->bound)
                                 : "")
      << ','
      << (report.certificate && report.certificate->passed ? "true" : "false");
  return out.str();
}

std::string SummaryJson(std::string_view problem_name,
                        const SolveReport& report) {
  ordered_json root = {
      {"problem", problem_name},
      {"algorithm", AlgorithmName(report.algorithm)},
      {"status", StatusName(report.status)},
      {"value", Number(report.value)},
      {"minimizer", report.minimizer},
      {"iterations", report.iterates.empty() ? 0 : report.iterates.back().t},
      {"accepted_moves", report.accepted_moves},
      {"calls_f", report.calls_f},
      {"calls_g", report.calls_g},
      {"lambda", report.lambda ? Number(*report.lambda) : ordered_json()}};
  if (report.predicted_bound) {
    root["predicted_bound"] = {{"bound", Number(report.predicted_bound->bound)},
                               {"M", Number(report.predicted_bound->big_m)},
                               {"m", Number(report.predicted_bound->small_m)}};
  }
  if (report.certificate) {
    const LocalMinCertificate& c = *report.certificate;
    ordered_json neighbors = ordered_json::array();
    for (const NeighborCheck& n : c.neighbors) neighbors.push_back(NeighborJson(n));
    ordered_json cert = {{"x", c.x},
                         {"v", Number(c.v)},
                         {"passed", c.passed},
                         {"neighbors", neighbors},
                         {"chain_family_size", c.chain_family.size()}};
    if (c.descending) cert["descending"] = NeighborJson(*c.descending);
    root["certificate"] = cert;
  }
  return root.dump(2);
}

std::string ErrorRecord(const std::exception& error) {
  const auto* typed = dynamic_cast<const Error*>(&error);
  ordered_json root = {{"error", typed ? typed->kind() : "internal"},
                       {"message", error.what()}};
  return root.dump();
}

}  // namespace dsmm
