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

// Machine-readable solver output: JSONL traces, CSV summaries, JSON error
// records. Formats are described in docs/formats.md.

#ifndef DSMM_REPORT_IO_H_
#define DSMM_REPORT_IO_H_

#include <exception>
#include <ostream>
#include <string>
#include <string_view>

#include "dsmm/mm.h"

namespace dsmm {

// One JSON object, no trailing newline.
std::string TraceLine(const IterateRecord& record);

// Every iterate, one line each.
void WriteTrace(std::ostream& out, const SolveReport& report);

// Column names, comma separated, no trailing newline.
std::string SummaryCsvHeader();
std::string SummaryCsvRow(std::string_view problem_name,
                          const SolveReport& report);

// Summary plus the certificate, pretty printed.
std::string SummaryJson(std::string_view problem_name,
                        const SolveReport& report);

// {"error": kind, "message": ...}; kind is "internal" for non-dsmm errors.
std::string ErrorRecord(const std::exception& error);

}  // namespace dsmm

#endif  // DSMM_REPORT_IO_H_
