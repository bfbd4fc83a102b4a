// Copyright 2026 The fwa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FWA_REPORT_H_
#define FWA_REPORT_H_

#include <string>
#include <vector>

#include "fwa/analysis.h"
#include "fwa/policy.h"

namespace fwa {

inline constexpr const char* kReportSchema = "fwa-report/1";

struct Report {
  std::string file;
  std::vector<Finding> findings;
  std::vector<Diagnostic> diagnostics;
  AnalysisStats stats;
  double runtime_ms = 0;
};

std::string_view severity_name(Severity s);

// Human-readable report, one finding per line.
std::string to_text(const Report& report);
// Machine report; field names are fixed by the schema version.
std::string to_json(const Report& report);

}  // namespace fwa

#endif  // FWA_REPORT_H_
