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

#include "fwa/report.h"

#include <cstdio>
#include <json.hpp>

namespace fwa {

std::string_view severity_name(Severity s) {
  return s == Severity::kError ? "error" : "warning";
}

std::string to_text(const Report& report) {
  std::string out;
  for (const Diagnostic& d : report.diagnostics) {
    out += report.file + ": " + std::string(severity_name(d.severity)) + ": " +
           std::string(diag_code_name(d.code)) + ": " + d.message + "\n";
  }
  for (const Finding& f : report.findings) {
    out += report.file + ": " + std::string(finding_kind_name(f.kind)) + " at " +
           std::to_string(f.label);
    if (f.variable) out += " ($" + std::to_string(*f.variable) + ")";
    out += ": " + f.explanation + "\n";
  }
  char runtime[32];
  std::snprintf(runtime, sizeof runtime, "%.3f", report.runtime_ms);
  out += report.file + ": " + std::to_string(report.findings.size()) +
         (report.findings.size() == 1 ? " finding" : " findings") + "; " +
         std::to_string(report.stats.rules) + " rules, " +
         std::to_string(report.stats.columns) + " columns, " +
         std::to_string(report.stats.assignments) + " assignments, " + runtime + " ms\n";
  return out;
}

std::string to_json(const Report& report) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = kReportSchema;
  j["file"] = report.file;
  j["findings"] = ordered_json::array();
  for (const Finding& f : report.findings) {
    ordered_json e;
    e["kind"] = finding_kind_name(f.kind);
    e["label"] = f.label;
    e["variable"] = f.variable ? ordered_json(*f.variable) : ordered_json(nullptr);
    e["explanation"] = f.explanation;
    j["findings"].push_back(std::move(e));
  }
  j["diagnostics"] = ordered_json::array();
  for (const Diagnostic& d : report.diagnostics) {
    ordered_json e;
    e["severity"] = severity_name(d.severity);
    e["code"] = diag_code_name(d.code);
    e["message"] = d.message;
    e["label"] = d.label ? ordered_json(*d.label) : ordered_json(nullptr);
    if (d.span) {
      e["span"] = {{"line", d.span->line}, {"column", d.span->column}, {"length", d.span->length}};
    } else {
      e["span"] = nullptr;
    }
    j["diagnostics"].push_back(std::move(e));
  }
  j["statistics"] = {{"rules", report.stats.rules},
                     {"columns", report.stats.columns},
                     {"assignments", report.stats.assignments},
                     {"runtime_ms", report.runtime_ms}};
  return j.dump(2) + "\n";
}

}  // namespace fwa
