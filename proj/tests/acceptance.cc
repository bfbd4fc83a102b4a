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

// Acceptance runner: one PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fwa/analysis.h"
#include "fwa/cfg.h"
#include "fwa/parser.h"
#include "suites.h"
#include "support.h"

namespace {

using namespace fwa;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string describe(const std::vector<Finding>& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += ", ";
    s += std::string(finding_kind_name(f[i].kind)) + "@" + std::to_string(f[i].label);
    if (f[i].variable) s += " $" + std::to_string(*f[i].variable);
  }
  return s + "]";
}

// analyze() in both modes: exactly the expected finding, under one second.
Verdict single_finding(int example, FindingKind kind, Label label, std::optional<VarName> var) {
  Policy p = test::load_example(example);
  std::string detail;
  bool pass = true;
  for (AnalysisMode mode : {AnalysisMode::kIndependentColumns, AnalysisMode::kExactCells}) {
    AnalysisOptions o;
    o.mode = mode;
    auto start = std::chrono::steady_clock::now();
    auto f = analyze(p, o).findings;
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    bool ok = f.size() == 1 && f[0].kind == kind && f[0].label == label && f[0].variable == var && ms < 1000;
    pass = pass && ok;
    std::ostringstream d;
    d << (mode == AnalysisMode::kExactCells ? "exact " : "independent ") << describe(f) << " " << ms << " ms";
    detail += (detail.empty() ? "" : "; ") + d.str();
  }
  return {pass, detail};
}

Verdict example_two() {
  Verdict v = single_finding(2, FindingKind::kDeadWrite, 1010, 888);
  Policy p = test::load_example(2);
  StaticVarCatalog cat = build_catalog(p);
  Cfg cfg = build_cfg(p, cat);
  std::string text = emit_datalog(extract_facts(p, cfg), cfg, cat);
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  const char* listing[] = {
      "O 1021 olabels.map", "L 11 labels.map", "B 2", "label(0).", "label(1).", "label(3).",
      "label(4).", "label(6).", "label(7).", "label(9).", "label(10).", "olabel(1000,0).",
      "olabel(1000,1).", "olabel(1001,3).", "olabel(1001,4).", "olabel(1010,6).",
      "olabel(1010,7).", "olabel(1020,9).", "olabel(1020,10).", "final(1).", "final(10).",
      "var(0).", "var(1).", "read(3,1).", "write(7,0).", "init(0).",
  };
  std::vector<std::string> missing;
  for (const char* l : listing) {
    if (std::find(lines.begin(), lines.end(), l) == lines.end()) missing.push_back(l);
  }
  // Nothing beyond the listing: no extra label/olabel/final/var/read/write/init facts.
  std::size_t facts = std::count_if(lines.begin(), lines.end(), [](const std::string& l) {
    for (const char* p : {"label(", "olabel(", "final(", "var(", "read(", "write(", "init("}) {
      if (l.rfind(p, 0) == 0) return true;
    }
    return false;
  });
  if (!missing.empty()) {
    v.pass = false;
    v.detail += "; missing " + missing.front();
  }
  if (facts != 23) {
    v.pass = false;
    v.detail += "; " + std::to_string(facts) + " facts instead of 23";
  } else {
    v.detail += "; 23 facts match";
  }
  return v;
}

Verdict suite(const test::SuiteResult& r, std::size_t min_cases) {
  return {r.ok() && r.cases >= min_cases, r.summary()};
}

Verdict port_example() {
  std::vector<Interval> originals = {Interval::closed(2, 2, 65535), Interval::closed(2, 65535, 65535),
                                     Interval::closed(0, 3, 65535)};
  MCSIResult r = mcsi(originals);
  std::string cells;
  for (const Interval& c : r.cells) cells += c.canonical().to_string();
  return {cells == "[0,1][2,2][3,3][4,65535]", cells};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {"example-1 dead write at 1 ($0), < 1 s",
       [] { return single_finding(1, FindingKind::kDeadWrite, 1, 0); }},
      {"example-2 dead write at 1010 ($888), fact listing, < 1 s", example_two},
      {"example-3 dead write at 2 ($1)", [] { return single_finding(3, FindingKind::kDeadWrite, 2, 1); }},
      {"example-4 unreachable rule 3",
       [] { return single_finding(4, FindingKind::kUnreachableRule, 3, std::nullopt); }},
      {"example-5 ineffective rule 2",
       [] { return single_finding(5, FindingKind::kIneffectiveRule, 2, std::nullopt); }},
      {"mcsi property suite (1000 random sets)",
       [] { return suite(test::mcsi_properties(1000, 20260101), 1000); }},
      {"mcsi port example cells", port_example},
      {"oracle soundness (5 examples + 200 random policies)",
       [] { return suite(test::soundness(200, 2718281828), 10); }},
      {"engine equivalence (100 tiny policies)", [] { return suite(test::engine_equivalence(100, 4242), 100); }},
      {"frontend fixtures match golden IR and validate", [] { return suite(test::frontend_goldens(), 6); }},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::cout << (v.pass ? "PASS " : "FAIL ") << c.name << " -- " << v.detail << "\n";
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
