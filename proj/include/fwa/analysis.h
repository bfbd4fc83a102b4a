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

#ifndef FWA_ANALYSIS_H_
#define FWA_ANALYSIS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fwa/cfg.h"
#include "fwa/policy.h"

namespace fwa {

enum class AnalysisMode {
  // Every column is an independent boolean (2^n assignments).
  kIndependentColumns,
  // At most one cell per field group is true.
  kExactCells,
};

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 20;

struct AnalysisOptions {
  AnalysisMode mode = AnalysisMode::kIndependentColumns;
  std::uint64_t budget = kDefaultBudget;
  CfgOptions cfg;
};

// The valuations of static-check columns considered by the engine, one
// bitmask per assignment.
class AssignmentSpace {
 public:
  // Throws Error(kTooManyColumns) if the space exceeds the budget.
  AssignmentSpace(const StaticVarCatalog& catalog, AnalysisMode mode, std::uint64_t budget);

  const std::vector<std::uint64_t>& assignments() const { return assignments_; }
  std::size_t size() const { return assignments_.size(); }

  // Number of assignments the mode would enumerate, saturating at UINT64_MAX.
  static std::uint64_t count(const StaticVarCatalog& catalog, AnalysisMode mode);

 private:
  std::vector<std::uint64_t> assignments_;
};

// Set of assignment indices.
class AssignmentSet {
 public:
  explicit AssignmentSet(std::size_t size = 0) : size_(size), words_((size + 63) / 64) {}

  static AssignmentSet full(std::size_t size);

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool any() const;
  std::size_t count() const;

  // this |= (a & b & ~this); returns whether anything was added and the added bits.
  bool merge_masked(const AssignmentSet& a, const AssignmentSet& b, AssignmentSet* added);
  AssignmentSet operator&(const AssignmentSet& other) const;
  AssignmentSet& operator|=(const AssignmentSet& other);

 private:
  std::size_t size_;
  std::vector<std::uint64_t> words_;
};

struct ReachResult {
  // Indexed by internal label; assignments under which the label is reached.
  std::vector<AssignmentSet> reach;
  // Number of reached (label, assignment) pairs after each round.
  std::vector<std::size_t> history;

  bool reachable(InternalId l) const { return l < reach.size() && reach[l].any(); }
};

// Guard of every clause evaluated over the assignment space.
std::vector<AssignmentSet> clause_guards(const Cfg& cfg, const AssignmentSpace& space);

ReachResult reachable(const Cfg& cfg, const AssignmentSpace& space);

// (label, dense variable id) pairs: the label is reachable and some read of
// the variable is reachable from it along a path whose intermediate nodes do
// not write the variable, under one assignment. With `labels` set, only
// those labels are examined.
std::set<std::pair<InternalId, std::uint32_t>> live(
    const Cfg& cfg, const FactBase& facts, const AssignmentSpace& space,
    const ReachResult& reach, const std::optional<std::vector<InternalId>>& labels = {});

enum class FindingKind { kUnreachableRule, kIneffectiveRule, kDeadWrite };

std::string_view finding_kind_name(FindingKind kind);

struct Finding {
  FindingKind kind = FindingKind::kUnreachableRule;
  Label label = 0;
  std::optional<VarName> variable;
  std::string explanation;

  friend bool operator==(const Finding&, const Finding&) = default;
};

struct AnalysisStats {
  std::size_t rules = 0;
  std::size_t columns = 0;
  std::size_t assignments = 0;
  std::size_t labels = 0;
  std::size_t clauses = 0;
};

struct AnalysisResult {
  std::vector<Finding> findings;
  AnalysisStats stats;
};

// catalog -> cfg -> facts -> reachable -> live -> findings, sorted by
// external label then kind.
AnalysisResult analyze(const Policy& policy, const AnalysisOptions& options = {});

}  // namespace fwa

#endif  // FWA_ANALYSIS_H_
