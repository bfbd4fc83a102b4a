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

#include "fwa/analysis.h"

#include <algorithm>
#include <bit>
#include <limits>

#include "fwa/error.h"

namespace fwa {
namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::string with_origin(std::string text, const Rule& rule) {
  if (!rule.origin.empty()) text += " (from: " + rule.origin + ")";
  return text;
}

}  // namespace

std::uint64_t AssignmentSpace::count(const StaticVarCatalog& catalog, AnalysisMode mode) {
  if (mode == AnalysisMode::kIndependentColumns) {
    if (catalog.total_columns >= 64) return std::numeric_limits<std::uint64_t>::max();
    return std::uint64_t{1} << catalog.total_columns;
  }
  std::uint64_t n = 1;
  for (const FieldCatalog& f : catalog.fields) n = saturating_mul(n, f.size() + 1);
  return n;
}

AssignmentSpace::AssignmentSpace(const StaticVarCatalog& catalog, AnalysisMode mode,
                                 std::uint64_t budget) {
  const std::uint64_t n = count(catalog, mode);
  if (catalog.total_columns > 63 || n > budget) {
    throw Error(ErrorCode::kTooManyColumns,
                std::to_string(catalog.total_columns) + " static-check columns need " +
                    (n == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 2^64")
                                                                    : std::to_string(n)) +
                    " assignments, over the budget of " + std::to_string(budget) +
                    " (raise it with --budget or FWA_BUDGET)");
  }
  assignments_.reserve(n);
  if (mode == AnalysisMode::kIndependentColumns) {
    for (std::uint64_t a = 0; a < n; ++a) assignments_.push_back(a);
    return;
  }
  // Mixed radix: digit 0 = no cell of the field, digit j = its (j-1)-th cell.
  assignments_.push_back(0);
  for (const FieldCatalog& f : catalog.fields) {
    const std::size_t before = assignments_.size();
    for (std::size_t cell = 0; cell < f.size(); ++cell) {
      const std::uint64_t bit = std::uint64_t{1} << (f.first_column + cell);
      for (std::size_t i = 0; i < before; ++i) assignments_.push_back(assignments_[i] | bit);
    }
  }
}

AssignmentSet AssignmentSet::full(std::size_t size) {
  AssignmentSet s(size);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  if (size % 64) s.words_.back() = (std::uint64_t{1} << (size % 64)) - 1;
  return s;
}

bool AssignmentSet::any() const {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t AssignmentSet::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool AssignmentSet::merge_masked(const AssignmentSet& a, const AssignmentSet& b,
                                 AssignmentSet* added) {
  bool changed = false;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const std::uint64_t fresh = a.words_[i] & b.words_[i] & ~words_[i];
    if (fresh) {
      words_[i] |= fresh;
      if (added) added->words_[i] |= fresh;
      changed = true;
    }
  }
  return changed;
}

AssignmentSet AssignmentSet::operator&(const AssignmentSet& other) const {
  AssignmentSet out(size_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] & other.words_[i];
  return out;
}

AssignmentSet& AssignmentSet::operator|=(const AssignmentSet& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

std::vector<AssignmentSet> clause_guards(const Cfg& cfg, const AssignmentSpace& space) {
  std::vector<AssignmentSet> guards;
  guards.reserve(cfg.clauses.size());
  const auto& as = space.assignments();
  for (const SuccClause& c : cfg.clauses) {
    if (c.unconditional()) {
      guards.push_back(AssignmentSet::full(as.size()));
      continue;
    }
    AssignmentSet g(as.size());
    for (std::size_t i = 0; i < as.size(); ++i) {
      if (c.holds(as[i])) g.set(i);
    }
    guards.push_back(std::move(g));
  }
  return guards;
}

namespace {

std::vector<std::vector<std::size_t>> clauses_by_source(const Cfg& cfg) {
  std::vector<std::vector<std::size_t>> out(cfg.labels.domain_size());
  for (std::size_t i = 0; i < cfg.clauses.size(); ++i) out[cfg.clauses[i].from].push_back(i);
  return out;
}

}  // namespace

ReachResult reachable(const Cfg& cfg, const AssignmentSpace& space) {
  const std::size_t n_labels = cfg.labels.domain_size();
  const std::size_t n = space.size();
  const auto guards = clause_guards(cfg, space);
  const auto out_edges = clauses_by_source(cfg);

  ReachResult result;
  result.reach.assign(n_labels, AssignmentSet(n));
  std::vector<AssignmentSet> delta(n_labels, AssignmentSet(n));
  for (InternalId i : cfg.init) {
    result.reach[i] = AssignmentSet::full(n);
    delta[i] = AssignmentSet::full(n);
  }

  auto total = [&] {
    std::size_t t = 0;
    for (const auto& r : result.reach) t += r.count();
    return t;
  };
  result.history.push_back(total());

  // Semi-naive rounds: only pairs discovered in the previous round are
  // propagated.
  bool pending = std::any_of(delta.begin(), delta.end(), [](const auto& d) { return d.any(); });
  while (pending) {
    std::vector<AssignmentSet> next(n_labels, AssignmentSet(n));
    pending = false;
    for (std::size_t from = 0; from < n_labels; ++from) {
      if (!delta[from].any()) continue;
      for (std::size_t ci : out_edges[from]) {
        const InternalId to = cfg.clauses[ci].to;
        if (result.reach[to].merge_masked(delta[from], guards[ci], &next[to])) pending = true;
      }
    }
    delta = std::move(next);
    result.history.push_back(total());
  }
  return result;
}

std::set<std::pair<InternalId, std::uint32_t>> live(
    const Cfg& cfg, const FactBase& facts, const AssignmentSpace& space,
    const ReachResult& reach, const std::optional<std::vector<InternalId>>& labels) {
  const std::size_t n_labels = cfg.labels.domain_size();
  const std::size_t n = space.size();
  const auto guards = clause_guards(cfg, space);
  const auto out_edges = clauses_by_source(cfg);

  const std::size_t n_vars = facts.vars.size();
  std::vector<std::vector<bool>> reads(n_vars, std::vector<bool>(n_labels, false));
  std::vector<std::vector<bool>> writes(n_vars, std::vector<bool>(n_labels, false));
  for (const auto& [l, v] : facts.reads) reads[v][l] = true;
  for (const auto& [l, v] : facts.writes) writes[v][l] = true;

  std::vector<InternalId> candidates;
  if (labels) {
    candidates = *labels;
  } else {
    for (const InternalLabel& l : cfg.labels.labels()) candidates.push_back(l.value);
  }

  std::set<std::pair<InternalId, std::uint32_t>> out;
  for (InternalId start : candidates) {
    if (!reach.reachable(start)) continue;
    for (std::uint32_t v = 0; v < n_vars; ++v) {
      if (reads[v][start]) {
        out.emplace(start, v);
        continue;
      }
      // Assignments under which a read-only path from `start` reaches each
      // label. The first edge is taken whether or not `start` writes v.
      std::vector<AssignmentSet> path(n_labels, AssignmentSet(n));
      std::vector<InternalId> work;
      for (std::size_t ci : out_edges[start]) {
        const InternalId to = cfg.clauses[ci].to;
        if (path[to].merge_masked(reach.reach[start], guards[ci], nullptr)) work.push_back(to);
      }
      bool found = false;
      while (!work.empty() && !found) {
        const InternalId b = work.back();
        work.pop_back();
        if (reads[v][b]) {
          found = true;
          break;
        }
        if (writes[v][b]) continue;
        for (std::size_t ci : out_edges[b]) {
          const InternalId to = cfg.clauses[ci].to;
          if (path[to].merge_masked(path[b], guards[ci], nullptr)) work.push_back(to);
        }
      }
      if (found) out.emplace(start, v);
    }
  }
  return out;
}

std::string_view finding_kind_name(FindingKind kind) {
  switch (kind) {
    case FindingKind::kUnreachableRule: return "UnreachableRule";
    case FindingKind::kIneffectiveRule: return "IneffectiveRule";
    case FindingKind::kDeadWrite: return "DeadWrite";
  }
  return "?";
}

AnalysisResult analyze(const Policy& policy, const AnalysisOptions& options) {
  AnalysisResult result;
  const StaticVarCatalog catalog = build_catalog(policy);
  const Cfg cfg = build_cfg(policy, catalog, options.cfg);
  const FactBase facts = extract_facts(policy, cfg);
  const AssignmentSpace space(catalog, options.mode, options.budget);
  const ReachResult reach = reachable(cfg, space);

  std::vector<InternalId> write_labels;
  for (const auto& [l, v] : facts.writes) write_labels.push_back(l);
  const auto live_set = live(cfg, facts, space, reach, write_labels);

  const auto& slots = cfg.labels.slots();
  for (std::size_t k = 0; k < policy.size(); ++k) {
    const Rule& r = policy.rules()[k];
    const RuleSlots& s = slots[k];
    const bool if_r = reach.reachable(s.if_label);
    const bool then_r = reach.reachable(s.then_label);
    const bool ret_r = s.return_label && reach.reachable(*s.return_label);
    const std::string id = "rule " + std::to_string(r.label);
    if (!if_r && !then_r && !ret_r) {
      result.findings.push_back(
          {FindingKind::kUnreachableRule, r.label, std::nullopt,
           with_origin(id + " is unreachable: no control flow path from the first rule leads to it", r)});
    } else if (if_r && !then_r) {
      result.findings.push_back(
          {FindingKind::kIneffectiveRule, r.label, std::nullopt,
           with_origin(id + " never takes effect: no packet reaching it satisfies its condition", r)});
    }
    if (auto set = std::get_if<SetVar>(&r.target); set && then_r) {
      const std::uint32_t v = *facts.dense_id(set->var);
      if (!live_set.count({s.then_label, v})) {
        result.findings.push_back(
            {FindingKind::kDeadWrite, r.label, set->var,
             with_origin(id + " writes $" + std::to_string(set->var) +
                             " but the value is never read before being overwritten or the policy ends",
                         r)});
      }
    }
  }
  std::stable_sort(result.findings.begin(), result.findings.end(),
                   [](const Finding& a, const Finding& b) {
                     return std::pair(a.label, a.kind) < std::pair(b.label, b.kind);
                   });

  result.stats.rules = policy.size();
  result.stats.columns = catalog.total_columns;
  result.stats.assignments = space.size();
  result.stats.labels = cfg.labels.labels().size();
  result.stats.clauses = cfg.clauses.size();
  return result;
}

}  // namespace fwa
