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

#ifndef FWA_CFG_H_
#define FWA_CFG_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fwa/interval.h"
#include "fwa/net.h"
#include "fwa/policy.h"

namespace fwa {

using InternalId = std::uint64_t;

enum class LabelKind { kIf, kThen, kReturn };

std::string_view label_kind_name(LabelKind kind);

struct InternalLabel {
  InternalId value = 0;
  LabelKind kind = LabelKind::kIf;
  Label external = 0;
  std::size_t rule_index = 0;

  friend bool operator==(const InternalLabel&, const InternalLabel&) = default;
};

// The k-th rule in label order owns If = 3k, Then = 3k+1 and, for Call
// targets only, Return = 3k+2.
struct RuleSlots {
  Label external = 0;
  InternalId if_label = 0;
  InternalId then_label = 0;
  std::optional<InternalId> return_label;
};

class LabelMap {
 public:
  LabelMap() = default;
  explicit LabelMap(std::vector<RuleSlots> slots);

  const std::vector<RuleSlots>& slots() const { return slots_; }
  // Every materialized internal label, ascending.
  const std::vector<InternalLabel>& labels() const { return labels_; }
  // One past the largest internal label (0 when empty).
  InternalId domain_size() const;
  std::optional<InternalLabel> lookup(InternalId id) const;

 private:
  std::vector<RuleSlots> slots_;
  std::vector<InternalLabel> labels_;
};

LabelMap assign_internal_labels(const Policy& policy);

// Cells of one field and the columns they occupy.
struct FieldCatalog {
  FieldKind field = FieldKind::kSaddr;
  MCSIResult mcsi;
  std::size_t first_column = 0;

  std::size_t size() const { return mcsi.cells.size(); }
};

struct StaticVarCatalog {
  std::array<FieldCatalog, kFieldCount> fields;
  std::size_t total_columns = 0;

  const FieldCatalog& operator[](FieldKind f) const { return fields[index_of(f)]; }
  FieldKind field_of(std::size_t column) const;
  // "saddr0", "sport3", ... (index within the field group).
  std::string column_name(std::size_t column) const;
  // Columns whose cells make up the predicate's interval set, ascending.
  std::vector<std::size_t> columns_for(FieldKind f, const FieldPredicate& pred) const;
};

StaticVarCatalog build_catalog(const Policy& policy);

enum class LiteralKind {
  kNoneOf,     // every listed column false
  kNotNoneOf,  // some listed column true
};

struct Literal {
  LiteralKind kind = LiteralKind::kNoneOf;
  FieldKind field = FieldKind::kSaddr;
  std::vector<std::size_t> columns;

  bool holds(std::uint64_t assignment) const;
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct SuccClause {
  InternalId from = 0;
  InternalId to = 0;
  // Columns named in the clause head; the rest are anonymous.
  std::vector<std::size_t> carried;
  // Conjunction; empty means unconditional.
  std::vector<Literal> body;

  bool unconditional() const { return body.empty(); }
  bool holds(std::uint64_t assignment) const;
  friend bool operator==(const SuccClause&, const SuccClause&) = default;
};

enum class CallReturnFlow {
  // Every Return-target Then flows to every Call's Return label.
  kConservative,
  // Return labels receive no incoming edges.
  kOmitted,
};

struct CfgOptions {
  CallReturnFlow call_return = CallReturnFlow::kConservative;
};

struct Cfg {
  LabelMap labels;
  std::vector<SuccClause> clauses;
  std::vector<InternalId> init;
  std::vector<InternalId> finals;
};

Cfg build_cfg(const Policy& policy, const StaticVarCatalog& catalog,
              const CfgOptions& options = {});

struct FactBase {
  Label olabel_domain = 0;
  InternalId label_domain = 0;
  std::vector<InternalId> labels;
  std::vector<std::pair<Label, InternalId>> olabels;
  std::vector<InternalId> init;
  std::vector<InternalId> finals;
  // Original variable names, ascending; the dense id is the position.
  std::vector<VarName> vars;
  std::vector<std::pair<InternalId, std::uint32_t>> reads;
  std::vector<std::pair<InternalId, std::uint32_t>> writes;

  std::optional<std::uint32_t> dense_id(VarName name) const;
};

FactBase extract_facts(const Policy& policy, const Cfg& cfg);

// bddbddb-style program: domains, relations, facts, succ clauses and the
// path/reachability/liveness rules.
std::string emit_datalog(const FactBase& facts, const Cfg& cfg,
                         const StaticVarCatalog& catalog);

// Graphviz rendering of the internal-label graph.
std::string emit_dot(const Policy& policy, const Cfg& cfg,
                     const StaticVarCatalog& catalog);

}  // namespace fwa

#endif  // FWA_CFG_H_
