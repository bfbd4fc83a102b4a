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

#include "fwa/cfg.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "fwa/error.h"

namespace fwa {
namespace {

std::uint64_t mask_of(const std::vector<std::size_t>& columns) {
  std::uint64_t m = 0;
  for (std::size_t c : columns) m |= std::uint64_t{1} << c;
  return m;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// x1..xn, or nothing when there are no columns.
std::string column_vars(std::size_t n) {
  std::string out;
  for (std::size_t i = 1; i <= n; ++i) out += ",x" + std::to_string(i);
  return out;
}

std::string target_summary(const Target& t) {
  if (std::holds_alternative<Accept>(t)) return "accept";
  if (std::holds_alternative<Drop>(t)) return "drop";
  if (std::holds_alternative<Return>(t)) return "return";
  if (auto c = std::get_if<Call>(&t)) return "call " + std::to_string(c->target);
  if (auto j = std::get_if<Jump>(&t)) return "jump " + std::to_string(j->target);
  const auto& s = std::get<SetVar>(t);
  return "$" + std::to_string(s.var) + "=" + to_string(s.value);
}

}  // namespace

std::string_view label_kind_name(LabelKind kind) {
  switch (kind) {
    case LabelKind::kIf: return "if";
    case LabelKind::kThen: return "then";
    case LabelKind::kReturn: return "return";
  }
  return "?";
}

LabelMap::LabelMap(std::vector<RuleSlots> slots) : slots_(std::move(slots)) {
  for (std::size_t k = 0; k < slots_.size(); ++k) {
    const RuleSlots& s = slots_[k];
    labels_.push_back({s.if_label, LabelKind::kIf, s.external, k});
    labels_.push_back({s.then_label, LabelKind::kThen, s.external, k});
    if (s.return_label) labels_.push_back({*s.return_label, LabelKind::kReturn, s.external, k});
  }
}

InternalId LabelMap::domain_size() const {
  return labels_.empty() ? 0 : labels_.back().value + 1;
}

std::optional<InternalLabel> LabelMap::lookup(InternalId id) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), id,
                             [](const InternalLabel& l, InternalId v) { return l.value < v; });
  if (it == labels_.end() || it->value != id) return std::nullopt;
  return *it;
}

LabelMap assign_internal_labels(const Policy& policy) {
  std::vector<RuleSlots> slots;
  for (std::size_t k = 0; k < policy.size(); ++k) {
    const Rule& r = policy.rules()[k];
    RuleSlots s{r.label, 3 * k, 3 * k + 1, std::nullopt};
    if (std::holds_alternative<Call>(r.target)) s.return_label = 3 * k + 2;
    slots.push_back(s);
  }
  return LabelMap(std::move(slots));
}

FieldKind StaticVarCatalog::field_of(std::size_t column) const {
  for (const FieldCatalog& f : fields) {
    if (column >= f.first_column && column < f.first_column + f.size()) return f.field;
  }
  throw Error(ErrorCode::kInternal, "column " + std::to_string(column) + " out of range");
}

std::string StaticVarCatalog::column_name(std::size_t column) const {
  const FieldCatalog& f = (*this)[field_of(column)];
  return std::string(field_name(f.field)) + std::to_string(column - f.first_column);
}

std::vector<std::size_t> StaticVarCatalog::columns_for(FieldKind f,
                                                       const FieldPredicate& pred) const {
  const FieldCatalog& fc = (*this)[f];
  std::set<std::size_t> cols;
  for (const Interval& i : pred.intervals) {
    for (std::size_t cell : decompose(i, fc.mcsi)) cols.insert(fc.first_column + cell);
  }
  return {cols.begin(), cols.end()};
}

StaticVarCatalog build_catalog(const Policy& policy) {
  StaticVarCatalog catalog;
  std::size_t next = 0;
  for (FieldKind f : kAllFields) {
    std::vector<Interval> all;
    for (const Rule& r : policy.rules()) {
      if (const auto& pred = r.static_check[f]) {
        all.insert(all.end(), pred->intervals.begin(), pred->intervals.end());
      }
    }
    FieldCatalog& fc = catalog.fields[index_of(f)];
    fc.field = f;
    fc.mcsi = mcsi(all);
    fc.first_column = next;
    next += fc.size();
  }
  catalog.total_columns = next;
  return catalog;
}

bool Literal::holds(std::uint64_t assignment) const {
  const bool none = (assignment & mask_of(columns)) == 0;
  return kind == LiteralKind::kNoneOf ? none : !none;
}

bool SuccClause::holds(std::uint64_t assignment) const {
  return std::all_of(body.begin(), body.end(),
                     [&](const Literal& l) { return l.holds(assignment); });
}

Cfg build_cfg(const Policy& policy, const StaticVarCatalog& catalog,
              const CfgOptions& options) {
  Cfg cfg;
  cfg.labels = assign_internal_labels(policy);
  const auto& rules = policy.rules();
  const auto& slots = cfg.labels.slots();
  if (rules.empty()) return cfg;

  cfg.init.push_back(slots.front().if_label);

  std::vector<InternalId> call_returns;
  for (const RuleSlots& s : slots) {
    if (s.return_label) call_returns.push_back(*s.return_label);
  }

  for (std::size_t k = 0; k < rules.size(); ++k) {
    const Rule& r = rules[k];
    const RuleSlots& s = slots[k];
    const std::optional<InternalId> next =
        k + 1 < rules.size() ? std::optional(slots[k + 1].if_label) : std::nullopt;

    // Columns of each constrained field.
    std::vector<std::pair<FieldKind, std::vector<std::size_t>>> groups;
    std::vector<std::size_t> rule_columns;
    for (FieldKind f : kAllFields) {
      if (const auto& pred = r.static_check[f]) {
        groups.emplace_back(f, catalog.columns_for(f, *pred));
        rule_columns.insert(rule_columns.end(), groups.back().second.begin(),
                            groups.back().second.end());
      }
    }

    SuccClause satisfied{s.if_label, s.then_label, rule_columns, {}};
    for (const auto& [f, cols] : groups) {
      const bool negated = r.static_check[f]->negated;
      satisfied.body.push_back(
          {negated ? LiteralKind::kNoneOf : LiteralKind::kNotNoneOf, f, cols});
    }
    cfg.clauses.push_back(satisfied);

    if (next) {
      for (const auto& [f, cols] : groups) {
        const bool negated = r.static_check[f]->negated;
        cfg.clauses.push_back(
            {s.if_label, *next, cols,
             {{negated ? LiteralKind::kNotNoneOf : LiteralKind::kNoneOf, f, cols}}});
      }
      // A dynamic check may fail whatever the packet fields are.
      if (r.dynamic_check) cfg.clauses.push_back({s.if_label, *next, {}, {}});
    }

    auto then_edge = [&](InternalId to) {
      cfg.clauses.push_back({s.then_label, to, rule_columns, {}});
    };
    std::visit(
        [&](const auto& t) {
          using T = std::decay_t<decltype(t)>;
          if constexpr (std::is_same_v<T, Accept> || std::is_same_v<T, Drop>) {
            cfg.finals.push_back(s.then_label);
          } else if constexpr (std::is_same_v<T, Jump>) {
            if (auto to = policy.resolve(t.target)) then_edge(slots[*to].if_label);
          } else if constexpr (std::is_same_v<T, SetVar>) {
            if (next) then_edge(*next);
          } else if constexpr (std::is_same_v<T, Call>) {
            if (auto to = policy.resolve(t.target)) then_edge(slots[*to].if_label);
            if (next) cfg.clauses.push_back({*s.return_label, *next, rule_columns, {}});
          } else if constexpr (std::is_same_v<T, Return>) {
            if (options.call_return == CallReturnFlow::kConservative) {
              for (InternalId ret : call_returns) then_edge(ret);
            }
          }
        },
        r.target);
  }
  if (std::holds_alternative<SetVar>(rules.back().target)) {
    cfg.finals.push_back(slots.back().then_label);
  }
  std::sort(cfg.finals.begin(), cfg.finals.end());
  return cfg;
}

std::optional<std::uint32_t> FactBase::dense_id(VarName name) const {
  auto it = std::lower_bound(vars.begin(), vars.end(), name);
  if (it == vars.end() || *it != name) return std::nullopt;
  return static_cast<std::uint32_t>(it - vars.begin());
}

FactBase extract_facts(const Policy& policy, const Cfg& cfg) {
  FactBase facts;
  facts.label_domain = cfg.labels.domain_size();
  for (const InternalLabel& l : cfg.labels.labels()) {
    facts.labels.push_back(l.value);
    facts.olabels.emplace_back(l.external, l.value);
  }
  if (!policy.empty()) facts.olabel_domain = policy.rules().back().label + 1;
  facts.init = cfg.init;
  facts.finals = cfg.finals;

  std::set<VarName> names;
  for (const Rule& r : policy.rules()) {
    if (r.dynamic_check) names.insert(r.dynamic_check->var);
    if (auto s = std::get_if<SetVar>(&r.target)) names.insert(s->var);
  }
  facts.vars.assign(names.begin(), names.end());

  const auto& slots = cfg.labels.slots();
  for (std::size_t k = 0; k < policy.size(); ++k) {
    const Rule& r = policy.rules()[k];
    if (r.dynamic_check) {
      facts.reads.emplace_back(slots[k].if_label, *facts.dense_id(r.dynamic_check->var));
    }
  }
  for (std::size_t k = 0; k < policy.size(); ++k) {
    const Rule& r = policy.rules()[k];
    if (auto s = std::get_if<SetVar>(&r.target)) {
      facts.writes.emplace_back(slots[k].then_label, *facts.dense_id(s->var));
    }
  }
  return facts;
}

std::string emit_datalog(const FactBase& facts, const Cfg& cfg,
                         const StaticVarCatalog& catalog) {
  const std::size_t n = catalog.total_columns;
  const std::string xs = column_vars(n);
  std::ostringstream out;

  out << "### Domains\n";
  out << "O " << facts.olabel_domain << " olabels.map\n";
  out << "L " << facts.label_domain << " labels.map\n";
  out << "V " << facts.vars.size() << " vars.map\n";
  out << "B 2\n\n";

  std::set<std::size_t> group_sizes;
  for (const FieldCatalog& f : catalog.fields) {
    if (f.size()) group_sizes.insert(f.size());
  }
  std::string bcols;
  for (std::size_t i = 1; i <= n; ++i) bcols += ", x" + std::to_string(i) + " : B";

  out << "### Relations\n";
  out << "label (l : L) inputtuples\n";
  out << "olabel (o : O, l : L) inputtuples\n";
  out << "init (l : L) inputtuples\n";
  out << "final (l : L) inputtuples\n";
  out << "var (v : V) inputtuples\n";
  out << "read (l : L, v : V) inputtuples\n";
  out << "write (l : L, v : V) inputtuples\n";
  for (std::size_t k : group_sizes) {
    std::vector<std::string> args;
    for (std::size_t i = 0; i < k; ++i) args.push_back("b" + std::to_string(i) + " : B");
    out << "none" << k << " (" << join(args, ", ") << ")\n";
  }
  out << "succ (a : L, b : L" << bcols << ")\n";
  out << "path (a : L, b : L" << bcols << ")\n";
  out << "reachable (l : L) outputtuples\n";
  out << "unreachable (l : L) outputtuples\n";
  out << "readonlyPath (a : L, b : L, v : V" << bcols << ")\n";
  out << "live (l : L, v : V) outputtuples\n";
  out << "dead (l : L) outputtuples\n\n";

  out << "### Rules\n";
  for (InternalId l : facts.labels) out << "label(" << l << ").\n";
  for (const auto& [o, l] : facts.olabels) out << "olabel(" << o << "," << l << ").\n";
  for (InternalId l : facts.finals) out << "final(" << l << ").\n";
  for (std::size_t v = 0; v < facts.vars.size(); ++v) out << "var(" << v << ").\n";
  for (const auto& [l, v] : facts.reads) out << "read(" << l << "," << v << ").\n";
  for (const auto& [l, v] : facts.writes) out << "write(" << l << "," << v << ").\n";
  for (InternalId l : facts.init) out << "init(" << l << ").\n";
  for (std::size_t k : group_sizes) {
    out << "none" << k << "(" << join(std::vector<std::string>(k, "0"), ",") << ").\n";
  }
  out << "\n";

  InternalId current_from = ~InternalId{0};
  for (const SuccClause& c : cfg.clauses) {
    if (c.from != current_from) {
      current_from = c.from;
      if (auto l = cfg.labels.lookup(c.from)) {
        out << "# " << label_kind_name(l->kind) << " " << l->external << "\n";
      }
    }
    std::vector<std::string> head{std::to_string(c.from), std::to_string(c.to)};
    for (std::size_t col = 0; col < n; ++col) {
      const bool named = std::find(c.carried.begin(), c.carried.end(), col) != c.carried.end();
      head.push_back(named ? catalog.column_name(col) : "_");
    }
    out << "succ(" << join(head, ",") << ")";
    if (!c.body.empty()) {
      std::vector<std::string> lits;
      for (const Literal& lit : c.body) {
        const FieldCatalog& fc = catalog[lit.field];
        std::vector<std::string> args;
        for (std::size_t i = 0; i < fc.size(); ++i) {
          const std::size_t col = fc.first_column + i;
          const bool in = std::find(lit.columns.begin(), lit.columns.end(), col) !=
                          lit.columns.end();
          args.push_back(in ? catalog.column_name(col) : "0");
        }
        lits.push_back(std::string(lit.kind == LiteralKind::kNotNoneOf ? "!" : "") + "none" +
                       std::to_string(fc.size()) + "(" + join(args, ",") + ")");
      }
      out << " :- " << join(lits, ", ");
    }
    out << ".\n";
  }
  out << "\n";

  out << "path(A,B" << xs << ") :- A=B, label(A), label(B).\n";
  out << "path(A,C" << xs << ") :- succ(A,B" << xs << "), path(B,C" << xs
      << "), label(A), label(B), label(C).\n";
  out << "reachable(L) :- init(Li), path(Li,L" << xs << ").\n";
  out << "unreachable(L) :- label(L), !reachable(L).\n";
  out << "readonlyPath(A,B,_" << xs << ") :- A=B, label(A), label(B).\n";
  out << "readonlyPath(A,B,_" << xs << ") :- succ(A,B" << xs << "), label(A), label(B).\n";
  out << "readonlyPath(A,C,V" << xs << ") :- readonlyPath(A,B,V" << xs << "), succ(B,C"
      << xs << "), var(V), label(A), label(B), label(C), !write(B,V).\n";
  out << "live(L,V) :- init(Li), path(Li,L" << xs << "), read(Lr,V), readonlyPath(L,Lr,V"
      << xs << ").\n";
  out << "dead(L) :- write(L,V), reachable(L), !live(L,V).\n";
  return out.str();
}

std::string emit_dot(const Policy& policy, const Cfg& cfg, const StaticVarCatalog& catalog) {
  std::ostringstream out;
  out << "digraph policy {\n";
  out << "  node [shape=box, fontname=\"monospace\"];\n";
  const std::set<InternalId> finals(cfg.finals.begin(), cfg.finals.end());
  const std::set<InternalId> init(cfg.init.begin(), cfg.init.end());
  for (const InternalLabel& l : cfg.labels.labels()) {
    const Rule& r = policy.rules()[l.rule_index];
    std::string text = std::to_string(l.value) + ": " + std::string(label_kind_name(l.kind)) +
                       " " + std::to_string(l.external);
    if (l.kind == LabelKind::kThen) text += "\\n" + target_summary(r.target);
    out << "  n" << l.value << " [label=\"" << text << "\"";
    if (finals.count(l.value)) out << ", peripheries=2";
    if (init.count(l.value)) out << ", style=bold";
    out << "];\n";
  }

  // One edge per node pair; alternative guards are joined with '|'.
  std::map<std::pair<InternalId, InternalId>, std::vector<std::string>> edges;
  for (const SuccClause& c : cfg.clauses) {
    std::vector<std::string> lits;
    for (const Literal& lit : c.body) {
      std::vector<std::string> cols;
      for (std::size_t col : lit.columns) cols.push_back(catalog.column_name(col));
      lits.push_back(std::string(lit.kind == LiteralKind::kNoneOf ? "none" : "any") + "(" +
                     join(cols, ",") + ")");
    }
    edges[{c.from, c.to}].push_back(lits.empty() ? "true" : join(lits, " & "));
  }
  for (const auto& [key, guards] : edges) {
    const bool always = std::find(guards.begin(), guards.end(), "true") != guards.end();
    out << "  n" << key.first << " -> n" << key.second;
    if (!always) out << " [label=\"" << join(guards, " | ") << "\"]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace fwa
