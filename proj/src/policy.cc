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

#include "fwa/policy.h"

#include <algorithm>
#include <set>
#include <string>

namespace fwa {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

bool value_matches(const StoredValue& stored, const CheckValue& pattern) {
  return std::visit(
      Overloaded{
          [](const Nil&, const Nil&) { return true; },
          [](const Opaque& s, const Opaque& p) { return s.text == p.text; },
          [](const Const& s, const Const& p) { return s.value == p.value; },
          [](const Const& s, const ConstMasked& p) {
            return (s.value & p.mask) == (p.value & p.mask);
          },
          [](const auto&, const auto&) { return false; },
      },
      stored, pattern);
}

std::string to_string(const StoredValue& v) {
  return std::visit(Overloaded{
                        [](const Nil&) -> std::string { return "nil"; },
                        [](const Opaque& o) { return "'" + o.text + "'"; },
                        [](const Const& c) { return std::to_string(c.value); },
                    },
                    v);
}

std::string to_string(const CheckValue& v) {
  return std::visit(Overloaded{
                        [](const Nil&) -> std::string { return "nil"; },
                        [](const Opaque& o) { return "'" + o.text + "'"; },
                        [](const Const& c) { return std::to_string(c.value); },
                        [](const ConstMasked& c) {
                          return std::to_string(c.value) + "&" +
                                 std::to_string(c.mask);
                        },
                    },
                    v);
}

bool FieldPredicate::matches(Value v) const {
  bool inside = std::any_of(intervals.begin(), intervals.end(),
                            [v](const Interval& i) { return i.contains(v); });
  return inside != negated;
}

bool StaticCheck::unconstrained() const {
  return std::none_of(fields.begin(), fields.end(),
                      [](const auto& f) { return f.has_value(); });
}

bool is_verdict(const Target& t) {
  return std::holds_alternative<Accept>(t) || std::holds_alternative<Drop>(t);
}

Policy::Policy(std::vector<Rule> rules) : rules_(std::move(rules)) {
  std::stable_sort(rules_.begin(), rules_.end(),
                   [](const Rule& a, const Rule& b) { return a.label < b.label; });
}

std::optional<std::size_t> Policy::find(Label label) const {
  auto it = resolve(label);
  if (it && rules_[*it].label == label) return it;
  return std::nullopt;
}

std::optional<std::size_t> Policy::resolve(Label label) const {
  auto it = std::lower_bound(
      rules_.begin(), rules_.end(), label,
      [](const Rule& r, Label l) { return r.label < l; });
  if (it == rules_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - rules_.begin());
}

Policy Policy::without(std::size_t index) const {
  std::vector<Rule> rest = rules_;
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(index));
  return Policy(std::move(rest));
}

std::string_view diag_code_name(DiagCode code) {
  switch (code) {
    case DiagCode::kDuplicateLabel: return "DuplicateLabel";
    case DiagCode::kDanglingLabel: return "DanglingLabel";
    case DiagCode::kEmptyPolicy: return "EmptyPolicy";
    case DiagCode::kReturnWithoutCall: return "ReturnWithoutCall";
    case DiagCode::kNoFinalVerdict: return "NoFinalVerdict";
    case DiagCode::kIgnoredOption: return "IgnoredOption";
  }
  return "Unknown";
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) {
    return d.severity == Severity::kError;
  });
}

std::vector<Diagnostic> validate(const Policy& policy) {
  std::vector<Diagnostic> out;
  const auto& rules = policy.rules();
  if (rules.empty()) {
    out.push_back({Severity::kError, DiagCode::kEmptyPolicy, "policy has no rules",
                   std::nullopt, std::nullopt});
    return out;
  }

  std::set<Label> labels;
  for (const Rule& r : rules) {
    if (!labels.insert(r.label).second) {
      out.push_back({Severity::kError, DiagCode::kDuplicateLabel,
                     "duplicate label " + std::to_string(r.label), r.label,
                     std::nullopt});
    }
  }

  bool has_call = false;
  bool has_return = false;
  for (const Rule& r : rules) {
    std::optional<Label> target;
    if (const auto* c = std::get_if<Call>(&r.target)) {
      has_call = true;
      target = c->target;
    } else if (const auto* j = std::get_if<Jump>(&r.target)) {
      target = j->target;
    } else if (std::holds_alternative<Return>(r.target)) {
      has_return = true;
    }
    if (target && !labels.contains(*target)) {
      out.push_back({Severity::kError, DiagCode::kDanglingLabel,
                     "rule " + std::to_string(r.label) + " transfers to label " +
                         std::to_string(*target) + " which has no rule",
                     *target, std::nullopt});
    }
  }

  if (has_return && !has_call) {
    out.push_back({Severity::kWarning, DiagCode::kReturnWithoutCall,
                   "policy returns but never calls; the return is undefined",
                   std::nullopt, std::nullopt});
  }
  if (!is_verdict(rules.back().target)) {
    out.push_back({Severity::kWarning, DiagCode::kNoFinalVerdict,
                   "last rule " + std::to_string(rules.back().label) +
                       " has no accept/drop target; falling off the end is undefined",
                   rules.back().label, std::nullopt});
  }
  return out;
}

}  // namespace fwa
