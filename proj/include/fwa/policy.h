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

#ifndef FWA_POLICY_H_
#define FWA_POLICY_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fwa/interval.h"
#include "fwa/net.h"

namespace fwa {

using Label = std::uint64_t;
// Variable names are non-negative integers; $0 holds multi-trigger verdicts.
using VarName = std::uint32_t;

struct Nil {
  friend bool operator==(const Nil&, const Nil&) = default;
};
struct Opaque {
  std::string text;
  friend bool operator==(const Opaque&, const Opaque&) = default;
};
struct Const {
  std::uint64_t value = 0;
  friend bool operator==(const Const&, const Const&) = default;
};
struct ConstMasked {
  std::uint64_t value = 0;
  std::uint64_t mask = ~std::uint64_t{0};
  friend bool operator==(const ConstMasked&, const ConstMasked&) = default;
};

// What a dynamic check compares against.
using CheckValue = std::variant<Nil, Opaque, Const, ConstMasked>;
// What a variable can hold.
using StoredValue = std::variant<Nil, Opaque, Const>;

// Equality test of a stored value against a check pattern. Opaque compares
// by text; Const(c) matches Const(v)/ConstMasked(v, m) iff (c & m) == (v & m);
// Opaque and Const never match each other.
bool value_matches(const StoredValue& stored, const CheckValue& pattern);

std::string to_string(const StoredValue& v);
std::string to_string(const CheckValue& v);

struct FieldPredicate {
  bool negated = false;
  std::vector<Interval> intervals;

  bool matches(Value v) const;
  friend bool operator==(const FieldPredicate&, const FieldPredicate&) = default;
};

struct StaticCheck {
  std::array<std::optional<FieldPredicate>, kFieldCount> fields;

  const std::optional<FieldPredicate>& operator[](FieldKind f) const {
    return fields[index_of(f)];
  }
  std::optional<FieldPredicate>& operator[](FieldKind f) { return fields[index_of(f)]; }

  bool unconstrained() const;
  friend bool operator==(const StaticCheck&, const StaticCheck&) = default;
};

struct DynamicCheck {
  bool negated = false;
  VarName var = 0;
  CheckValue value;

  friend bool operator==(const DynamicCheck&, const DynamicCheck&) = default;
};

struct Accept {
  friend bool operator==(const Accept&, const Accept&) = default;
};
struct Drop {
  friend bool operator==(const Drop&, const Drop&) = default;
};
struct Return {
  friend bool operator==(const Return&, const Return&) = default;
};
struct Call {
  Label target = 0;
  friend bool operator==(const Call&, const Call&) = default;
};
struct Jump {
  Label target = 0;
  friend bool operator==(const Jump&, const Jump&) = default;
};
struct SetVar {
  VarName var = 0;
  StoredValue value;
  friend bool operator==(const SetVar&, const SetVar&) = default;
};

using Target = std::variant<Accept, Drop, Return, Call, Jump, SetVar>;

struct Rule {
  Label label = 0;
  StaticCheck static_check;
  std::optional<DynamicCheck> dynamic_check;
  Target target;
  // Source text when the rule came from a vendor translation; not part of
  // rule identity.
  std::string origin;

  friend bool operator==(const Rule& a, const Rule& b) {
    return a.label == b.label && a.static_check == b.static_check &&
           a.dynamic_check == b.dynamic_check && a.target == b.target;
  }
};

bool is_verdict(const Target& t);

// Rules in ascending label order. Duplicate labels are representable so that
// validate can report them.
class Policy {
 public:
  Policy() = default;
  explicit Policy(std::vector<Rule> rules);

  const std::vector<Rule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }

  // Index of the rule labelled exactly `label`.
  std::optional<std::size_t> find(Label label) const;
  // Index of the first rule whose label is >= `label`: where control lands
  // after a transfer to `label`.
  std::optional<std::size_t> resolve(Label label) const;

  // Copy without the rule at `index`.
  Policy without(std::size_t index) const;

  friend bool operator==(const Policy&, const Policy&) = default;

 private:
  std::vector<Rule> rules_;
};

enum class Severity { kError, kWarning };

enum class DiagCode {
  kDuplicateLabel,
  kDanglingLabel,
  kEmptyPolicy,
  kReturnWithoutCall,
  kNoFinalVerdict,
  kIgnoredOption,
};

std::string_view diag_code_name(DiagCode code);

struct SourceSpan {
  std::uint32_t line = 1;
  std::uint32_t column = 1;
  std::uint32_t length = 0;
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct Diagnostic {
  Severity severity = Severity::kError;
  DiagCode code = DiagCode::kDuplicateLabel;
  std::string message;
  std::optional<Label> label;
  std::optional<SourceSpan> span;
};

bool has_errors(const std::vector<Diagnostic>& diagnostics);

// Structural well-formedness: duplicate labels and dangling jump/call
// targets are errors; an empty policy is an error; a Return with no Call
// anywhere and a last rule without a verdict are warnings.
std::vector<Diagnostic> validate(const Policy& policy);

}  // namespace fwa

#endif  // FWA_POLICY_H_
