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

#include <map>

#include "common.h"

namespace fwa {

using frontend::Cursor;
using frontend::keyword;
using frontend::Line;


namespace {

void note_ignored(const Line& line, const std::vector<std::string>& ignored,
                  std::vector<Diagnostic>& warnings) {
  if (ignored.empty()) return;
  std::string what;
  for (const std::string& i : ignored) what += (what.empty() ? "" : ", ") + i;
  warnings.push_back(frontend::ignored_option(line, what));
}

}  // namespace

PfPolicy parse_pf(std::string_view text) {
  PfPolicy out;
  out.rulesets.push_back({"", {}});
  std::vector<std::size_t> open{0};
  for (const Line& line : frontend::split_lines(text, true)) {
    Cursor c(line);
    if (c.accept("}")) {
      if (open.size() == 1) c.fail("unbalanced '}'");
      open.pop_back();
      if (!c.at_end()) c.fail("unexpected '" + c.peek() + "'");
      continue;
    }
    PfRule rule;
    rule.source = {line.number, line.text};
    const std::string head = c.next("rule");
    if (keyword(head, "pass") || keyword(head, "block") || keyword(head, "match")) {
      rule.action = keyword(head, "pass")    ? PfAction::kPass
                    : keyword(head, "block") ? PfAction::kBlock
                                             : PfAction::kMatch;
      if (rule.action == PfAction::kBlock && (c.peek_is("drop") || c.peek_is("return"))) {
        c.next("block policy");
      }
      auto parsed = frontend::parse_filter_words(c, false);
      if (!c.at_end()) c.fail("unexpected '" + c.peek() + "'");
      rule.filter = parsed.filter;
      rule.quick = parsed.quick;
      rule.tag = parsed.tag;
      note_ignored(line, parsed.ignored, out.warnings);
      if (rule.action == PfAction::kMatch && !rule.tag) {
        out.warnings.push_back(frontend::ignored_option(line, "match rule without tag"));
        continue;
      }
    } else if (keyword(head, "anchor")) {
      const std::string name = c.next("anchor name");
      auto parsed = frontend::parse_filter_words(c, false);
      if (parsed.tag) c.fail("anchors cannot tag");
      rule.filter = parsed.filter;
      note_ignored(line, parsed.ignored, out.warnings);
      if (c.accept("{")) {
        const std::string& parent = out.rulesets[open.back()].path;
        rule.action = PfAction::kAnchorBlock;
        rule.anchor = parent.empty() ? name : parent + "/" + name;
        rule.block = out.rulesets.size();
        out.rulesets.push_back({rule.anchor, {}});
        out.rulesets[open.back()].rules.push_back(rule);
        if (!c.accept("}")) open.push_back(rule.block);
        if (!c.at_end()) c.fail("unexpected '" + c.peek() + "'");
        continue;
      }
      rule.action = PfAction::kAnchorCall;
      rule.anchor = name;
    } else {
      if (auto p = frontend::sniff_platform(line); p && *p != Platform::kPf) {
        throw Error(ErrorCode::kWrongPlatform, "line " + std::to_string(line.number) +
                                                   ": looks like " +
                                                   std::string(platform_name(*p)) +
                                                   " syntax, not pf");
      }
      c.fail("expected pass, block, match or anchor");
    }
    out.rulesets[open.back()].rules.push_back(std::move(rule));
  }
  if (open.size() != 1) {
    throw Error(ErrorCode::kParseError, "anchor '" + out.rulesets[open.back()].path +
                                            "' is missing its closing '}'");
  }
  return out;
}

Translation translate_pf(const PfPolicy& v) {
  Translation out;
  out.warnings = v.warnings;
  if (v.rulesets.empty()) throw Error(ErrorCode::kInternal, "pf policy without main ruleset");

  std::vector<Label> base(v.rulesets.size());
  std::map<std::string, std::size_t> by_path;
  for (std::size_t i = 1; i < v.rulesets.size(); ++i) {
    base[i] = kHoistedBase + kBandWidth * (i - 1);
    by_path.emplace(v.rulesets[i].path, i);
  }

  auto resolve = [&](const PfRuleset& from, const PfRule& r) -> std::size_t {
    std::string ref = r.anchor;
    if (!ref.empty() && ref.front() == '/') {
      ref.erase(0, 1);
    } else if (!from.path.empty()) {
      if (auto it = by_path.find(from.path + "/" + ref); it != by_path.end()) return it->second;
    }
    if (auto it = by_path.find(ref); it != by_path.end()) return it->second;
    throw Error(ErrorCode::kUnknownAnchor, "line " + std::to_string(r.source.line) +
                                               ": unknown anchor '" + r.anchor + "'");
  };

  std::vector<Rule> rules;
  for (std::size_t i = 0; i < v.rulesets.size(); ++i) {
    const PfRuleset& rs = v.rulesets[i];
    const std::string band_name = i == 0 ? std::string("main ruleset") : "anchor " + rs.path;
    std::size_t index = 0;
    auto emit = [&](const VendorFilter& f, Target t, std::string origin) {
      rules.push_back(frontend::make_rule(frontend::band_label(base[i], index++, band_name), f,
                                          std::move(t), std::move(origin)));
    };
    for (const PfRule& r : rs.rules) {
      const std::string origin = frontend::origin_of(r.source);
      switch (r.action) {
        case PfAction::kPass:
        case PfAction::kBlock:
        case PfAction::kMatch: {
          if (r.tag) emit(r.filter, SetVar{1, Opaque{*r.tag}}, origin);
          if (r.action == PfAction::kMatch) break;
          const bool pass = r.action == PfAction::kPass;
          if (r.quick) {
            emit(r.filter, pass ? Target{Accept{}} : Target{Drop{}}, origin);
          } else {
            emit(r.filter, SetVar{0, Opaque{pass ? "ACCEPT" : "DROP"}}, origin);
          }
          break;
        }
        case PfAction::kAnchorCall:
          emit(r.filter, Call{base[resolve(rs, r)] + 1}, origin);
          break;
        case PfAction::kAnchorBlock:
          emit(r.filter, Call{base[r.block] + 1}, origin);
          break;
      }
    }
    if (i == 0) {
      for (const Rule& r : rules) {
        if (r.label == kEpilogueDropLabel || r.label == kEpilogueAcceptLabel) {
          throw Error(ErrorCode::kLabelCollision,
                      "label " + std::to_string(r.label) + " is reserved for the epilogue");
        }
      }
      VendorFilter is_drop;
      is_drop.dynamic = DynamicCheck{false, 0, Opaque{"DROP"}};
      rules.push_back(frontend::make_rule(kEpilogueDropLabel, is_drop, Drop{},
                                          "epilogue: last matching rule blocked"));
      rules.push_back(frontend::make_rule(kEpilogueAcceptLabel, {}, Accept{},
                                          "epilogue: default pass"));
    } else {
      emit({}, Return{}, "end of anchor " + rs.path);
    }
  }
  out.policy = Policy(std::move(rules));
  return out;
}

}  // namespace fwa
