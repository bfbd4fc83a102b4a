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

#include <algorithm>
#include <map>
#include <set>

#include "common.h"

namespace fwa {

using frontend::Cursor;
using frontend::keyword;
using frontend::Line;

IpfilterPolicy parse_ipfilter(std::string_view text) {
  IpfilterPolicy out;
  for (const Line& line : frontend::split_lines(text, true)) {
    Cursor c(line);
    IpfRule rule;
    rule.source = {line.number, line.text};
    const std::string action = c.next("action");
    if (keyword(action, "pass")) {
      rule.action = IpfAction::kPass;
    } else if (keyword(action, "block")) {
      rule.action = IpfAction::kBlock;
      if (c.peek_is("return-rst") || c.peek_is("return-icmp")) c.next("block option");
    } else if (keyword(action, "skip")) {
      rule.action = IpfAction::kSkip;
      rule.skip = static_cast<unsigned>(c.number("rule count", 0xFFFFFFFFull));
    } else {
      if (auto p = frontend::sniff_platform(line); p && *p != Platform::kIpfilter) {
        throw Error(ErrorCode::kWrongPlatform, "line " + std::to_string(line.number) +
                                                   ": looks like " +
                                                   std::string(platform_name(*p)) +
                                                   " syntax, not ipfilter");
      }
      c.fail("expected pass, block or skip");
    }
    auto parsed = frontend::parse_filter_words(c, true);
    if (!c.at_end()) c.fail("unexpected '" + c.peek() + "'");
    rule.filter = parsed.filter;
    rule.quick = parsed.quick;
    rule.head = parsed.head;
    rule.group = parsed.group.value_or(0);
    if (rule.head && *rule.head == 0) c.fail("group 0 cannot be a head");
    if (rule.head && rule.action == IpfAction::kSkip) c.fail("skip rules cannot start a group");
    if (!parsed.ignored.empty()) {
      std::string what;
      for (const std::string& i : parsed.ignored) what += (what.empty() ? "" : ", ") + i;
      out.warnings.push_back(frontend::ignored_option(line, what));
    }
    out.rules.push_back(std::move(rule));
  }
  return out;
}

Translation translate_ipfilter(const IpfilterPolicy& v) {
  Translation out;
  out.warnings = v.warnings;

  std::set<std::uint32_t> heads;
  for (const IpfRule& r : v.rules) {
    if (r.head) heads.insert(*r.head);
  }
  std::map<std::uint32_t, std::vector<const IpfRule*>> groups{{0, {}}};
  for (std::uint32_t h : heads) groups[h];
  for (const IpfRule& r : v.rules) {
    if (r.group != 0 && !heads.count(r.group)) {
      throw Error(ErrorCode::kDanglingGroup, "line " + std::to_string(r.source.line) +
                                                 ": group " + std::to_string(r.group) +
                                                 " has no head rule");
    }
    groups[r.group].push_back(&r);
  }

  std::map<std::uint32_t, Label> base;
  std::size_t hoisted = 0;
  for (const auto& [g, members] : groups) {
    base[g] = g == 0 ? 0 : kHoistedBase + kBandWidth * hoisted++;
  }

  auto ir_count = [](const IpfRule& r) -> std::size_t { return r.head ? 4 : 1; };

  std::vector<Rule> rules;
  for (const auto& [g, members] : groups) {
    const std::string band_name = "group " + std::to_string(g);
    // First IR label of each vendor rule, plus the group terminator.
    std::vector<Label> first;
    std::size_t count = 0;
    for (const IpfRule* r : members) {
      first.push_back(frontend::band_label(base[g], count, band_name));
      count += ir_count(*r);
    }
    const Label terminator =
        g == 0 ? kEpilogueDropLabel : frontend::band_label(base[g], count, band_name);
    first.push_back(terminator);

    std::size_t index = 0;
    auto emit = [&](const VendorFilter& f, Target t, const std::string& origin) {
      rules.push_back(frontend::make_rule(frontend::band_label(base[g], index++, band_name), f,
                                          std::move(t), origin));
    };
    auto verdict = [](bool accept) { return accept ? Target{Accept{}} : Target{Drop{}}; };
    auto word = [](bool accept) { return Opaque{accept ? "ACCEPT" : "DROP"}; };

    for (std::size_t i = 0; i < members.size(); ++i) {
      const IpfRule& r = *members[i];
      const std::string origin = frontend::origin_of(r.source);
      const bool pass = r.action == IpfAction::kPass;
      if (r.action == IpfAction::kSkip) {
        const std::size_t to = i + 1 + r.skip;
        if (to > members.size()) {
          throw Error(ErrorCode::kSkipPastEnd, "line " + std::to_string(r.source.line) +
                                                   ": skip " + std::to_string(r.skip) +
                                                   " goes past the end of group " +
                                                   std::to_string(g));
        }
        emit(r.filter, Jump{first[to]}, origin);
      } else if (r.head) {
        const VarName h = *r.head;
        // The head's own action is the group's default; O is the other one.
        const bool other_accept = !pass;
        VendorFilter got_other = r.filter;
        got_other.dynamic = DynamicCheck{false, h, word(other_accept)};
        VendorFilter got_default = r.filter;
        got_default.dynamic = DynamicCheck{true, h, word(other_accept)};
        emit(r.filter, SetVar{h, Nil{}}, origin);
        emit(r.filter, Call{base.at(h) + 1}, origin);
        if (r.quick) {
          emit(got_other, verdict(other_accept), origin);
          emit(got_default, verdict(pass), origin);
        } else {
          emit(got_other, SetVar{g, word(other_accept)}, origin);
          emit(got_default, SetVar{g, word(pass)}, origin);
        }
      } else if (r.quick) {
        emit(r.filter, verdict(pass), origin);
      } else {
        emit(r.filter, SetVar{g, word(pass)}, origin);
      }
    }

    if (g == 0) {
      VendorFilter is_drop;
      is_drop.dynamic = DynamicCheck{false, 0, Opaque{"DROP"}};
      rules.push_back(frontend::make_rule(kEpilogueDropLabel, is_drop, Drop{},
                                          "epilogue: last matching rule blocked"));
      rules.push_back(frontend::make_rule(kEpilogueAcceptLabel, {}, Accept{},
                                          "epilogue: default pass"));
    } else {
      emit({}, Return{}, "end of group " + std::to_string(g));
    }
  }
  out.policy = Policy(std::move(rules));
  return out;
}

}  // namespace fwa
