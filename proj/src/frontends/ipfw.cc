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
#include <cctype>
#include <set>

#include "common.h"

namespace fwa {

using frontend::Cursor;
using frontend::keyword;
using frontend::Line;

namespace {

bool looks_like_ports(const std::string& w) {
  return !w.empty() && std::isdigit(static_cast<unsigned char>(w.front())) &&
         w.find('.') == std::string::npos;
}

void parse_endpoint(Cursor& c, VendorFilter& filter, FieldKind addr, FieldKind port) {
  const bool neg = c.accept("not") || c.accept("!");
  const std::string a = c.next("address");
  if (keyword(a, "me") || keyword(a, "table")) c.fail("'" + a + "' cannot be expressed as an interval");
  if (auto i = frontend::address_interval(c, a)) {
    frontend::constrain(c, filter, addr, {*i}, neg);
  } else if (neg) {
    c.fail("'not any' matches nothing");
  }
  if (looks_like_ports(c.peek())) {
    std::vector<Interval> ports{frontend::port_interval(c, c.next("port"))};
    while (c.accept(",")) ports.push_back(frontend::port_interval(c, c.next("port")));
    frontend::constrain(c, filter, port, std::move(ports), false);
  }
}

}  // namespace

IpfwPolicy parse_ipfw(std::string_view text) {
  IpfwPolicy out;
  for (const Line& line : frontend::split_lines(text, true)) {
    Cursor c(line);
    c.accept("ipfw");
    c.accept("add");
    if (!frontend::to_number(c.peek())) {
      if (auto p = frontend::sniff_platform(line); p && *p != Platform::kIpfw) {
        throw Error(ErrorCode::kWrongPlatform, "line " + std::to_string(line.number) +
                                                   ": looks like " +
                                                   std::string(platform_name(*p)) +
                                                   " syntax, not ipfw");
      }
      c.fail("expected a rule number");
    }
    IpfwRule rule;
    rule.source = {line.number, line.text};
    rule.number = static_cast<std::uint32_t>(c.number("rule number", 65535));
    std::vector<std::string> ignored;
    if (c.accept("set")) rule.set = static_cast<unsigned>(c.number("set number", 31));
    if (c.accept("prob")) {
      // Probabilistic rules are analyzed as if they always fire.
      ignored.push_back("probability " + c.next("probability"));
    }
    const std::string action = c.next("action");
    if (keyword(action, "allow") || keyword(action, "accept") || keyword(action, "pass") ||
        keyword(action, "permit")) {
      rule.action = IpfwAction::kAllow;
    } else if (keyword(action, "deny") || keyword(action, "drop") || keyword(action, "reset")) {
      rule.action = IpfwAction::kDeny;
    } else if (keyword(action, "unreach")) {
      rule.action = IpfwAction::kDeny;
      ignored.push_back("unreach code " + c.next("unreach code"));
    } else if (keyword(action, "skipto")) {
      rule.action = IpfwAction::kSkipTo;
      rule.argument = static_cast<std::uint32_t>(c.number("rule number", 65535));
    } else if (keyword(action, "tag") || keyword(action, "untag")) {
      rule.action = keyword(action, "tag") ? IpfwAction::kTag : IpfwAction::kUntag;
      rule.argument = static_cast<std::uint32_t>(c.number("tag number", 65535));
    } else if (keyword(action, "count")) {
      out.warnings.push_back(frontend::ignored_option(line, "count rule"));
      continue;
    } else {
      c.fail("unknown action '" + action + "'");
    }
    if (c.accept("log")) {
      if (c.accept("logamount")) c.next("log amount");
    }

    if (!c.peek_is("from")) {
      if (auto p = frontend::protocol_interval(c, c.next("protocol"))) {
        frontend::constrain(c, rule.filter, FieldKind::kProto, {*p}, false);
      }
    }
    c.expect("from");
    parse_endpoint(c, rule.filter, FieldKind::kSaddr, FieldKind::kSport);
    c.expect("to");
    parse_endpoint(c, rule.filter, FieldKind::kDaddr, FieldKind::kDport);

    while (!c.at_end()) {
      const std::string w = c.next("option");
      if (keyword(w, "tagged")) {
        if (rule.filter.dynamic) c.fail("more than one tagged check");
        const auto n = static_cast<VarName>(c.number("tag number", 65535));
        rule.filter.dynamic = DynamicCheck{true, n, Nil{}};
      } else if (keyword(w, "via") || keyword(w, "recv") || keyword(w, "xmit")) {
        ignored.push_back(w + " " + c.next("interface"));
      } else if (keyword(w, "in") || keyword(w, "out") || keyword(w, "setup") ||
                 keyword(w, "established") || keyword(w, "keep-state") || keyword(w, "frag") ||
                 keyword(w, "check-state")) {
        ignored.push_back(w);
      } else {
        c.fail("unknown option '" + w + "'");
      }
    }
    if (!ignored.empty()) {
      std::string what;
      for (const std::string& i : ignored) what += (what.empty() ? "" : ", ") + i;
      out.warnings.push_back(frontend::ignored_option(line, what));
    }
    out.rules.push_back(std::move(rule));
  }
  return out;
}

Translation translate_ipfw(const IpfwPolicy& v, const TranslateOptions& options) {
  Translation out;
  out.warnings = v.warnings;
  std::vector<const IpfwRule*> kept;
  for (const IpfwRule& r : v.rules) {
    if (!options.ipfw_sets || r.set == 31 || options.ipfw_sets->count(r.set)) kept.push_back(&r);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const IpfwRule* a, const IpfwRule* b) { return a->number < b->number; });
  std::set<std::uint32_t> numbers;
  for (const IpfwRule* r : kept) {
    if (!numbers.insert(r->number).second) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(r->source.line) +
                                              ": rule number " + std::to_string(r->number) +
                                              " is used more than once");
    }
  }

  std::vector<Rule> rules;
  for (const IpfwRule* r : kept) {
    Target t;
    switch (r->action) {
      case IpfwAction::kAllow: t = Accept{}; break;
      case IpfwAction::kDeny: t = Drop{}; break;
      case IpfwAction::kTag: t = SetVar{r->argument, Opaque{"TRUE"}}; break;
      case IpfwAction::kUntag: t = SetVar{r->argument, Nil{}}; break;
      case IpfwAction::kSkipTo: {
        if (r->argument <= r->number) {
          throw Error(ErrorCode::kBackwardSkipTo,
                      "line " + std::to_string(r->source.line) + ": rule " +
                          std::to_string(r->number) + " skips back to " +
                          std::to_string(r->argument));
        }
        auto it = numbers.lower_bound(r->argument);
        t = Jump{it == numbers.end() ? kIpfwDefaultLabel : Label{*it}};
        break;
      }
    }
    rules.push_back(frontend::make_rule(r->number, r->filter, t, frontend::origin_of(r->source)));
  }
  rules.push_back(frontend::make_rule(kIpfwDefaultLabel, {}, Drop{}, "default deny"));
  out.policy = Policy(std::move(rules));
  return out;
}

}  // namespace fwa
