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
#include <functional>
#include <map>
#include <set>

#include "common.h"

namespace fwa {

using frontend::Cursor;
using frontend::keyword;
using frontend::Line;

namespace {

const std::set<std::string> kBuiltinChains = {"INPUT", "OUTPUT", "FORWARD", "PREROUTING",
                                              "POSTROUTING"};

NfChain& chain_named(NetfilterPolicy& p, const std::string& name) {
  for (NfChain& c : p.chains) {
    if (c.name == name) return c;
  }
  p.chains.push_back({name, kBuiltinChains.count(name) > 0, true, {}});
  return p.chains.back();
}

DynamicCheck mark_check(Cursor& c, const std::string& text, bool negated) {
  DynamicCheck d;
  d.negated = negated;
  d.var = 1;
  const auto slash = text.find('/');
  auto value = frontend::to_number(text.substr(0, slash));
  if (!value || *value > 0xFFFFFFFFull) c.fail("bad mark '" + text + "'");
  if (slash == std::string::npos) {
    d.value = Const{*value};
  } else {
    auto mask = frontend::to_number(text.substr(slash + 1));
    if (!mask || *mask > 0xFFFFFFFFull) c.fail("bad mark mask '" + text + "'");
    d.value = ConstMasked{*value, *mask};
  }
  return d;
}

std::uint64_t set_mark_value(Cursor& c) {
  const std::string w = c.next("mark value");
  auto v = frontend::to_number(w.substr(0, w.find('/')));
  if (!v || *v > 0xFFFFFFFFull) c.fail("bad mark '" + w + "'");
  return *v;
}

void parse_rule(Cursor& c, NfChain& chain, NetfilterPolicy& out) {
  NfRule rule;
  rule.source = {c.line().number, c.line().text};
  bool negate = false;
  bool have_target = false;
  bool warned_state = false;
  auto take_negation = [&] {
    const bool n = negate;
    negate = false;
    return n;
  };

  while (!c.at_end()) {
    const std::string opt = c.next("option");
    if (opt == "!") {
      negate = true;
      continue;
    }
    if (c.peek() == "!") {
      // "-s ! addr" form.
      c.next("!");
      negate = true;
    }
    if (opt == "-p" || opt == "--protocol") {
      const bool n = take_negation();
      if (auto i = frontend::protocol_interval(c, c.next("protocol"))) {
        frontend::constrain(c, rule.filter, FieldKind::kProto, {*i}, n);
      }
    } else if (opt == "-s" || opt == "--source" || opt == "--src" || opt == "-d" ||
               opt == "--destination" || opt == "--dst") {
      const bool n = take_negation();
      const bool source = opt == "-s" || opt == "--source" || opt == "--src";
      const FieldKind f = source ? FieldKind::kSaddr : FieldKind::kDaddr;
      if (auto i = frontend::address_interval(c, c.next("address"))) {
        frontend::constrain(c, rule.filter, f, {*i}, n);
      }
    } else if (opt == "--sport" || opt == "--source-port" || opt == "--dport" ||
               opt == "--destination-port") {
      const bool n = take_negation();
      const FieldKind f =
          opt == "--sport" || opt == "--source-port" ? FieldKind::kSport : FieldKind::kDport;
      frontend::constrain(c, rule.filter, f, {frontend::port_interval(c, c.next("port"))}, n);
    } else if (opt == "-m" || opt == "--match") {
      const std::string module = c.next("match module");
      if (module != "mark" && module != "tcp" && module != "udp" && module != "state" &&
          module != "conntrack") {
        out.warnings.push_back(frontend::ignored_option(c.line(), "match module '" + module + "'"));
      }
    } else if (opt == "--mark" || keyword(opt, "mark")) {
      if (rule.filter.dynamic) c.fail("more than one mark check");
      rule.filter.dynamic = mark_check(c, c.next("mark"), take_negation());
    } else if (opt == "--state" || opt == "--ctstate") {
      take_negation();
      c.next("state list");
      while (c.accept(",")) c.next("state");
      if (!warned_state) {
        out.warnings.push_back(frontend::ignored_option(c.line(), "connection state match"));
        warned_state = true;
      }
    } else if (opt == "-i" || opt == "--in-interface" || opt == "-o" ||
               opt == "--out-interface") {
      take_negation();
      const std::string name = c.next("interface");
      out.warnings.push_back(frontend::ignored_option(c.line(), "interface match '" + name + "'"));
    } else if (opt == "-j" || opt == "--jump" || opt == "-g" || opt == "--goto") {
      if (have_target) c.fail("more than one target");
      have_target = true;
      const std::string t = c.next("target");
      if (opt == "-g" || opt == "--goto") {
        rule.target = NfTarget::kGoto;
        rule.chain = t;
      } else if (t == "ACCEPT") {
        rule.target = NfTarget::kAccept;
      } else if (t == "DROP") {
        rule.target = NfTarget::kDrop;
      } else if (t == "REJECT") {
        rule.target = NfTarget::kDrop;
        out.warnings.push_back(frontend::ignored_option(c.line(), "REJECT response (treated as DROP)"));
      } else if (t == "RETURN") {
        rule.target = NfTarget::kReturn;
      } else if (t == "SET-MARK") {
        rule.target = NfTarget::kSetMark;
        rule.mark = set_mark_value(c);
      } else if (t == "MARK") {
        rule.target = NfTarget::kSetMark;
        const std::string flag = c.next("--set-mark");
        if (flag != "--set-mark" && flag != "--set-xmark") c.fail("expected --set-mark");
        rule.mark = set_mark_value(c);
      } else {
        rule.target = NfTarget::kJump;
        rule.chain = t;
      }
    } else {
      c.fail("unknown option '" + opt + "'");
    }
    if (negate) c.fail("'!' must precede a match option");
  }
  if (!have_target) c.fail("rule has no target");
  chain.rules.push_back(std::move(rule));
}

}  // namespace

NetfilterPolicy parse_netfilter(std::string_view text) {
  NetfilterPolicy out;
  for (const Line& line : frontend::split_lines(text, true)) {
    Cursor c(line);
    c.accept("iptables");
    if (c.peek() == "-t" || c.peek() == "--table") {
      c.next("-t");
      c.next("table");
    }
    const std::string cmd = c.at_end() ? std::string() : c.next("command");
    if (cmd == "-P" || cmd == "--policy") {
      NfChain& chain = chain_named(out, c.next("chain"));
      if (!chain.builtin) c.fail("only builtin chains have a policy");
      const std::string verdict = c.next("policy");
      if (verdict != "ACCEPT" && verdict != "DROP") c.fail("policy must be ACCEPT or DROP");
      chain.policy_accept = verdict == "ACCEPT";
    } else if (cmd == "-N" || cmd == "--new-chain") {
      const std::string name = c.next("chain");
      if (kBuiltinChains.count(name)) c.fail("cannot create builtin chain " + name);
      chain_named(out, name);
    } else if (cmd == "-A" || cmd == "--append") {
      NfChain& chain = chain_named(out, c.next("chain"));
      parse_rule(c, chain, out);
      continue;
    } else {
      if (auto p = frontend::sniff_platform(line); p && *p != Platform::kNetfilter) {
        throw Error(ErrorCode::kWrongPlatform, "line " + std::to_string(line.number) +
                                                   ": looks like " +
                                                   std::string(platform_name(*p)) +
                                                   " syntax, not netfilter");
      }
      c.fail("expected -A, -N or -P");
    }
    if (!c.at_end()) c.fail("unexpected '" + c.peek() + "'");
  }
  return out;
}

Translation translate_netfilter(const NetfilterPolicy& v, const TranslateOptions& options) {
  Translation out;
  out.warnings = v.warnings;

  std::map<std::string, const NfChain*> by_name;
  for (const NfChain& c : v.chains) by_name[c.name] = &c;

  // Every referenced chain must exist.
  for (const NfChain& c : v.chains) {
    for (const NfRule& r : c.rules) {
      if ((r.target == NfTarget::kJump || r.target == NfTarget::kGoto) &&
          (!by_name.count(r.chain) || by_name.at(r.chain)->builtin)) {
        throw Error(ErrorCode::kUnknownChain, "line " + std::to_string(r.source.line) +
                                                  ": unknown chain '" + r.chain + "'");
      }
    }
  }

  // iptables rejects any JUMP/GOTO cycle whatever its conditions.
  std::map<std::string, int> color;  // 0 new, 1 on stack, 2 done
  std::vector<std::string> stack;
  std::function<void(const NfChain&)> visit = [&](const NfChain& c) {
    color[c.name] = 1;
    stack.push_back(c.name);
    for (const NfRule& r : c.rules) {
      if (r.target != NfTarget::kJump && r.target != NfTarget::kGoto) continue;
      if (color[r.chain] == 1) {
        std::string cycle;
        auto it = std::find(stack.begin(), stack.end(), r.chain);
        for (; it != stack.end(); ++it) cycle += *it + " -> ";
        throw Error(ErrorCode::kLoopDetected, "chain loop " + cycle + r.chain);
      }
      if (color[r.chain] == 0) visit(*by_name.at(r.chain));
    }
    stack.pop_back();
    color[c.name] = 2;
  };
  for (const NfChain& c : v.chains) {
    if (color[c.name] == 0) visit(c);
  }

  // Entry chain.
  const NfChain* entry = nullptr;
  NfChain empty_input{"INPUT", true, true, {}};
  if (!options.entry_chain.empty()) {
    auto it = by_name.find(options.entry_chain);
    if (it == by_name.end() || !it->second->builtin) {
      if (it == by_name.end() && kBuiltinChains.count(options.entry_chain)) {
        empty_input.name = options.entry_chain;
        entry = &empty_input;
      } else {
        throw Error(ErrorCode::kUnknownChain,
                    "entry chain '" + options.entry_chain + "' is not a builtin chain");
      }
    } else {
      entry = it->second;
    }
  } else if (by_name.count("INPUT")) {
    entry = by_name.at("INPUT");
  } else {
    for (const NfChain& c : v.chains) {
      if (c.builtin) {
        entry = &c;
        break;
      }
    }
    if (!entry) entry = &empty_input;
  }

  // Chains reachable from the entry, in declaration order.
  std::set<std::string> wanted{entry->name};
  for (bool grew = true; grew;) {
    grew = false;
    for (const NfChain& c : v.chains) {
      if (!wanted.count(c.name)) continue;
      for (const NfRule& r : c.rules) {
        if ((r.target == NfTarget::kJump || r.target == NfTarget::kGoto) &&
            wanted.insert(r.chain).second) {
          grew = true;
        }
      }
    }
  }
  for (const NfChain& c : v.chains) {
    if (!wanted.count(c.name) && (!c.rules.empty() || c.builtin)) {
      out.warnings.push_back({Severity::kWarning, DiagCode::kIgnoredOption,
                              "chain " + c.name + " is not reachable from " + entry->name +
                                  " and was omitted",
                              std::nullopt, std::nullopt});
    }
  }

  const bool wrap = std::any_of(entry->rules.begin(), entry->rules.end(), [](const NfRule& r) {
    return r.target == NfTarget::kReturn || r.target == NfTarget::kGoto;
  });

  std::vector<const NfChain*> order{entry};
  for (const NfChain& c : v.chains) {
    if (&c != entry && wanted.count(c.name)) order.push_back(&c);
  }
  std::map<std::string, Label> base;
  Label next_base = wrap ? kBandWidth : 0;
  for (const NfChain* c : order) {
    base[c->name] = next_base;
    next_base += kBandWidth;
  }

  const Target policy_target =
      entry->policy_accept ? Target{Accept{}} : Target{Drop{}};
  const std::string policy_origin =
      "policy " + entry->name + (entry->policy_accept ? " ACCEPT" : " DROP");
  std::vector<Rule> rules;
  if (wrap) {
    rules.push_back(frontend::make_rule(1, {}, Call{base[entry->name] + 1},
                                        "enter chain " + entry->name));
    rules.push_back(frontend::make_rule(2, {}, policy_target, policy_origin));
  }
  for (const NfChain* c : order) {
    std::size_t index = 0;
    for (const NfRule& r : c->rules) {
      Target t;
      switch (r.target) {
        case NfTarget::kAccept: t = Accept{}; break;
        case NfTarget::kDrop: t = Drop{}; break;
        case NfTarget::kReturn: t = Return{}; break;
        case NfTarget::kJump: t = Call{base.at(r.chain) + 1}; break;
        case NfTarget::kGoto: t = Jump{base.at(r.chain) + 1}; break;
        case NfTarget::kSetMark: t = SetVar{1, Const{r.mark}}; break;
      }
      rules.push_back(frontend::make_rule(frontend::band_label(base[c->name], index++, c->name),
                                          r.filter, t, frontend::origin_of(r.source)));
    }
    const Label end = frontend::band_label(base[c->name], index, c->name);
    if (c == entry && !wrap) {
      rules.push_back(frontend::make_rule(end, {}, policy_target, policy_origin));
    } else {
      rules.push_back(frontend::make_rule(end, {}, Return{}, "end of chain " + c->name));
    }
  }
  out.policy = Policy(std::move(rules));
  return out;
}

}  // namespace fwa
