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

#include "fwa/interpreter.h"

#include <algorithm>
#include <charconv>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "fwa/error.h"

namespace fwa {

Value Packet::get(FieldKind f) const {
  switch (f) {
    case FieldKind::kSaddr: return saddr;
    case FieldKind::kSport: return sport;
    case FieldKind::kDaddr: return daddr;
    case FieldKind::kDport: return dport;
    case FieldKind::kProto: return proto;
  }
  return 0;
}

void Packet::set(FieldKind f, Value v) {
  if (v > domain_max(f)) {
    throw Error(ErrorCode::kDomainMismatch,
                std::to_string(v) + " is outside the " + std::string(field_name(f)) + " domain");
  }
  switch (f) {
    case FieldKind::kSaddr: saddr = static_cast<std::uint32_t>(v); break;
    case FieldKind::kSport: sport = static_cast<std::uint16_t>(v); break;
    case FieldKind::kDaddr: daddr = static_cast<std::uint32_t>(v); break;
    case FieldKind::kDport: dport = static_cast<std::uint16_t>(v); break;
    case FieldKind::kProto: proto = static_cast<std::uint8_t>(v); break;
  }
}

std::string Packet::to_string() const {
  std::string out;
  for (FieldKind f : kAllFields) {
    if (!out.empty()) out += ' ';
    out += std::string(field_name(f)) + "=" + format_field_value(f, get(f));
  }
  return out;
}

Packet parse_packet(std::string_view text) {
  Packet pkt;
  std::set<FieldKind> seen;
  std::istringstream in{std::string(text)};
  std::string item;
  while (in >> item) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kParseError, "packet field '" + item + "' is not of the form name=value");
    }
    const std::string name = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    auto field = field_from_name(name);
    if (!field) throw Error(ErrorCode::kParseError, "unknown packet field '" + name + "'");
    if (!seen.insert(*field).second) {
      throw Error(ErrorCode::kParseError, "packet field '" + name + "' given twice");
    }
    Value v = 0;
    if (is_address(*field)) {
      v = parse_dotted_quad(value).value;
    } else {
      auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc{} || p != value.data() + value.size()) {
        throw Error(ErrorCode::kParseError, "bad number '" + value + "' for " + name);
      }
    }
    try {
      pkt.set(*field, v);
    } catch (const Error& e) {
      throw Error(ErrorCode::kParseError, e.what());
    }
  }
  return pkt;
}

std::string Outcome::to_string() const {
  switch (kind) {
    case OutcomeKind::kAccept: return "accept";
    case OutcomeKind::kDrop: return "drop";
    case OutcomeKind::kUndefined: break;
  }
  std::string why = "end of policy";
  if (reason == UndefinedReason::kReturnWithoutCall) why = "return without call";
  if (reason == UndefinedReason::kStepLimit) why = "step limit";
  return "undefined (" + why + ")";
}

namespace {

bool static_matches(const StaticCheck& check, const Packet& pkt) {
  for (FieldKind f : kAllFields) {
    if (const auto& pred = check[f]; pred && !pred->matches(pkt.get(f))) return false;
  }
  return true;
}

bool dynamic_matches(const DynamicCheck& check, const VarStore& store) {
  auto it = store.find(check.var);
  const StoredValue current = it == store.end() ? StoredValue{Nil{}} : it->second;
  return value_matches(current, check.value) != check.negated;
}

}  // namespace

Evaluation evaluate(const Policy& policy, const Packet& packet,
                    std::optional<std::size_t> step_limit) {
  const std::size_t limit = step_limit.value_or(std::max<std::size_t>(1, 10 * policy.size()));
  const auto& rules = policy.rules();
  Evaluation ev;
  VarStore store;
  std::vector<std::size_t> stack;
  std::size_t pc = 0;
  std::size_t steps = 0;

  auto undefined = [&](UndefinedReason why) {
    ev.outcome = {OutcomeKind::kUndefined, why};
    return ev;
  };

  while (true) {
    if (pc >= rules.size()) return undefined(UndefinedReason::kEndOfPolicy);
    if (++steps > limit) return undefined(UndefinedReason::kStepLimit);
    const Rule& r = rules[pc];
    const bool matched = static_matches(r.static_check, packet) &&
                         (!r.dynamic_check || dynamic_matches(*r.dynamic_check, store));
    TraceStep step{r.label, matched, "continue", {}};
    if (!matched) {
      step.store = store;
      ev.trace.steps.push_back(std::move(step));
      ++pc;
      continue;
    }

    std::optional<Outcome> done;
    std::visit(
        [&](const auto& t) {
          using T = std::decay_t<decltype(t)>;
          if constexpr (std::is_same_v<T, Accept>) {
            step.action = "accept";
            done = Outcome{OutcomeKind::kAccept, std::nullopt};
          } else if constexpr (std::is_same_v<T, Drop>) {
            step.action = "drop";
            done = Outcome{OutcomeKind::kDrop, std::nullopt};
          } else if constexpr (std::is_same_v<T, Jump>) {
            step.action = "jump " + std::to_string(t.target);
            pc = policy.resolve(t.target).value_or(rules.size());
          } else if constexpr (std::is_same_v<T, Call>) {
            step.action = "call " + std::to_string(t.target);
            stack.push_back(pc + 1);
            pc = policy.resolve(t.target).value_or(rules.size());
          } else if constexpr (std::is_same_v<T, Return>) {
            step.action = "return";
            if (stack.empty()) {
              done = Outcome{OutcomeKind::kUndefined, UndefinedReason::kReturnWithoutCall};
            } else {
              pc = stack.back();
              stack.pop_back();
            }
          } else if constexpr (std::is_same_v<T, SetVar>) {
            step.action = "$" + std::to_string(t.var) + "=" + fwa::to_string(t.value);
            if (std::holds_alternative<Nil>(t.value)) {
              store.erase(t.var);
            } else {
              store[t.var] = t.value;
            }
            ++pc;
          }
        },
        r.target);
    step.store = store;
    ev.trace.steps.push_back(std::move(step));
    if (done) {
      ev.outcome = *done;
      return ev;
    }
  }
}

std::vector<Value> field_representatives(const FieldCatalog& field) {
  std::vector<Value> reps;
  const auto& cells = field.mcsi.cells;
  for (const Interval& c : cells) reps.push_back(c.first());
  // Cells are sorted and disjoint, so the first gap is the smallest outside value.
  Value candidate = 0;
  bool outside = true;
  for (const Interval& c : cells) {
    if (c.first() > candidate) break;
    if (c.last() == domain_max(field.field)) {
      outside = false;
      break;
    }
    candidate = c.last() + 1;
  }
  if (outside) reps.push_back(candidate);
  return reps;
}

PacketSample sample_packets(const StaticVarCatalog& catalog, std::size_t budget,
                            std::uint64_t seed) {
  PacketSample sample;
  sample.seed = seed;
  std::array<std::vector<Value>, kFieldCount> reps;
  std::uint64_t population = 1;
  for (FieldKind f : kAllFields) {
    reps[index_of(f)] = field_representatives(catalog[f]);
    const std::uint64_t n = reps[index_of(f)].size();
    population = population > std::numeric_limits<std::uint64_t>::max() / n
                     ? std::numeric_limits<std::uint64_t>::max()
                     : population * n;
  }
  sample.population = population;

  auto decode = [&](std::uint64_t index) {
    Packet pkt;
    for (std::size_t i = kFieldCount; i-- > 0;) {
      const auto& r = reps[i];
      pkt.set(kAllFields[i], r[index % r.size()]);
      index /= r.size();
    }
    return pkt;
  };

  budget = std::max<std::size_t>(budget, 1);
  if (population <= budget) {
    for (std::uint64_t i = 0; i < population; ++i) sample.packets.push_back(decode(i));
    return sample;
  }
  // Floyd's algorithm: `budget` distinct indices out of the population.
  sample.truncated = true;
  std::mt19937_64 rng(seed);
  std::set<std::uint64_t> chosen;
  for (std::uint64_t j = population - budget; j < population; ++j) {
    std::uniform_int_distribution<std::uint64_t> dist(0, j);
    const std::uint64_t t = dist(rng);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  for (std::uint64_t i : chosen) sample.packets.push_back(decode(i));
  return sample;
}

std::vector<Divergence> differential_check(const Policy& p, const Policy& q,
                                           std::span<const Packet> packets) {
  std::vector<Divergence> out;
  for (const Packet& pkt : packets) {
    Outcome a = evaluate(p, pkt).outcome;
    Outcome b = evaluate(q, pkt).outcome;
    if (!a.equivalent(b)) out.push_back({pkt, a, b});
  }
  return out;
}

}  // namespace fwa
