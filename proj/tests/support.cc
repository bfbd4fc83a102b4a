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

#include "support.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "fwa/parser.h"

#ifndef FWA_TEST_DATA_DIR
#error "FWA_TEST_DATA_DIR must be defined"
#endif

namespace fwa::test {

std::string data_path(const std::string& relative) {
  return std::string(FWA_TEST_DATA_DIR) + "/" + relative;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Policy load_example(int n) {
  ParseResult r = parse_and_validate(read_text(data_path("example" + std::to_string(n) + ".fwp")));
  if (has_errors(r.diagnostics)) throw std::runtime_error("example does not validate");
  return r.policy;
}

namespace {

Value pick(std::mt19937_64& rng, Value lo, Value hi) {
  return std::uniform_int_distribution<Value>(lo, hi)(rng);
}

bool chance(std::mt19937_64& rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

Value field_base(FieldKind f) { return is_address(f) ? 0x0A000000u : 0; }

std::vector<Interval> interval_pool(std::mt19937_64& rng, FieldKind f, const GenParams& g) {
  std::size_t n = pick(rng, 1, g.max_intervals);
  std::vector<Interval> pool;
  Value base = field_base(f);
  while (pool.size() < n) {
    Value a = pick(rng, 0, g.span);
    Value b = chance(rng, 0.3) ? a : pick(rng, a, g.span);
    Interval iv = Interval::closed(base + a, base + b, domain_max(f));
    if (std::find(pool.begin(), pool.end(), iv) == pool.end()) pool.push_back(iv);
  }
  return pool;
}

StoredValue random_stored(std::mt19937_64& rng) {
  switch (pick(rng, 0, 2)) {
    case 0: return Opaque{"a"};
    case 1: return Opaque{"b"};
    default: return Nil{};
  }
}

}  // namespace

Policy random_policy(std::mt19937_64& rng, const GenParams& g) {
  std::array<std::vector<Interval>, kFieldCount> pools;
  for (FieldKind f : g.fields) pools[index_of(f)] = interval_pool(rng, f, g);

  std::size_t n = pick(rng, g.min_rules, g.max_rules);
  std::vector<Label> labels;
  Label next = pick(rng, 1, 5);
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(next);
    next += pick(rng, 1, 4);
  }

  std::vector<Rule> rules;
  for (std::size_t i = 0; i < n; ++i) {
    Rule r;
    r.label = labels[i];
    for (FieldKind f : g.fields) {
      if (!chance(rng, 0.4)) continue;
      const auto& pool = pools[index_of(f)];
      FieldPredicate pred;
      pred.negated = chance(rng, 0.2);
      std::size_t k = pick(rng, 1, std::min<std::size_t>(2, pool.size()));
      std::vector<Interval> chosen = pool;
      std::shuffle(chosen.begin(), chosen.end(), rng);
      chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(k), chosen.end());
      pred.intervals = chosen;
      r.static_check[f] = pred;
    }
    if (g.dynamic_checks && chance(rng, 0.25)) {
      DynamicCheck d;
      d.negated = chance(rng, 0.3);
      d.var = static_cast<VarName>(pick(rng, 0, 1));
      StoredValue v = random_stored(rng);
      if (const auto* o = std::get_if<Opaque>(&v)) {
        d.value = *o;
      } else {
        d.value = Nil{};
      }
      r.dynamic_check = d;
    }
    bool has_later = i + 1 < n;
    unsigned kinds = has_later ? (g.calls ? 6 : 5) : 3;
    switch (pick(rng, 0, kinds - 1)) {
      case 0: r.target = Accept{}; break;
      case 1: r.target = Drop{}; break;
      case 2: r.target = SetVar{static_cast<VarName>(pick(rng, 0, 1)), random_stored(rng)}; break;
      case 3:
      case 4: r.target = Jump{labels[pick(rng, i + 1, n - 1)]}; break;
      case 5:
        r.target = Call{labels[pick(rng, i + 1, n - 1)]};
        break;
    }
    if (g.calls && !has_later && chance(rng, 0.3)) r.target = Return{};
    rules.push_back(std::move(r));
  }
  // Give called code a way back now and then.
  if (g.calls) {
    for (std::size_t i = 1; i < rules.size(); ++i) {
      if (chance(rng, 0.15) && std::holds_alternative<SetVar>(rules[i].target)) {
        rules[i].target = Return{};
      }
    }
  }
  return Policy(std::move(rules));
}

namespace {

struct OracleField {
  // Cells as closed [first, last] pairs.
  std::vector<std::pair<Value, Value>> cells;
  std::size_t first_column = 0;
};

// Elementary segments between consecutive boundary points, kept when some
// interval covers them.
OracleField oracle_cells(const std::vector<Interval>& intervals) {
  std::set<Value> points;
  for (const Interval& iv : intervals) {
    points.insert(iv.first());
    points.insert(iv.last() + 1);
  }
  OracleField out;
  std::vector<Value> p(points.begin(), points.end());
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    Value lo = p[i], hi = p[i + 1] - 1;
    bool covered = std::any_of(intervals.begin(), intervals.end(),
                               [&](const Interval& iv) { return iv.contains(lo); });
    if (covered) out.cells.emplace_back(lo, hi);
  }
  return out;
}

}  // namespace

OracleResult brute_force(const Policy& policy, bool exact_cells) {
  const auto& rules = policy.rules();
  const std::size_t n = rules.size();

  std::array<OracleField, kFieldCount> fields;
  std::size_t columns = 0;
  for (FieldKind f : kAllFields) {
    std::vector<Interval> all;
    for (const Rule& r : rules) {
      if (r.static_check[f]) {
        for (const Interval& iv : r.static_check[f]->intervals) all.push_back(iv);
      }
    }
    fields[index_of(f)] = oracle_cells(all);
    fields[index_of(f)].first_column = columns;
    columns += fields[index_of(f)].cells.size();
  }
  if (columns > 20) throw std::runtime_error("oracle: too many columns");

  // Per rule: is the static check satisfied under an assignment?
  auto satisfied = [&](const Rule& r, std::uint64_t a) {
    for (FieldKind f : kAllFields) {
      const auto& pred = r.static_check[f];
      if (!pred) continue;
      const OracleField& of = fields[index_of(f)];
      bool any = false;
      for (std::size_t c = 0; c < of.cells.size(); ++c) {
        bool inside = std::any_of(pred->intervals.begin(), pred->intervals.end(),
                                  [&](const Interval& iv) { return iv.contains(of.cells[c].first); });
        if (inside && ((a >> (of.first_column + c)) & 1)) any = true;
      }
      if (any == pred->negated) return false;
    }
    return true;
  };
  auto admissible = [&](std::uint64_t a) {
    if (!exact_cells) return true;
    for (const OracleField& of : fields) {
      std::uint64_t bits = 0;
      for (std::size_t c = 0; c < of.cells.size(); ++c) bits += (a >> (of.first_column + c)) & 1;
      if (bits > 1) return false;
    }
    return true;
  };

  // Nodes: 3i = If, 3i+1 = Then, 3i+2 = Return.
  auto landing = [&](Label target) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < n; ++i) {
      if (rules[i].label >= target) return i;
    }
    return std::nullopt;
  };
  std::vector<std::size_t> call_sites;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::holds_alternative<Call>(rules[i].target)) call_sites.push_back(i);
  }

  OracleResult out;
  out.columns = columns;
  out.if_reachable.assign(n, false);
  out.then_reachable.assign(n, false);
  out.return_reachable.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::holds_alternative<SetVar>(rules[i].target)) out.write_live[i] = false;
  }

  const std::size_t nodes = 3 * n;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << columns); ++a) {
    if (!admissible(a)) continue;
    std::vector<std::vector<std::size_t>> succ(nodes);
    for (std::size_t i = 0; i < n; ++i) {
      const Rule& r = rules[i];
      bool sat = satisfied(r, a);
      bool has_next = i + 1 < n;
      if (sat) succ[3 * i].push_back(3 * i + 1);
      if (has_next && (!sat || r.dynamic_check)) succ[3 * i].push_back(3 * (i + 1));
      std::visit(
          [&](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, Jump>) {
              if (auto j = landing(t.target)) succ[3 * i + 1].push_back(3 * *j);
            } else if constexpr (std::is_same_v<T, Call>) {
              if (auto j = landing(t.target)) succ[3 * i + 1].push_back(3 * *j);
              if (has_next) succ[3 * i + 2].push_back(3 * (i + 1));
            } else if constexpr (std::is_same_v<T, SetVar>) {
              if (has_next) succ[3 * i + 1].push_back(3 * (i + 1));
            } else if constexpr (std::is_same_v<T, Return>) {
              for (std::size_t c : call_sites) succ[3 * i + 1].push_back(3 * c + 2);
            }
          },
          r.target);
    }

    std::vector<bool> seen(nodes, false);
    std::vector<std::size_t> stack = {0};
    seen[0] = true;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w : succ[v]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (seen[3 * i]) out.if_reachable[i] = true;
      if (seen[3 * i + 1]) out.then_reachable[i] = true;
      if (seen[3 * i + 2]) out.return_reachable[i] = true;
    }

    auto reads = [&](std::size_t node, VarName v) {
      return node % 3 == 0 && rules[node / 3].dynamic_check &&
             rules[node / 3].dynamic_check->var == v;
    };
    auto writes = [&](std::size_t node, VarName v) {
      if (node % 3 != 1) return false;
      const auto* s = std::get_if<SetVar>(&rules[node / 3].target);
      return s != nullptr && s->var == v;
    };
    for (auto& [i, is_live] : out.write_live) {
      std::size_t from = 3 * i + 1;
      if (is_live || !seen[from]) continue;
      VarName v = std::get<SetVar>(rules[i].target).var;
      // Successors of the write are always entered; beyond them a node that
      // writes v again stops the search.
      std::vector<bool> visited(nodes, false);
      std::vector<std::size_t> work(succ[from].begin(), succ[from].end());
      for (std::size_t w : work) visited[w] = true;
      while (!work.empty() && !is_live) {
        std::size_t b = work.back();
        work.pop_back();
        if (reads(b, v)) {
          is_live = true;
          break;
        }
        if (writes(b, v)) continue;
        for (std::size_t c : succ[b]) {
          if (!visited[c]) {
            visited[c] = true;
            work.push_back(c);
          }
        }
      }
    }
  }
  return out;
}

Policy renumber(const Policy& policy) {
  std::map<Label, Label> fresh;
  Label next = 1;
  for (const Rule& r : policy.rules()) fresh[r.label] = next++;
  auto map_target = [&](Label t) {
    auto it = fresh.lower_bound(t);
    return it == fresh.end() ? next : it->second;
  };
  std::vector<Rule> rules = policy.rules();
  for (Rule& r : rules) {
    r.label = fresh[r.label];
    if (auto* j = std::get_if<Jump>(&r.target)) j->target = map_target(j->target);
    if (auto* c = std::get_if<Call>(&r.target)) c->target = map_target(c->target);
    r.origin.clear();
  }
  return Policy(std::move(rules));
}

}  // namespace fwa::test
