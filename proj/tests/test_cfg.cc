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

#include <gtest/gtest.h>

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

#include "fwa/cfg.h"
#include "fwa/interpreter.h"
#include "fwa/parser.h"
#include "support.h"

namespace fwa {
namespace {

Value ip(const char* s) { return parse_dotted_quad(s).value; }

struct Built {
  Policy policy;
  StaticVarCatalog catalog;
  Cfg cfg;
};

Built build(Policy p, CfgOptions options = {}) {
  StaticVarCatalog catalog = build_catalog(p);
  Cfg cfg = build_cfg(p, catalog, options);
  return {std::move(p), std::move(catalog), std::move(cfg)};
}

std::vector<const SuccClause*> clauses_between(const Cfg& cfg, InternalId a, InternalId b) {
  std::vector<const SuccClause*> out;
  for (const SuccClause& c : cfg.clauses) {
    if (c.from == a && c.to == b) out.push_back(&c);
  }
  return out;
}

// Bit per column: does the packet fall in that cell?
std::uint64_t assignment_of(const StaticVarCatalog& cat, const Packet& pkt) {
  std::uint64_t a = 0;
  for (FieldKind f : kAllFields) {
    const FieldCatalog& fc = cat[f];
    for (std::size_t c = 0; c < fc.size(); ++c) {
      if (fc.mcsi.cells[c].contains(pkt.get(f))) a |= std::uint64_t{1} << (fc.first_column + c);
    }
  }
  return a;
}

TEST(Labels, ThreeSlotsPerRuleReturnOnlyForCalls) {
  Policy p = parse("5 if true then call 9;\n9 if true then return;\n12 if true then accept;");
  LabelMap m = assign_internal_labels(p);
  ASSERT_EQ(m.slots().size(), 3u);
  EXPECT_EQ(m.slots()[0].if_label, 0u);
  EXPECT_EQ(m.slots()[0].then_label, 1u);
  EXPECT_EQ(m.slots()[0].return_label, 2u);
  EXPECT_EQ(m.slots()[1].if_label, 3u);
  EXPECT_FALSE(m.slots()[1].return_label.has_value());
  EXPECT_EQ(m.slots()[2].then_label, 7u);
  EXPECT_EQ(m.domain_size(), 8u);
  EXPECT_EQ(m.labels().size(), 7u);
  auto l = m.lookup(4);
  ASSERT_TRUE(l.has_value());
  EXPECT_EQ(l->kind, LabelKind::kThen);
  EXPECT_EQ(l->external, 9u);
  EXPECT_FALSE(m.lookup(5).has_value());
}

TEST(Catalog, ColumnsGroupedByField) {
  Built b = build(test::load_example(2));
  const StaticVarCatalog& cat = b.catalog;
  EXPECT_EQ(cat[FieldKind::kSaddr].size(), 5u);
  EXPECT_EQ(cat[FieldKind::kSport].size(), 1u);
  EXPECT_EQ(cat.total_columns, 6u);
  EXPECT_EQ(cat[FieldKind::kSport].first_column, 5u);
  EXPECT_EQ(cat.field_of(5), FieldKind::kSport);
  EXPECT_EQ(cat.column_name(0), "saddr0");
  EXPECT_EQ(cat.column_name(5), "sport0");
  // The /24 of rules 1010 and 1020 splits around 192.168.1.10.
  FieldPredicate slash24;
  slash24.intervals = {Interval::closed(ip("192.168.1.0"), ip("192.168.1.255"), 0xFFFFFFFF)};
  EXPECT_EQ(cat.columns_for(FieldKind::kSaddr, slash24).size(), 3u);
}

TEST(Facts, ExampleTwoListing) {
  Built b = build(test::load_example(2));
  FactBase f = extract_facts(b.policy, b.cfg);
  EXPECT_EQ(f.label_domain, 11u);
  EXPECT_EQ(f.olabel_domain, 1021u);
  EXPECT_EQ(f.labels, (std::vector<InternalId>{0, 1, 3, 4, 6, 7, 9, 10}));
  EXPECT_EQ(f.init, std::vector<InternalId>{0});
  EXPECT_EQ(f.finals, (std::vector<InternalId>{1, 10}));
  EXPECT_EQ(f.vars, (std::vector<VarName>{888, 999}));
  EXPECT_EQ(f.dense_id(999), 1u);
  EXPECT_EQ(f.reads, (std::vector<std::pair<InternalId, std::uint32_t>>{{3, 1}}));
  EXPECT_EQ(f.writes, (std::vector<std::pair<InternalId, std::uint32_t>>{{7, 0}}));

  std::string text = emit_datalog(f, b.cfg, b.catalog);
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  auto has = [&](const std::string& l) { return std::find(lines.begin(), lines.end(), l) != lines.end(); };

  const char* expected[] = {
      "### Domains", "O 1021 olabels.map", "L 11 labels.map", "B 2",
      "label(0).", "label(1).", "label(3).", "label(4).", "label(6).", "label(7).",
      "label(9).", "label(10).", "olabel(1000,0).", "olabel(1000,1).", "olabel(1001,3).",
      "olabel(1001,4).", "olabel(1010,6).", "olabel(1010,7).", "olabel(1020,9).",
      "olabel(1020,10).", "final(1).", "final(10).", "var(0).", "var(1).", "read(3,1).",
      "write(7,0).", "init(0).",
  };
  for (const char* l : expected) EXPECT_TRUE(has(l)) << l;
  // V counts the variables actually used.
  EXPECT_TRUE(has("V 2 vars.map"));
}

TEST(Clauses, StaticAndDynamicCheckOfRule1001) {
  Built b = build(test::load_example(2));
  const StaticVarCatalog& cat = b.catalog;
  const Rule& r = b.policy.rules()[1];
  auto saddr_cols = cat.columns_for(FieldKind::kSaddr, *r.static_check[FieldKind::kSaddr]);
  auto sport_cols = cat.columns_for(FieldKind::kSport, *r.static_check[FieldKind::kSport]);
  ASSERT_EQ(saddr_cols.size(), 2u);
  ASSERT_EQ(sport_cols, std::vector<std::size_t>{5});

  // Satisfied: one literal per constrained field.
  auto sat = clauses_between(b.cfg, 3, 4);
  ASSERT_EQ(sat.size(), 1u);
  EXPECT_EQ(sat[0]->body, (std::vector<Literal>{{LiteralKind::kNotNoneOf, FieldKind::kSaddr, saddr_cols},
                                                {LiteralKind::kNotNoneOf, FieldKind::kSport, sport_cols}}));

  // Not satisfied: one clause per field, plus the dynamic-check fall-through.
  auto unsat = clauses_between(b.cfg, 3, 6);
  ASSERT_EQ(unsat.size(), 3u);
  EXPECT_EQ(unsat[0]->body, (std::vector<Literal>{{LiteralKind::kNoneOf, FieldKind::kSaddr, saddr_cols}}));
  EXPECT_EQ(unsat[1]->body, (std::vector<Literal>{{LiteralKind::kNoneOf, FieldKind::kSport, sport_cols}}));
  EXPECT_TRUE(unsat[2]->unconditional());

  // Then -> jump target, unconditional.
  auto then = clauses_between(b.cfg, 4, 9);
  ASSERT_EQ(then.size(), 1u);
  EXPECT_TRUE(then[0]->unconditional());
  std::vector<std::size_t> carried = saddr_cols;
  carried.push_back(5);
  EXPECT_EQ(then[0]->carried, carried);

  EXPECT_EQ(b.cfg.init, std::vector<InternalId>{0});
  EXPECT_EQ(b.cfg.finals, (std::vector<InternalId>{1, 10}));
}

TEST(Clauses, DatalogRendering) {
  Built b = build(test::load_example(2));
  std::string text = emit_datalog(extract_facts(b.policy, b.cfg), b.cfg, b.catalog);
  EXPECT_NE(text.find("succ(4,9,saddr0,saddr1,_,_,_,sport0)."), std::string::npos) << text;
  EXPECT_NE(text.find("succ(3,4,saddr0,saddr1,_,_,_,sport0) :- !none5(saddr0,saddr1,0,0,0), !none1(sport0)."),
            std::string::npos);
  EXPECT_NE(text.find("succ(3,6,saddr0,saddr1,_,_,_,_) :- none5(saddr0,saddr1,0,0,0)."), std::string::npos);
  EXPECT_NE(text.find("succ(3,6,_,_,_,_,_,sport0) :- none1(sport0)."), std::string::npos);
  EXPECT_NE(text.find("succ(3,6,_,_,_,_,_,_)."), std::string::npos);
}

TEST(Clauses, TrueHasNoFallThrough) {
  Built b = build(parse("1 if true then $0='x';\n2 if true then accept;"));
  EXPECT_TRUE(clauses_between(b.cfg, 0, 3).empty());
  ASSERT_EQ(clauses_between(b.cfg, 0, 1).size(), 1u);
  EXPECT_TRUE(clauses_between(b.cfg, 0, 1)[0]->unconditional());
  EXPECT_EQ(clauses_between(b.cfg, 1, 3).size(), 1u);
}

TEST(Clauses, NegatedFieldSwapsLiterals) {
  Built b = build(parse("1 if !sport in 80 then drop;\n2 if true then accept;"));
  auto sat = clauses_between(b.cfg, 0, 1);
  ASSERT_EQ(sat.size(), 1u);
  EXPECT_EQ(sat[0]->body[0].kind, LiteralKind::kNoneOf);
  auto unsat = clauses_between(b.cfg, 0, 3);
  ASSERT_EQ(unsat.size(), 1u);
  EXPECT_EQ(unsat[0]->body[0].kind, LiteralKind::kNotNoneOf);
}

TEST(Clauses, CallAndReturnFlow) {
  const char* text =
      "1 if true then call 3;\n2 if true then accept;\n3 if sport in 1 then drop;\n4 if true then return;";
  Built cons = build(parse(text));
  // Return of the call continues at the next rule.
  EXPECT_EQ(clauses_between(cons.cfg, 2, 3).size(), 1u);
  EXPECT_EQ(clauses_between(cons.cfg, 1, 6).size(), 1u);
  // The return rule's Then feeds every call's Return label.
  EXPECT_EQ(clauses_between(cons.cfg, 10, 2).size(), 1u);

  Built omitted = build(parse(text), {CallReturnFlow::kOmitted});
  EXPECT_TRUE(clauses_between(omitted.cfg, 10, 2).empty());
  EXPECT_EQ(clauses_between(omitted.cfg, 2, 3).size(), 1u);
}

TEST(Clauses, FinalsIncludeTrailingSetVar) {
  Built b = build(parse("1 if sport in 1 then accept;\n2 if true then $0='x';"));
  EXPECT_EQ(b.cfg.finals, (std::vector<InternalId>{1, 4}));
}

// A packet satisfies the If -> Then guard exactly when the rule's static
// check matches it, and some "not satisfied" guard exactly when it does not.
TEST(Clauses, GuardsAgreeWithConcreteMatching) {
  std::mt19937_64 rng(99);
  test::GenParams g;
  g.dynamic_checks = false;
  for (int round = 0; round < 100; ++round) {
    Built b = build(test::random_policy(rng, g));
    PacketSample sample = sample_packets(b.catalog, 2000, kDefaultSampleSeed);
    for (const Packet& pkt : sample.packets) {
      std::uint64_t a = assignment_of(b.catalog, pkt);
      for (std::size_t i = 0; i < b.policy.size(); ++i) {
        const Rule& r = b.policy.rules()[i];
        bool match = std::all_of(kAllFields.begin(), kAllFields.end(), [&](FieldKind f) {
          return !r.static_check[f] || r.static_check[f]->matches(pkt.get(f));
        });
        const RuleSlots& s = b.cfg.labels.slots()[i];
        auto to_then = clauses_between(b.cfg, s.if_label, s.then_label);
        ASSERT_EQ(to_then.size(), 1u);
        ASSERT_EQ(to_then[0]->holds(a), match) << print(r) << " / " << pkt.to_string();
        if (i + 1 < b.policy.size()) {
          auto skip = clauses_between(b.cfg, s.if_label, b.cfg.labels.slots()[i + 1].if_label);
          bool any = std::any_of(skip.begin(), skip.end(), [&](const SuccClause* c) { return c->holds(a); });
          ASSERT_EQ(any, !match) << print(r) << " / " << pkt.to_string();
        }
      }
    }
  }
}

TEST(Dot, OneNodePerInternalLabel) {
  Built b = build(test::load_example(1));
  std::string dot = emit_dot(b.policy, b.cfg, b.catalog);
  std::size_t nodes = 0;
  std::istringstream in(dot);
  for (std::string l; std::getline(in, l);) {
    if (l.size() > 3 && l.rfind("  n", 0) == 0 && std::isdigit(static_cast<unsigned char>(l[3])) &&
        l.find("->") == std::string::npos) {
      ++nodes;
    }
  }
  EXPECT_EQ(nodes, b.cfg.labels.labels().size());
  EXPECT_EQ(nodes, 8u);
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  EXPECT_NE(dot.find("peripheries=2"), std::string::npos);
}

}  // namespace
}  // namespace fwa
