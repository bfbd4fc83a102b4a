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

#include "fwa/error.h"
#include "fwa/parser.h"
#include "support.h"

namespace fwa {
namespace {

Value ip(const char* s) { return parse_dotted_quad(s).value; }

TEST(Lexer, TokensAndSpans) {
  auto toks = lex("1 if saddr in 10.0.0.0/8 then $3='x'; # c\n2 if true then accept;");
  ASSERT_GE(toks.size(), 10u);
  EXPECT_EQ(toks[0].kind, TokenKind::kNumber);
  EXPECT_EQ(toks[0].value, 1u);
  EXPECT_EQ(toks[4].kind, TokenKind::kAddress);
  EXPECT_EQ(toks[4].value, ip("10.0.0.0"));
  EXPECT_EQ(toks[4].span.column, 15u);
  EXPECT_EQ(toks[8].kind, TokenKind::kVar);
  EXPECT_EQ(toks[8].value, 3u);
  EXPECT_EQ(toks[10].kind, TokenKind::kOpaque);
  EXPECT_EQ(toks[10].text, "x");
  EXPECT_EQ(toks[12].span.line, 2u);
}

TEST(Lexer, Errors) {
  for (const char* bad : {"1 if true then accept; @", "1 if $0='open then drop;", "1 iff true"}) {
    try {
      lex(bad);
      ADD_FAILURE() << bad;
    } catch (const SyntaxError& e) {
      EXPECT_EQ(e.code(), ErrorCode::kLexError) << bad;
    }
  }
}

TEST(Parser, ExampleTwoStructure) {
  Policy p = test::load_example(2);
  ASSERT_EQ(p.size(), 4u);
  const Rule& r = p.rules()[1];
  EXPECT_EQ(r.label, 1001u);
  ASSERT_TRUE(r.static_check[FieldKind::kSaddr].has_value());
  const auto& saddr = *r.static_check[FieldKind::kSaddr];
  ASSERT_EQ(saddr.intervals.size(), 2u);
  EXPECT_EQ(saddr.intervals[0].first(), ip("10.10.10.1"));
  EXPECT_EQ(saddr.intervals[1].last(), ip("20.1.1.1"));
  ASSERT_TRUE(r.static_check[FieldKind::kSport].has_value());
  EXPECT_EQ(r.static_check[FieldKind::kSport]->intervals[0], Interval::closed(1, 100, 65535));
  ASSERT_TRUE(r.dynamic_check.has_value());
  EXPECT_EQ(r.dynamic_check->var, 999u);
  EXPECT_EQ(r.dynamic_check->value, CheckValue{Const{5}});
  EXPECT_EQ(r.target, Target{Jump{1020}});
  EXPECT_EQ(p.rules()[2].target, (Target{SetVar{888, Opaque{"1"}}}));
}

TEST(Parser, IntervalForms) {
  Policy p = parse(
      "1 if saddr in 10.0.0.0:255.255.0.0 sport in (10,100) daddr in 1.2.3.4 "
      "dport in {[1,2), 80} proto in 6 then accept;");
  const Rule& r = p.rules()[0];
  EXPECT_EQ(r.static_check[FieldKind::kSaddr]->intervals[0].last(), ip("10.0.255.255"));
  EXPECT_EQ(r.static_check[FieldKind::kSport]->intervals[0], Interval::closed(11, 99, 65535));
  EXPECT_EQ(r.static_check[FieldKind::kDaddr]->intervals[0].width(), 1u);
  EXPECT_EQ(r.static_check[FieldKind::kDport]->intervals.size(), 2u);
  EXPECT_EQ(r.static_check[FieldKind::kDport]->intervals[0], Interval::closed(1, 1, 65535));
  EXPECT_EQ(r.static_check[FieldKind::kProto]->intervals[0], Interval::closed(6, 6, 255));
}

TEST(Parser, NegationDynamicAndTargets) {
  Policy p = parse(
      "1 if !saddr in 192.168.1.0/24 then jump 4;\n"
      "2 if $1=0x10&0xF0 then call 4;\n"
      "3 if !$0=nil then $0=NIL;\n"
      "4 if true then return;\n"
      "5 if $2='t' then drop;\n");
  EXPECT_TRUE(p.rules()[0].static_check[FieldKind::kSaddr]->negated);
  EXPECT_EQ(p.rules()[1].dynamic_check->value, (CheckValue{ConstMasked{0x10, 0xF0}}));
  EXPECT_TRUE(p.rules()[2].dynamic_check->negated);
  EXPECT_EQ(p.rules()[2].target, (Target{SetVar{0, Nil{}}}));
  EXPECT_EQ(p.rules()[3].target, Target{Return{}});
  EXPECT_TRUE(p.rules()[4].static_check.unconstrained());
  EXPECT_EQ(p.rules()[4].dynamic_check->value, CheckValue{Opaque{"t"}});
}

TEST(Parser, ErrorsCarryPosition) {
  struct Case {
    const char* text;
    ErrorCode code;
    std::uint32_t line;
  };
  const Case cases[] = {
      {"1 if saddr in 1.2.3.4 then accept", ErrorCode::kParseError, 1},
      {"1 if true then\n  jump;", ErrorCode::kParseError, 2},
      {"1 if sport in 1 saddr in 1.2.3.4 then accept;", ErrorCode::kParseError, 1},
      {"1 if sport in (2,3) then accept;", ErrorCode::kEmptyInterval, 1},
      {"1 if sport in 70000 then accept;", ErrorCode::kDomainMismatch, 1},
      {"1 if saddr in 1.2.3.4/40 then accept;", ErrorCode::kMalformedPrefix, 1},
      {"\n\n1 if saddr in 1.2.3.4:255.0.255.0 then accept;", ErrorCode::kNonContiguousMask, 3},
  };
  for (const Case& c : cases) {
    try {
      parse(c.text);
      ADD_FAILURE() << c.text;
    } catch (const SyntaxError& e) {
      EXPECT_EQ(e.code(), c.code) << c.text << ": " << e.what();
      EXPECT_EQ(e.span().line, c.line) << c.text;
    }
  }
}

TEST(Parser, ExpectedTokensListed) {
  try {
    parse("1 if true accept;");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_FALSE(e.expected().empty());
  }
}

TEST(Printer, RoundTripExamples) {
  for (int i = 1; i <= 5; ++i) {
    Policy p = test::load_example(i);
    std::string text = print(p);
    EXPECT_EQ(parse(text), p) << text;
    EXPECT_EQ(print(parse(text)), text);
  }
}

TEST(Printer, CanonicalForm) {
  Policy p = parse("7 if saddr in {192.168.1.10/32, [10.0.0.1,10.0.0.9]} and $0='drop' then accept;");
  EXPECT_EQ(print(p.rules()[0]),
            "7 if saddr in {192.168.1.10, [10.0.0.1,10.0.0.9]} and $0='drop' then accept ;");
}

TEST(Printer, RandomPoliciesRoundTrip) {
  std::mt19937_64 rng(7);
  test::GenParams g;
  g.calls = true;
  for (int i = 0; i < 200; ++i) {
    Policy p = test::random_policy(rng, g);
    EXPECT_EQ(parse(print(p)), p) << print(p);
  }
}

TEST(Parser, ValidateAfterParse) {
  ParseResult r = parse_and_validate("1 if true then jump 5;\n2 if true then accept;");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].code, DiagCode::kDanglingLabel);
}

}  // namespace
}  // namespace fwa
