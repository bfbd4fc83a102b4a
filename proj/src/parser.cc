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

#include "fwa/parser.h"

#include <cctype>
#include <charconv>
#include <string>
#include <utility>

namespace fwa {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_word(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
        continue;
      }
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        continue;
      }
      start_ = pos_;
      start_span_ = {line_, column_, 0};
      if (is_digit(c)) {
        out.push_back(number());
      } else if (c == '$') {
        advance();
        if (pos_ >= text_.size() || !is_digit(text_[pos_])) fail("expected digits after '$'");
        Token t = number();
        t.kind = TokenKind::kVar;
        t.text = std::string(text_.substr(start_, pos_ - start_));
        t.span = finish();
        out.push_back(std::move(t));
      } else if (c == '\'') {
        out.push_back(opaque());
      } else if (is_word(c)) {
        out.push_back(word());
      } else {
        out.push_back(punct(c));
      }
    }
    return out;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  SourceSpan finish() const {
    SourceSpan s = start_span_;
    s.length = static_cast<std::uint32_t>(pos_ - start_);
    return s;
  }

  [[noreturn]] void fail(const std::string& what) const {
    SourceSpan s{line_, column_, 1};
    throw SyntaxError(ErrorCode::kLexError, s, {},
                      std::to_string(s.line) + ":" + std::to_string(s.column) + ": " + what);
  }

  Token number() {
    Token t{TokenKind::kNumber, "", 0, {}};
    std::size_t begin = pos_;
    if (text_[pos_] == '0' && pos_ + 1 < text_.size() &&
        (text_[pos_ + 1] == 'x' || text_[pos_ + 1] == 'X')) {
      advance();
      advance();
      std::size_t digits = pos_;
      while (pos_ < text_.size() && std::isxdigit(static_cast<unsigned char>(text_[pos_]))) advance();
      if (digits == pos_) fail("expected hex digits");
      auto [p, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, t.value, 16);
      if (ec != std::errc{}) fail("number out of range");
    } else {
      while (pos_ < text_.size() && is_digit(text_[pos_])) advance();
      // A dotted quad: four digit groups.
      if (pos_ + 1 < text_.size() && text_[pos_] == '.' && is_digit(text_[pos_ + 1])) {
        for (int dots = 0; dots < 3; ++dots) {
          if (pos_ + 1 >= text_.size() || text_[pos_] != '.' || !is_digit(text_[pos_ + 1])) {
            fail("malformed IPv4 address");
          }
          advance();
          while (pos_ < text_.size() && is_digit(text_[pos_])) advance();
        }
        t.kind = TokenKind::kAddress;
        t.text = std::string(text_.substr(begin, pos_ - begin));
        try {
          t.value = parse_dotted_quad(t.text).value;
        } catch (const Error& e) {
          fail(e.what());
        }
        t.span = finish();
        return t;
      }
      auto [p, ec] = std::from_chars(text_.data() + begin, text_.data() + pos_, t.value);
      if (ec != std::errc{}) fail("number out of range");
    }
    t.text = std::string(text_.substr(begin, pos_ - begin));
    t.span = finish();
    return t;
  }

  Token opaque() {
    advance();
    std::size_t begin = pos_;
    while (pos_ < text_.size() && text_[pos_] != '\'') {
      if (text_[pos_] == '\n' || text_[pos_] == '\r') fail("unterminated quoted value");
      advance();
    }
    if (pos_ >= text_.size()) fail("unterminated quoted value");
    Token t{TokenKind::kOpaque, std::string(text_.substr(begin, pos_ - begin)), 0, {}};
    advance();
    t.span = finish();
    return t;
  }

  Token word() {
    while (pos_ < text_.size() && (is_word(text_[pos_]) || is_digit(text_[pos_]))) advance();
    std::string w(text_.substr(start_, pos_ - start_));
    static const std::pair<std::string_view, TokenKind> kKeywords[] = {
        {"if", TokenKind::kIf},         {"then", TokenKind::kThen},
        {"accept", TokenKind::kAccept}, {"drop", TokenKind::kDrop},
        {"call", TokenKind::kCall},     {"jump", TokenKind::kJump},
        {"return", TokenKind::kReturn}, {"in", TokenKind::kIn},
        {"and", TokenKind::kAnd},       {"true", TokenKind::kTrue},
        {"saddr", TokenKind::kSaddr},   {"sport", TokenKind::kSport},
        {"daddr", TokenKind::kDaddr},   {"dport", TokenKind::kDport},
        {"proto", TokenKind::kProto},
    };
    if (lower(w) == "nil") return {TokenKind::kNil, w, 0, finish()};
    for (const auto& [name, kind] : kKeywords) {
      if (w == name) return {kind, w, 0, finish()};
    }
    SourceSpan s = finish();
    throw SyntaxError(ErrorCode::kLexError, s, {},
                      std::to_string(s.line) + ":" + std::to_string(s.column) +
                          ": unknown word '" + w + "'");
  }

  Token punct(char c) {
    TokenKind kind;
    switch (c) {
      case '[': kind = TokenKind::kLBracket; break;
      case ']': kind = TokenKind::kRBracket; break;
      case '(': kind = TokenKind::kLParen; break;
      case ')': kind = TokenKind::kRParen; break;
      case '{': kind = TokenKind::kLBrace; break;
      case '}': kind = TokenKind::kRBrace; break;
      case ',': kind = TokenKind::kComma; break;
      case ';': kind = TokenKind::kSemi; break;
      case '/': kind = TokenKind::kSlash; break;
      case ':': kind = TokenKind::kColon; break;
      case '=': kind = TokenKind::kEq; break;
      case '&': kind = TokenKind::kAmp; break;
      case '!': kind = TokenKind::kBang; break;
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
    advance();
    return {kind, std::string(1, c), 0, finish()};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t start_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t column_ = 1;
  SourceSpan start_span_;
};

TokenKind field_token(FieldKind f) {
  switch (f) {
    case FieldKind::kSaddr: return TokenKind::kSaddr;
    case FieldKind::kSport: return TokenKind::kSport;
    case FieldKind::kDaddr: return TokenKind::kDaddr;
    case FieldKind::kDport: return TokenKind::kDport;
    case FieldKind::kProto: return TokenKind::kProto;
  }
  return TokenKind::kSaddr;
}

std::optional<FieldKind> token_field(TokenKind k) {
  for (FieldKind f : kAllFields) {
    if (field_token(f) == k) return f;
  }
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Policy run() {
    std::vector<Rule> rules;
    while (!at_end()) rules.push_back(rule());
    return Policy(std::move(rules));
  }

 private:
  bool at_end() const { return pos_ >= tokens_.size(); }

  bool peek(TokenKind k, std::size_t ahead = 0) const {
    return pos_ + ahead < tokens_.size() && tokens_[pos_ + ahead].kind == k;
  }

  SourceSpan here() const {
    if (!at_end()) return tokens_[pos_].span;
    if (tokens_.empty()) return {};
    SourceSpan s = tokens_.back().span;
    s.column += s.length;
    s.length = 0;
    return s;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    SourceSpan s = here();
    std::string found = at_end() ? "end of input" : "'" + tokens_[pos_].text + "'";
    std::string msg = std::to_string(s.line) + ":" + std::to_string(s.column) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    msg += ", found " + found;
    throw SyntaxError(ErrorCode::kParseError, s, std::move(expected), msg);
  }

  const Token& expect(TokenKind k) {
    if (!peek(k)) fail({std::string(token_kind_name(k))});
    return tokens_[pos_++];
  }

  bool accept(TokenKind k) {
    if (!peek(k)) return false;
    ++pos_;
    return true;
  }

  Rule rule() {
    Rule r;
    r.label = expect(TokenKind::kNumber).value;
    expect(TokenKind::kIf);
    if (accept(TokenKind::kTrue)) {
      // unconditional
    } else if (peek(TokenKind::kVar) || (peek(TokenKind::kBang) && peek(TokenKind::kVar, 1))) {
      r.dynamic_check = dynamic_check();
    } else {
      r.static_check = static_checks();
      if (accept(TokenKind::kAnd)) r.dynamic_check = dynamic_check();
    }
    expect(TokenKind::kThen);
    r.target = target();
    expect(TokenKind::kSemi);
    return r;
  }

  StaticCheck static_checks() {
    StaticCheck check;
    int next_field = 0;
    bool any = false;
    while (true) {
      bool negated = peek(TokenKind::kBang);
      std::size_t ahead = negated ? 1 : 0;
      if (pos_ + ahead >= tokens_.size()) break;
      auto field = token_field(tokens_[pos_ + ahead].kind);
      if (!field) break;
      if (static_cast<int>(index_of(*field)) < next_field) {
        pos_ += ahead;
        fail({"field clauses in order saddr, sport, daddr, dport, proto"});
      }
      pos_ += ahead + 1;
      expect(TokenKind::kIn);
      check[*field] = FieldPredicate{negated, interval_set(*field)};
      next_field = static_cast<int>(index_of(*field)) + 1;
      any = true;
    }
    if (!any) fail({"'true'", "field check", "variable check"});
    return check;
  }

  std::vector<Interval> interval_set(FieldKind f) {
    std::vector<Interval> out;
    if (accept(TokenKind::kLBrace)) {
      out.push_back(interval(f));
      while (accept(TokenKind::kComma)) out.push_back(interval(f));
      expect(TokenKind::kRBrace);
    } else {
      out.push_back(interval(f));
    }
    return out;
  }

  Value scalar(FieldKind f) {
    const TokenKind k = is_address(f) ? TokenKind::kAddress : TokenKind::kNumber;
    return expect(k).value;
  }

  Interval build(SourceSpan at, Boundary lo, Boundary hi, FieldKind f) {
    try {
      return Interval(lo, hi, domain_max(f));
    } catch (const Error& e) {
      throw SyntaxError(e.code(), at, {},
                        std::to_string(at.line) + ":" + std::to_string(at.column) +
                            ": " + e.what());
    }
  }

  Interval interval(FieldKind f) {
    const SourceSpan at = here();
    if (peek(TokenKind::kLBracket) || peek(TokenKind::kLParen)) {
      const bool lo_incl = tokens_[pos_++].kind == TokenKind::kLBracket;
      Value a = scalar(f);
      expect(TokenKind::kComma);
      Value b = scalar(f);
      bool hi_incl;
      if (accept(TokenKind::kRBracket)) {
        hi_incl = true;
      } else if (accept(TokenKind::kRParen)) {
        hi_incl = false;
      } else {
        fail({"']'", "')'"});
      }
      return build(at, {a, lo_incl, true}, {b, hi_incl, false}, f);
    }
    if (is_address(f)) {
      if (!peek(TokenKind::kAddress)) fail({"address", "'['", "'('"});
      IPv4Value addr{static_cast<std::uint32_t>(tokens_[pos_++].value)};
      try {
        if (accept(TokenKind::kSlash)) {
          return cidr_to_interval(addr, static_cast<unsigned>(
                                            std::min<std::uint64_t>(expect(TokenKind::kNumber).value, 1000)));
        }
        if (accept(TokenKind::kColon)) {
          IPv4Value mask{static_cast<std::uint32_t>(expect(TokenKind::kAddress).value)};
          return netmask_to_interval(addr, mask);
        }
      } catch (const SyntaxError&) {
        throw;
      } catch (const Error& e) {
        throw SyntaxError(e.code(), at, {},
                          std::to_string(at.line) + ":" + std::to_string(at.column) +
                              ": " + e.what());
      }
      return build(at, {addr.value, true, true}, {addr.value, true, false}, f);
    }
    if (!peek(TokenKind::kNumber)) fail({"number", "'['", "'('"});
    Value v = tokens_[pos_++].value;
    return build(at, {v, true, true}, {v, true, false}, f);
  }

  DynamicCheck dynamic_check() {
    DynamicCheck d;
    d.negated = accept(TokenKind::kBang);
    d.var = static_cast<VarName>(expect(TokenKind::kVar).value);
    expect(TokenKind::kEq);
    if (peek(TokenKind::kOpaque)) {
      d.value = Opaque{tokens_[pos_++].text};
    } else if (accept(TokenKind::kNil)) {
      d.value = Nil{};
    } else if (peek(TokenKind::kNumber)) {
      std::uint64_t v = tokens_[pos_++].value;
      if (accept(TokenKind::kAmp)) {
        d.value = ConstMasked{v, expect(TokenKind::kNumber).value};
      } else {
        d.value = Const{v};
      }
    } else {
      fail({"quoted value", "number", "'nil'"});
    }
    return d;
  }

  Target target() {
    if (accept(TokenKind::kAccept)) return Accept{};
    if (accept(TokenKind::kDrop)) return Drop{};
    if (accept(TokenKind::kReturn)) return Return{};
    if (accept(TokenKind::kCall)) return Call{expect(TokenKind::kNumber).value};
    if (accept(TokenKind::kJump)) return Jump{expect(TokenKind::kNumber).value};
    if (peek(TokenKind::kVar)) {
      SetVar s;
      s.var = static_cast<VarName>(tokens_[pos_++].value);
      expect(TokenKind::kEq);
      if (peek(TokenKind::kOpaque)) {
        s.value = Opaque{tokens_[pos_++].text};
      } else if (accept(TokenKind::kNil)) {
        s.value = Nil{};
      } else if (peek(TokenKind::kNumber)) {
        s.value = Const{tokens_[pos_++].value};
      } else {
        fail({"quoted value", "number", "'nil'"});
      }
      return s;
    }
    fail({"'accept'", "'drop'", "'return'", "'call'", "'jump'", "variable assignment"});
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string print_interval(FieldKind f, const Interval& i) {
  if (i.lo().included && i.hi().included && i.lo().endpoint == i.hi().endpoint) {
    return format_field_value(f, i.lo().endpoint);
  }
  std::string out;
  out += i.lo().included ? '[' : '(';
  out += format_field_value(f, i.lo().endpoint);
  out += ',';
  out += format_field_value(f, i.hi().endpoint);
  out += i.hi().included ? ']' : ')';
  return out;
}

}  // namespace

std::string_view token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::kNumber: return "number";
    case TokenKind::kAddress: return "address";
    case TokenKind::kVar: return "variable";
    case TokenKind::kOpaque: return "quoted value";
    case TokenKind::kIf: return "'if'";
    case TokenKind::kThen: return "'then'";
    case TokenKind::kAccept: return "'accept'";
    case TokenKind::kDrop: return "'drop'";
    case TokenKind::kCall: return "'call'";
    case TokenKind::kJump: return "'jump'";
    case TokenKind::kReturn: return "'return'";
    case TokenKind::kIn: return "'in'";
    case TokenKind::kAnd: return "'and'";
    case TokenKind::kTrue: return "'true'";
    case TokenKind::kNil: return "'nil'";
    case TokenKind::kSaddr: return "'saddr'";
    case TokenKind::kSport: return "'sport'";
    case TokenKind::kDaddr: return "'daddr'";
    case TokenKind::kDport: return "'dport'";
    case TokenKind::kProto: return "'proto'";
    case TokenKind::kLBracket: return "'['";
    case TokenKind::kRBracket: return "']'";
    case TokenKind::kLParen: return "'('";
    case TokenKind::kRParen: return "')'";
    case TokenKind::kLBrace: return "'{'";
    case TokenKind::kRBrace: return "'}'";
    case TokenKind::kComma: return "','";
    case TokenKind::kSemi: return "';'";
    case TokenKind::kSlash: return "'/'";
    case TokenKind::kColon: return "':'";
    case TokenKind::kEq: return "'='";
    case TokenKind::kAmp: return "'&'";
    case TokenKind::kBang: return "'!'";
  }
  return "?";
}

std::vector<Token> lex(std::string_view text) { return Lexer(text).run(); }

Policy parse(std::string_view text) { return Parser(lex(text)).run(); }

ParseResult parse_and_validate(std::string_view text) {
  ParseResult result{parse(text), {}};
  result.diagnostics = validate(result.policy);
  return result;
}

std::string print(const Rule& rule) {
  std::string filter;
  for (FieldKind f : kAllFields) {
    const auto& pred = rule.static_check[f];
    if (!pred) continue;
    if (!filter.empty()) filter += ' ';
    if (pred->negated) filter += '!';
    filter += field_name(f);
    filter += " in ";
    if (pred->intervals.size() == 1) {
      filter += print_interval(f, pred->intervals.front());
    } else {
      filter += '{';
      for (std::size_t i = 0; i < pred->intervals.size(); ++i) {
        if (i) filter += ", ";
        filter += print_interval(f, pred->intervals[i]);
      }
      filter += '}';
    }
  }
  if (rule.dynamic_check) {
    const DynamicCheck& d = *rule.dynamic_check;
    if (!filter.empty()) filter += " and ";
    if (d.negated) filter += '!';
    filter += "$" + std::to_string(d.var) + "=" + to_string(d.value);
  }
  if (filter.empty()) filter = "true";

  std::string target = std::visit(
      [](const auto& t) -> std::string {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, Accept>) return "accept";
        if constexpr (std::is_same_v<T, Drop>) return "drop";
        if constexpr (std::is_same_v<T, Return>) return "return";
        if constexpr (std::is_same_v<T, Call>) return "call " + std::to_string(t.target);
        if constexpr (std::is_same_v<T, Jump>) return "jump " + std::to_string(t.target);
        if constexpr (std::is_same_v<T, SetVar>) {
          return "$" + std::to_string(t.var) + "=" + to_string(t.value);
        }
      },
      rule.target);

  return std::to_string(rule.label) + " if " + filter + " then " + target + " ;";
}

std::string print(const Policy& policy) {
  std::string out;
  for (const Rule& r : policy.rules()) {
    if (!r.origin.empty()) out += "# " + r.origin + "\n";
    out += print(r);
    out += '\n';
  }
  return out;
}

}  // namespace fwa
