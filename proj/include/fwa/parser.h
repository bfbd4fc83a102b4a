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

#ifndef FWA_PARSER_H_
#define FWA_PARSER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fwa/error.h"
#include "fwa/policy.h"

namespace fwa {

enum class TokenKind {
  kNumber,
  kAddress,  // dotted quad
  kVar,      // $n
  kOpaque,   // 'text'
  kIf,
  kThen,
  kAccept,
  kDrop,
  kCall,
  kJump,
  kReturn,
  kIn,
  kAnd,
  kTrue,
  kNil,
  kSaddr,
  kSport,
  kDaddr,
  kDport,
  kProto,
  kLBracket,
  kRBracket,
  kLParen,
  kRParen,
  kLBrace,
  kRBrace,
  kComma,
  kSemi,
  kSlash,
  kColon,
  kEq,
  kAmp,
  kBang,
};

std::string_view token_kind_name(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string text;
  // Numeric payload for kNumber, kAddress and kVar.
  std::uint64_t value = 0;
  SourceSpan span;
};

// Lexing and parsing failures carry the offending position.
class SyntaxError : public Error {
 public:
  SyntaxError(ErrorCode code, SourceSpan span, std::vector<std::string> expected,
              const std::string& message)
      : Error(code, message), span_(span), expected_(std::move(expected)) {}

  const SourceSpan& span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  SourceSpan span_;
  std::vector<std::string> expected_;
};

// Throws SyntaxError(kLexError) on stray characters or an unterminated quote.
std::vector<Token> lex(std::string_view text);

// Throws SyntaxError(kParseError, kLexError) or Error(kEmptyInterval,
// kDomainMismatch, ...) wrapped as SyntaxError with the interval's span.
Policy parse(std::string_view text);

struct ParseResult {
  Policy policy;
  std::vector<Diagnostic> diagnostics;
};

// parse followed by validate.
ParseResult parse_and_validate(std::string_view text);

// Canonical text: one rule per line, fields in fixed order, lowercase
// keywords, vendor origin (if any) as a preceding comment.
std::string print(const Policy& policy);
std::string print(const Rule& rule);

}  // namespace fwa

#endif  // FWA_PARSER_H_
