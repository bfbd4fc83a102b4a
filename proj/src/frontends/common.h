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

#ifndef FWA_SRC_FRONTENDS_COMMON_H_
#define FWA_SRC_FRONTENDS_COMMON_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fwa/error.h"
#include "fwa/frontends.h"

namespace fwa::frontend {

struct Line {
  std::size_t number = 0;
  std::string text;
  std::vector<std::string> words;
};

// Splits into logical lines: '#' comments removed, blank lines dropped,
// optional backslash continuation. Words split on whitespace; '{', '}' and
// ',' are words of their own, a leading '!' is split off and double quotes
// are stripped.
std::vector<Line> split_lines(std::string_view text, bool continuation);

// Guess of the platform a line belongs to, used for WrongPlatform errors.
std::optional<Platform> sniff_platform(const Line& line);

[[noreturn]] void fail_at(const Line& line, const std::string& what,
                          ErrorCode code = ErrorCode::kParseError);

class Cursor {
 public:
  explicit Cursor(const Line& line) : line_(line) {}

  bool at_end() const { return pos_ >= line_.words.size(); }
  const std::string& peek(std::size_t ahead = 0) const;
  bool peek_is(std::string_view word, std::size_t ahead = 0) const;
  std::string next(std::string_view what);
  bool accept(std::string_view word);
  void expect(std::string_view word);
  std::uint64_t number(std::string_view what, std::uint64_t max);
  [[noreturn]] void fail(const std::string& what,
                         ErrorCode code = ErrorCode::kParseError) const {
    fail_at(line_, what, code);
  }
  const Line& line() const { return line_; }

 private:
  const Line& line_;
  std::size_t pos_ = 0;
};

// Case-insensitive comparison against a lowercase keyword.
bool keyword(std::string_view word, std::string_view lower_kw);

std::optional<std::uint64_t> to_number(std::string_view s);

// "any" yields nullopt; otherwise an address, CIDR or address:mask.
std::optional<Interval> address_interval(const Cursor& at, std::string_view word);
// "80", "80:90", "80-90" and comma lists already split into words.
Interval port_interval(const Cursor& at, std::string_view word);
// Protocol name or number; nullopt for "ip"/"all"/"any".
std::optional<Interval> protocol_interval(const Cursor& at, std::string_view word);

// Adds intervals to a field predicate, rejecting a second clause on the same
// field.
void constrain(Cursor& at, VendorFilter& filter, FieldKind f, std::vector<Interval> intervals,
               bool negated);

// Label base + 1 + index; throws Error(kBandOverflow) past the band.
Label band_label(Label base, std::size_t index, std::string_view band_name);

Rule make_rule(Label label, const VendorFilter& filter, Target target, std::string origin);

Diagnostic ignored_option(const Line& line, const std::string& what);

// Addresses after from/to: one word or a '{ a, b }' list. `any` is set when
// the list admits every address.
std::vector<Interval> parse_address_list(Cursor& c, bool& any);
// Ports after "port": "= n", "n", "a:b", "< n", "a >< b" or a '{ }' list.
std::vector<Interval> parse_port_spec(Cursor& c);

struct ParsedFilter {
  VendorFilter filter;
  bool quick = false;
  std::optional<std::string> tag;
  std::optional<std::uint32_t> head;
  std::optional<std::uint32_t> group;
  // Words accepted but not modelled (interfaces, direction, state).
  std::vector<std::string> ignored;
};

// The shared part of a PF/IPFilter rule after the action word. Stops at '{'
// or at the end of the line; unknown words fail the parse. PF accepts
// tag/tagged/label, IPFilter head/group.
ParsedFilter parse_filter_words(Cursor& c, bool ipfilter);

// Vendor text kept on translated rules, e.g. "line 3: pass in all".
std::string origin_of(const SourceLine& source);

}  // namespace fwa::frontend

#endif  // FWA_SRC_FRONTENDS_COMMON_H_
