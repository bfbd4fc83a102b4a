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

#include "common.h"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "fwa/net.h"

namespace fwa::frontend {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : s) {
    if (quoted) {
      if (c == '"') {
        quoted = false;
        out.push_back(std::move(cur));
        cur.clear();
      } else {
        cur += c;
      }
      continue;
    }
    if (c == '"') {
      flush();
      quoted = true;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == '{' || c == '}' || c == ',') {
      flush();
      out.emplace_back(1, c);
    } else if (c == '!' && cur.empty()) {
      out.emplace_back("!");
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

}  // namespace

std::vector<Line> split_lines(std::string_view text, bool continuation) {
  std::vector<Line> out;
  std::string pending;
  std::size_t pending_line = 0;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string raw(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++number;
    bool in_quote = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') in_quote = !in_quote;
      if (raw[i] == '#' && !in_quote) {
        raw.resize(i);
        break;
      }
    }
    std::string body = trim(raw);
    if (pending.empty()) pending_line = number;
    if (continuation && !body.empty() && body.back() == '\\') {
      body.pop_back();
      pending += body + " ";
      continue;
    }
    pending += body;
    std::string full = trim(pending);
    pending.clear();
    if (full.empty()) continue;
    Line line{pending_line, full, tokenize(full)};
    out.push_back(std::move(line));
  }
  return out;
}

std::optional<Platform> sniff_platform(const Line& line) {
  if (line.words.empty()) return std::nullopt;
  const std::string& w = line.words.front();
  if (w == "iptables" || w == "-A" || w == "-P" || w == "-N" || w == "--append" ||
      w == "--policy") {
    return Platform::kNetfilter;
  }
  if (to_number(w) || w == "add") return Platform::kIpfw;
  if (keyword(w, "skip")) return Platform::kIpfilter;
  if (keyword(w, "pass") || keyword(w, "block")) {
    for (const std::string& x : line.words) {
      if (keyword(x, "head") || keyword(x, "group")) return Platform::kIpfilter;
      if (keyword(x, "anchor") || keyword(x, "tag") || keyword(x, "tagged")) return Platform::kPf;
    }
  }
  if (keyword(w, "anchor") || keyword(w, "match")) return Platform::kPf;
  return std::nullopt;
}

void fail_at(const Line& line, const std::string& what, ErrorCode code) {
  throw Error(code, "line " + std::to_string(line.number) + ": " + what +
                                          " in '" + line.text + "'");
}

const std::string& Cursor::peek(std::size_t ahead) const {
  static const std::string kEmpty;
  return pos_ + ahead < line_.words.size() ? line_.words[pos_ + ahead] : kEmpty;
}

bool Cursor::peek_is(std::string_view word, std::size_t ahead) const {
  return pos_ + ahead < line_.words.size() && keyword(line_.words[pos_ + ahead], word);
}

std::string Cursor::next(std::string_view what) {
  if (at_end()) fail("expected " + std::string(what) + " at end of line");
  return line_.words[pos_++];
}

bool Cursor::accept(std::string_view word) {
  if (!peek_is(word)) return false;
  ++pos_;
  return true;
}

void Cursor::expect(std::string_view word) {
  if (!accept(word)) {
    fail("expected '" + std::string(word) + "'" +
         (at_end() ? std::string(" at end of line") : ", found '" + peek() + "'"));
  }
}

std::uint64_t Cursor::number(std::string_view what, std::uint64_t max) {
  const std::string w = next(what);
  auto v = to_number(w);
  if (!v || *v > max) fail("expected " + std::string(what) + ", found '" + w + "'");
  return *v;
}

bool keyword(std::string_view word, std::string_view lower_kw) {
  if (word.size() != lower_kw.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(word[i])) != lower_kw[i]) return false;
  }
  return true;
}

std::optional<std::uint64_t> to_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::uint64_t v = 0;
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    s.remove_prefix(2);
    base = 16;
  }
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<Interval> address_interval(const Cursor& at, std::string_view word) {
  if (keyword(word, "any")) return std::nullopt;
  try {
    if (auto slash = word.find('/'); slash != std::string_view::npos) {
      auto len = to_number(word.substr(slash + 1));
      if (!len) at.fail("bad prefix length in '" + std::string(word) + "'");
      return cidr_to_interval(parse_dotted_quad(word.substr(0, slash)),
                              static_cast<unsigned>(std::min<std::uint64_t>(*len, 1000)));
    }
    if (auto colon = word.find(':'); colon != std::string_view::npos) {
      return netmask_to_interval(parse_dotted_quad(word.substr(0, colon)),
                                 parse_dotted_quad(word.substr(colon + 1)));
    }
    const IPv4Value a = parse_dotted_quad(word);
    return Interval::closed(a.value, a.value, domain_max(FieldKind::kSaddr));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    at.fail(std::string(e.what()), e.code());
  }
}

Interval port_interval(const Cursor& at, std::string_view word) {
  const std::size_t sep = word.find_first_of(":-");
  auto lo = to_number(word.substr(0, sep));
  auto hi = sep == std::string_view::npos ? lo : to_number(word.substr(sep + 1));
  if (!lo || !hi || *lo > *hi || *hi > 0xFFFF) at.fail("bad port '" + std::string(word) + "'");
  return Interval::closed(*lo, *hi, 0xFFFF);
}

std::optional<Interval> protocol_interval(const Cursor& at, std::string_view word) {
  static const std::pair<std::string_view, Value> kNames[] = {
      {"icmp", 1}, {"igmp", 2}, {"tcp", 6}, {"udp", 17}, {"gre", 47},
      {"esp", 50}, {"ah", 51},  {"icmp6", 58}, {"sctp", 132},
  };
  if (keyword(word, "ip") || keyword(word, "all") || keyword(word, "any")) return std::nullopt;
  for (const auto& [name, num] : kNames) {
    if (keyword(word, name)) return Interval::closed(num, num, 0xFF);
  }
  auto v = to_number(word);
  if (!v || *v > 0xFF) at.fail("unknown protocol '" + std::string(word) + "'");
  return Interval::closed(*v, *v, 0xFF);
}

void constrain(Cursor& at, VendorFilter& filter, FieldKind f, std::vector<Interval> intervals,
               bool negated) {
  auto& slot = filter.check[f];
  if (slot) at.fail(std::string(field_name(f)) + " given twice");
  slot = FieldPredicate{negated, std::move(intervals)};
}

Label band_label(Label base, std::size_t index, std::string_view band_name) {
  if (index + 1 >= kBandWidth) {
    throw Error(ErrorCode::kBandOverflow, std::string(band_name) + " needs more than " +
                                              std::to_string(kBandWidth - 1) + " labels");
  }
  return base + 1 + index;
}

Rule make_rule(Label label, const VendorFilter& filter, Target target, std::string origin) {
  Rule r;
  r.label = label;
  r.static_check = filter.check;
  r.dynamic_check = filter.dynamic;
  r.target = std::move(target);
  r.origin = std::move(origin);
  return r;
}

Diagnostic ignored_option(const Line& line, const std::string& what) {
  return {Severity::kWarning, DiagCode::kIgnoredOption,
          "line " + std::to_string(line.number) + ": ignored " + what,
          std::nullopt,
          SourceSpan{static_cast<std::uint32_t>(line.number), 1,
                     static_cast<std::uint32_t>(line.text.size())}};
}

std::string origin_of(const SourceLine& source) {
  return "line " + std::to_string(source.line) + ": " + source.text;
}

}  // namespace fwa::frontend
