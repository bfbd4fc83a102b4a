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

#include "fwa/net.h"

#include <charconv>
#include <string>

#include "fwa/error.h"

namespace fwa {
namespace {

std::uint32_t prefix_mask(unsigned prefix_len) {
  if (prefix_len == 0) return 0;
  return ~std::uint32_t{0} << (32 - prefix_len);
}

}  // namespace

std::string_view field_name(FieldKind f) {
  switch (f) {
    case FieldKind::kSaddr: return "saddr";
    case FieldKind::kSport: return "sport";
    case FieldKind::kDaddr: return "daddr";
    case FieldKind::kDport: return "dport";
    case FieldKind::kProto: return "proto";
  }
  return "?";
}

std::optional<FieldKind> field_from_name(std::string_view name) {
  for (FieldKind f : kAllFields) {
    if (field_name(f) == name) return f;
  }
  return std::nullopt;
}

std::string IPv4Value::to_string() const {
  return std::to_string(value >> 24) + "." + std::to_string((value >> 16) & 0xFF) +
         "." + std::to_string((value >> 8) & 0xFF) + "." +
         std::to_string(value & 0xFF);
}

IPv4Value parse_dotted_quad(std::string_view text) {
  auto fail = [text]() {
    return Error(ErrorCode::kMalformedAddress,
                 "malformed IPv4 address '" + std::string(text) + "'");
  };
  std::uint32_t value = 0;
  int octets = 0;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = text.find('.', pos);
    std::string_view part =
        text.substr(pos, end == std::string_view::npos ? end : end - pos);
    if (part.empty() || part.size() > 3) throw fail();
    unsigned octet = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), octet);
    if (ec != std::errc{} || ptr != part.data() + part.size() || octet > 255) {
      throw fail();
    }
    value = (value << 8) | octet;
    ++octets;
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  if (octets != 4) throw fail();
  return IPv4Value{value};
}

Interval cidr_to_interval(IPv4Value addr, unsigned prefix_len) {
  if (prefix_len > 32) {
    throw Error(ErrorCode::kMalformedPrefix,
                "prefix length " + std::to_string(prefix_len) + " exceeds 32");
  }
  const std::uint32_t mask = prefix_mask(prefix_len);
  const std::uint32_t lo = addr.value & mask;
  const std::uint32_t hi = lo | ~mask;
  return Interval::closed(lo, hi, domain_max(FieldKind::kSaddr));
}

std::optional<unsigned> prefix_length_of(IPv4Value mask) {
  for (unsigned len = 0; len <= 32; ++len) {
    if (prefix_mask(len) == mask.value) return len;
  }
  return std::nullopt;
}

Interval netmask_to_interval(IPv4Value addr, IPv4Value mask) {
  auto len = prefix_length_of(mask);
  if (!len) {
    throw Error(ErrorCode::kNonContiguousMask,
                "netmask " + mask.to_string() + " is not contiguous");
  }
  return cidr_to_interval(addr, *len);
}

std::string format_field_value(FieldKind f, Value v) {
  if (is_address(f)) return IPv4Value{static_cast<std::uint32_t>(v)}.to_string();
  return std::to_string(v);
}

}  // namespace fwa
