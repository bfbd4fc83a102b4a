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

#ifndef FWA_NET_H_
#define FWA_NET_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "fwa/interval.h"

namespace fwa {

// The five analyzable packet fields, in column order.
enum class FieldKind : std::uint8_t { kSaddr, kSport, kDaddr, kDport, kProto };

inline constexpr std::size_t kFieldCount = 5;
inline constexpr std::array<FieldKind, kFieldCount> kAllFields = {
    FieldKind::kSaddr, FieldKind::kSport, FieldKind::kDaddr,
    FieldKind::kDport, FieldKind::kProto};

constexpr std::size_t index_of(FieldKind f) { return static_cast<std::size_t>(f); }

constexpr Value domain_max(FieldKind f) {
  switch (f) {
    case FieldKind::kSaddr:
    case FieldKind::kDaddr:
      return 0xFFFFFFFFull;
    case FieldKind::kSport:
    case FieldKind::kDport:
      return 0xFFFFull;
    case FieldKind::kProto:
      return 0xFFull;
  }
  return 0;
}

constexpr bool is_address(FieldKind f) {
  return f == FieldKind::kSaddr || f == FieldKind::kDaddr;
}

// "saddr", "sport", ...
std::string_view field_name(FieldKind f);
std::optional<FieldKind> field_from_name(std::string_view name);

struct IPv4Value {
  std::uint32_t value = 0;

  std::string to_string() const;
  friend auto operator<=>(const IPv4Value&, const IPv4Value&) = default;
};

// Four dot-separated decimal octets. Throws Error(kMalformedAddress).
IPv4Value parse_dotted_quad(std::string_view text);

// [addr & mask, (addr & mask) | ~mask]. Throws Error(kMalformedPrefix) if
// prefix_len > 32.
Interval cidr_to_interval(IPv4Value addr, unsigned prefix_len);

// Same as cidr_to_interval for the equivalent prefix. Throws
// Error(kNonContiguousMask) unless mask is contiguous high bits.
Interval netmask_to_interval(IPv4Value addr, IPv4Value mask);

// Prefix length of a contiguous mask, nullopt otherwise.
std::optional<unsigned> prefix_length_of(IPv4Value mask);

// Renders a value of the given field: dotted quad for addresses.
std::string format_field_value(FieldKind f, Value v);

}  // namespace fwa

#endif  // FWA_NET_H_
