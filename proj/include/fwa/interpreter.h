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

#ifndef FWA_INTERPRETER_H_
#define FWA_INTERPRETER_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fwa/cfg.h"
#include "fwa/policy.h"

namespace fwa {

struct Packet {
  std::uint32_t saddr = 0;
  std::uint16_t sport = 0;
  std::uint32_t daddr = 0;
  std::uint16_t dport = 0;
  std::uint8_t proto = 0;

  Value get(FieldKind f) const;
  // Throws Error(kDomainMismatch) if v exceeds the field's domain.
  void set(FieldKind f, Value v);
  // "saddr=A sport=N daddr=A dport=N proto=N"
  std::string to_string() const;

  friend bool operator==(const Packet&, const Packet&) = default;
};

// Parses the packet literal; omitted fields are 0. Throws Error(kParseError)
// or Error(kMalformedAddress).
Packet parse_packet(std::string_view text);

enum class OutcomeKind { kAccept, kDrop, kUndefined };
enum class UndefinedReason { kEndOfPolicy, kReturnWithoutCall, kStepLimit };

struct Outcome {
  OutcomeKind kind = OutcomeKind::kUndefined;
  std::optional<UndefinedReason> reason;

  // Equality that ignores why an outcome is undefined.
  bool equivalent(const Outcome& other) const { return kind == other.kind; }
  std::string to_string() const;
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

using VarStore = std::map<VarName, StoredValue>;

struct TraceStep {
  Label label = 0;
  bool matched = false;
  std::string action;
  VarStore store;  // after the step
};

struct ExecTrace {
  std::vector<TraceStep> steps;
};

struct Evaluation {
  Outcome outcome;
  ExecTrace trace;
};

// Runs the policy on one packet. The default step limit is 10 * |rules|.
Evaluation evaluate(const Policy& policy, const Packet& packet,
                    std::optional<std::size_t> step_limit = std::nullopt);

inline constexpr std::uint64_t kDefaultSampleSeed = 0x5eed'f1ea'2026ull;

struct PacketSample {
  std::vector<Packet> packets;
  // Size of the full cross product before truncation.
  std::uint64_t population = 0;
  std::uint64_t seed = kDefaultSampleSeed;
  bool truncated = false;
};

// Per field: the minimum of every cell plus the smallest value outside all
// cells (0 when the field has no cells). The cross product is truncated to
// `budget` packets by seeded random selection.
PacketSample sample_packets(const StaticVarCatalog& catalog, std::size_t budget,
                            std::uint64_t seed = kDefaultSampleSeed);

// Representative values used by sample_packets for one field.
std::vector<Value> field_representatives(const FieldCatalog& field);

struct Divergence {
  Packet packet;
  Outcome left;
  Outcome right;
};

std::vector<Divergence> differential_check(const Policy& p, const Policy& q,
                                           std::span<const Packet> packets);

}  // namespace fwa

#endif  // FWA_INTERPRETER_H_
