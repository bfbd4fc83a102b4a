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

#ifndef FWA_FRONTENDS_H_
#define FWA_FRONTENDS_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fwa/policy.h"

namespace fwa {

enum class Platform { kNetfilter, kPf, kIpfw, kIpfilter };

std::string_view platform_name(Platform p);
// "netfilter", "pf", "ipfw", "ipfilter".
std::optional<Platform> platform_from_name(std::string_view name);
// ".nft-s", ".pf-s", ".ipfw-s", ".ipf-s".
std::optional<Platform> platform_from_extension(std::string_view path);

// Width of a label band; band i covers [base + 1, base + 999].
inline constexpr Label kBandWidth = 1000;
// Hoisted PF anchors and IPFilter groups start above the epilogue.
inline constexpr Label kHoistedBase = 66000;
inline constexpr Label kEpilogueDropLabel = 65534;
inline constexpr Label kEpilogueAcceptLabel = 65535;
inline constexpr Label kIpfwDefaultLabel = 65536;

// The filtering part of a vendor rule, already in IR terms.
struct VendorFilter {
  StaticCheck check;
  std::optional<DynamicCheck> dynamic;
};

struct SourceLine {
  std::size_t line = 0;
  std::string text;
};

// --- Netfilter -------------------------------------------------------------

enum class NfTarget { kAccept, kDrop, kReturn, kJump, kGoto, kSetMark };

struct NfRule {
  VendorFilter filter;
  NfTarget target = NfTarget::kAccept;
  std::string chain;      // kJump, kGoto
  std::uint64_t mark = 0;  // kSetMark
  SourceLine source;
};

struct NfChain {
  std::string name;
  bool builtin = false;
  // Default policy of a builtin chain; ACCEPT when never set.
  bool policy_accept = true;
  std::vector<NfRule> rules;
};

struct NetfilterPolicy {
  // Declaration order.
  std::vector<NfChain> chains;
  std::vector<Diagnostic> warnings;
};

// --- PF --------------------------------------------------------------------

enum class PfAction { kPass, kBlock, kMatch, kAnchorCall, kAnchorBlock };

struct PfRule {
  PfAction action = PfAction::kPass;
  bool quick = false;
  VendorFilter filter;
  std::optional<std::string> tag;
  // kAnchorCall: anchor path as written; kAnchorBlock: index into rulesets.
  std::string anchor;
  std::size_t block = 0;
  SourceLine source;
};

struct PfRuleset {
  std::string path;  // "" for the main ruleset
  std::vector<PfRule> rules;
};

struct PfPolicy {
  // rulesets[0] is the main ruleset; inline anchors follow in definition order.
  std::vector<PfRuleset> rulesets;
  std::vector<Diagnostic> warnings;
};

// --- IPFW ------------------------------------------------------------------

enum class IpfwAction { kAllow, kDeny, kSkipTo, kTag, kUntag };

struct IpfwRule {
  std::uint32_t number = 0;
  unsigned set = 0;
  IpfwAction action = IpfwAction::kAllow;
  std::uint32_t argument = 0;  // skipto target or tag number
  VendorFilter filter;
  SourceLine source;
};

struct IpfwPolicy {
  std::vector<IpfwRule> rules;
  std::vector<Diagnostic> warnings;
};

// --- IPFilter --------------------------------------------------------------

enum class IpfAction { kPass, kBlock, kSkip };

struct IpfRule {
  IpfAction action = IpfAction::kPass;
  unsigned skip = 0;
  bool quick = false;
  std::optional<std::uint32_t> head;
  std::uint32_t group = 0;
  VendorFilter filter;
  SourceLine source;
};

struct IpfilterPolicy {
  std::vector<IpfRule> rules;
  std::vector<Diagnostic> warnings;
};

// ---------------------------------------------------------------------------

struct TranslateOptions {
  // Netfilter: chain where evaluation starts (default INPUT, else the first
  // builtin chain).
  std::string entry_chain;
  // IPFW: enabled sets; all sets when unset. Set 31 is always enabled.
  std::optional<std::set<unsigned>> ipfw_sets;
};

struct Translation {
  Policy policy;
  // Ignored options and omitted chains.
  std::vector<Diagnostic> warnings;
};

// Parsers throw Error(kParseError) with the line number, or
// Error(kWrongPlatform) when the text looks like another platform's.
NetfilterPolicy parse_netfilter(std::string_view text);
PfPolicy parse_pf(std::string_view text);
IpfwPolicy parse_ipfw(std::string_view text);
IpfilterPolicy parse_ipfilter(std::string_view text);

// Throws Error(kLoopDetected, kUnknownChain, kBandOverflow).
Translation translate_netfilter(const NetfilterPolicy& v, const TranslateOptions& options = {});
// Throws Error(kUnknownAnchor, kLabelCollision, kBandOverflow).
Translation translate_pf(const PfPolicy& v);
// Throws Error(kBackwardSkipTo).
Translation translate_ipfw(const IpfwPolicy& v, const TranslateOptions& options = {});
// Throws Error(kDanglingGroup, kSkipPastEnd, kBandOverflow).
Translation translate_ipfilter(const IpfilterPolicy& v);

// Parse and translate in one step.
Translation translate(Platform platform, std::string_view text,
                      const TranslateOptions& options = {});

}  // namespace fwa

#endif  // FWA_FRONTENDS_H_
