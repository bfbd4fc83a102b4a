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

#include "fwa/frontends.h"

#include <string>

namespace fwa {

std::string_view platform_name(Platform p) {
  switch (p) {
    case Platform::kNetfilter: return "netfilter";
    case Platform::kPf: return "pf";
    case Platform::kIpfw: return "ipfw";
    case Platform::kIpfilter: return "ipfilter";
  }
  return "?";
}

std::optional<Platform> platform_from_name(std::string_view name) {
  for (Platform p : {Platform::kNetfilter, Platform::kPf, Platform::kIpfw, Platform::kIpfilter}) {
    if (platform_name(p) == name) return p;
  }
  if (name == "iptables") return Platform::kNetfilter;
  if (name == "ipf") return Platform::kIpfilter;
  return std::nullopt;
}

std::optional<Platform> platform_from_extension(std::string_view path) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() && path.substr(path.size() - suffix.size()) == suffix;
  };
  if (ends_with(".nft-s")) return Platform::kNetfilter;
  if (ends_with(".pf-s")) return Platform::kPf;
  if (ends_with(".ipfw-s")) return Platform::kIpfw;
  if (ends_with(".ipf-s")) return Platform::kIpfilter;
  return std::nullopt;
}

Translation translate(Platform platform, std::string_view text, const TranslateOptions& options) {
  switch (platform) {
    case Platform::kNetfilter: return translate_netfilter(parse_netfilter(text), options);
    case Platform::kPf: return translate_pf(parse_pf(text));
    case Platform::kIpfw: return translate_ipfw(parse_ipfw(text), options);
    case Platform::kIpfilter: return translate_ipfilter(parse_ipfilter(text));
  }
  return {};
}

}  // namespace fwa
