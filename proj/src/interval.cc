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

#include "fwa/interval.h"

#include <algorithm>
#include <string>

#include "fwa/error.h"

namespace fwa {
namespace {

// Raw bounds may describe an empty set; Interval never does.
struct RawBounds {
  Boundary lo;
  Boundary hi;
};

bool holds_integer(const RawBounds& b, Value domain_max) {
  if (b.lo.endpoint > domain_max || b.hi.endpoint > domain_max) return false;
  Value first = b.lo.endpoint;
  if (!b.lo.included) {
    if (first == domain_max) return false;
    ++first;
  }
  Value last = b.hi.endpoint;
  if (!b.hi.included) {
    if (last == 0) return false;
    --last;
  }
  return first <= last;
}

// Tighter of two lower bounds (the larger start; excluded wins a tie).
Boundary max_lower(const Boundary& a, const Boundary& b) {
  if (a.endpoint != b.endpoint) return a.endpoint > b.endpoint ? a : b;
  return a.included ? b : a;
}

// Tighter of two upper bounds.
Boundary min_upper(const Boundary& a, const Boundary& b) {
  if (a.endpoint != b.endpoint) return a.endpoint < b.endpoint ? a : b;
  return a.included ? b : a;
}

// Real-line emptiness, used to decide whether a cut lands inside.
bool real_empty(const RawBounds& b) {
  if (b.lo.endpoint != b.hi.endpoint) return b.lo.endpoint > b.hi.endpoint;
  return !(b.lo.included && b.hi.included);
}

Boundary lower(Value v, bool included) { return {v, included, true}; }
Boundary upper(Value v, bool included) { return {v, included, false}; }

}  // namespace

Interval::Interval(Boundary lo, Boundary hi, Value domain_max)
    : lo_(lo), hi_(hi), domain_max_(domain_max) {
  lo_.is_lower = true;
  hi_.is_lower = false;
  if (lo_.endpoint > domain_max_ || hi_.endpoint > domain_max_) {
    throw Error(ErrorCode::kDomainMismatch,
                "interval " + to_string() + " exceeds domain maximum " +
                    std::to_string(domain_max_));
  }
  if (!holds_integer({lo_, hi_}, domain_max_)) {
    throw Error(ErrorCode::kEmptyInterval,
                "interval " + to_string() + " contains no integer");
  }
}

Interval Interval::closed(Value first, Value last, Value domain_max) {
  return Interval(lower(first, true), upper(last, true), domain_max);
}

std::optional<Interval> Interval::make(Boundary lo, Boundary hi,
                                       Value domain_max) {
  if (!holds_integer({lo, hi}, domain_max)) return std::nullopt;
  return Interval(lo, hi, domain_max);
}

Value Interval::first() const {
  return lo_.included ? lo_.endpoint : lo_.endpoint + 1;
}

Value Interval::last() const {
  return hi_.included ? hi_.endpoint : hi_.endpoint - 1;
}

std::string Interval::to_string() const {
  std::string out;
  out += lo_.included ? '[' : '(';
  out += std::to_string(lo_.endpoint);
  out += ',';
  out += std::to_string(hi_.endpoint);
  out += hi_.included ? ']' : ')';
  return out;
}

std::vector<Boundary> boundaries_of(std::span<const Interval> intervals) {
  std::vector<Boundary> out;
  auto add = [&out](const Boundary& b) {
    if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(b);
  };
  for (const Interval& i : intervals) {
    add(i.lo());
    add(i.hi());
  }
  return out;
}

std::vector<Interval> split(const Interval& interval,
                            const Boundary& boundary) {
  const Value p = boundary.endpoint;
  std::vector<RawBounds> pieces;
  if (boundary.included && boundary.is_lower) {
    pieces = {{interval.lo(), upper(p, false)}, {lower(p, true), interval.hi()}};
  } else if (boundary.included) {
    pieces = {{interval.lo(), upper(p, true)}, {lower(p, false), interval.hi()}};
  } else {
    pieces = {{interval.lo(), upper(p, false)},
              {lower(p, true), upper(p, true)},
              {lower(p, false), interval.hi()}};
  }

  std::vector<Interval> out;
  for (RawBounds piece : pieces) {
    piece.lo = max_lower(piece.lo, interval.lo());
    piece.hi = min_upper(piece.hi, interval.hi());
    if (real_empty(piece)) continue;
    if (auto part = Interval::make(piece.lo, piece.hi, interval.domain_max())) {
      out.push_back(*part);
    }
  }
  if (out.size() <= 1) return {interval};
  return out;
}

MCSIResult mcsi(std::span<const Interval> originals) {
  MCSIResult result;
  if (originals.empty()) return result;

  const Value domain_max = originals.front().domain_max();
  std::vector<Interval> work;
  work.reserve(originals.size());
  for (const Interval& i : originals) {
    if (i.domain_max() != domain_max) {
      throw Error(ErrorCode::kDomainMismatch,
                  "mcsi over intervals of different domains");
    }
    work.push_back(i.canonical());
  }

  const std::vector<Boundary> bounds = boundaries_of(work);
  const std::size_t max_passes = 2 * bounds.size();
  bool changed = true;
  for (std::size_t pass = 0; changed; ++pass) {
    if (pass > max_passes) {
      throw Error(ErrorCode::kInternal, "mcsi split loop did not converge");
    }
    changed = false;
    std::vector<Interval> next;
    next.reserve(work.size());
    for (const Interval& i : work) {
      bool did_split = false;
      for (const Boundary& b : bounds) {
        std::vector<Interval> parts = split(i, b);
        if (parts.size() > 1) {
          for (const Interval& part : parts) next.push_back(part.canonical());
          did_split = true;
          break;
        }
      }
      if (!did_split) next.push_back(i);
      changed = changed || did_split;
    }
    work = std::move(next);
  }

  std::sort(work.begin(), work.end());
  work.erase(std::unique(work.begin(), work.end()), work.end());
  for (std::size_t k = 1; k < work.size(); ++k) {
    if (work[k - 1].last() >= work[k].first()) {
      throw Error(ErrorCode::kInternal, "mcsi produced overlapping cells");
    }
  }
  result.cells = std::move(work);

  for (const Interval& original : originals) {
    const Interval key = original.canonical();
    auto seen = std::find_if(
        result.decomposition.begin(), result.decomposition.end(),
        [&key](const auto& entry) { return entry.first == key; });
    if (seen != result.decomposition.end()) continue;
    std::vector<std::size_t> indices;
    for (std::size_t k = 0; k < result.cells.size(); ++k) {
      if (key.contains(result.cells[k])) indices.push_back(k);
    }
    result.decomposition.emplace_back(key, std::move(indices));
  }
  return result;
}

const std::vector<std::size_t>& decompose(const Interval& interval,
                                          const MCSIResult& result) {
  for (const auto& [original, indices] : result.decomposition) {
    if (original == interval) return indices;
  }
  throw Error(ErrorCode::kNotAnOriginal,
              "interval " + interval.to_string() + " is not an original");
}

}  // namespace fwa
