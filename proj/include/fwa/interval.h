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

#ifndef FWA_INTERVAL_H_
#define FWA_INTERVAL_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace fwa {

using Value = std::uint64_t;

// One end of an interval: (endpoint, included, is_lower).
struct Boundary {
  Value endpoint = 0;
  bool included = true;
  bool is_lower = true;

  friend bool operator==(const Boundary&, const Boundary&) = default;
  friend auto operator<=>(const Boundary&, const Boundary&) = default;
};

// A non-empty interval over the integers [0, domain_max]. The open/closed
// flags are kept for printing; comparisons use the closed integer form.
class Interval {
 public:
  // Throws Error(kEmptyInterval) if no integer lies between the bounds and
  // Error(kDomainMismatch) if a bound exceeds domain_max.
  Interval(Boundary lo, Boundary hi, Value domain_max);

  static Interval closed(Value first, Value last, Value domain_max);
  // nullopt instead of throwing when the bounds hold no integer.
  static std::optional<Interval> make(Boundary lo, Boundary hi,
                                      Value domain_max);

  const Boundary& lo() const { return lo_; }
  const Boundary& hi() const { return hi_; }
  Value domain_max() const { return domain_max_; }

  // Smallest and largest integer member.
  Value first() const;
  Value last() const;
  Value width() const { return last() - first() + 1; }

  Interval canonical() const { return closed(first(), last(), domain_max_); }
  bool contains(Value x) const { return first() <= x && x <= last(); }
  bool contains(const Interval& other) const {
    return first() <= other.first() && other.last() <= last();
  }
  bool intersects(const Interval& other) const {
    return first() <= other.last() && other.first() <= last();
  }

  // Surface form with the original brackets, e.g. "[0,2)".
  std::string to_string() const;

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.domain_max_ == b.domain_max_ && a.first() == b.first() &&
           a.last() == b.last();
  }
  friend auto operator<=>(const Interval& a, const Interval& b) {
    return std::make_tuple(a.first(), a.last(), a.domain_max_) <=>
           std::make_tuple(b.first(), b.last(), b.domain_max_);
  }

 private:
  Boundary lo_;
  Boundary hi_;
  Value domain_max_;
};

// The minimal combining set of a family of intervals: disjoint cells whose
// union equals the union of the originals, with every original an exact
// union of cells.
struct MCSIResult {
  // Sorted by lower endpoint.
  std::vector<Interval> cells;
  // One entry per distinct original (closed form), in first-seen order.
  std::vector<std::pair<Interval, std::vector<std::size_t>>> decomposition;
};

// Both boundaries of every interval, duplicates removed, first-seen order.
std::vector<Boundary> boundaries_of(std::span<const Interval> intervals);

// Cuts `interval` at `boundary`. An included endpoint cuts in two (the side
// holding the endpoint is chosen by is_lower); an excluded endpoint cuts in
// three with a degenerate middle. Parts holding no integer are dropped, so a
// boundary outside the interval yields {interval}.
std::vector<Interval> split(const Interval& interval, const Boundary& boundary);

// Iterates split over all boundaries until no split happens. Inputs are
// canonicalized to closed integer form first. Throws Error(kDomainMismatch)
// if domains differ.
MCSIResult mcsi(std::span<const Interval> originals);

// Cell indices whose union is exactly `interval`. Throws
// Error(kNotAnOriginal) if `interval` was not one of the originals.
const std::vector<std::size_t>& decompose(const Interval& interval,
                                          const MCSIResult& result);

}  // namespace fwa

#endif  // FWA_INTERVAL_H_
