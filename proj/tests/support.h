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

#ifndef FWA_TESTS_SUPPORT_H_
#define FWA_TESTS_SUPPORT_H_

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fwa/net.h"
#include "fwa/policy.h"

namespace fwa::test {

std::string data_path(const std::string& relative);
std::string read_text(const std::string& path);
// tests/data/exampleN.fwp, parsed and validated.
Policy load_example(int n);

struct GenParams {
  std::size_t min_rules = 1;
  std::size_t max_rules = 10;
  // Distinct intervals drawn per field.
  std::size_t max_intervals = 4;
  std::vector<FieldKind> fields = {kAllFields.begin(), kAllFields.end()};
  // Values are drawn from [base, base + span] for ports/proto and from a
  // small block above 10.0.0.0 for addresses.
  Value span = 40;
  bool calls = false;
  bool dynamic_checks = true;
};

// Jumps and calls only go forward to existing labels, so evaluation always
// terminates and the policy validates without errors.
Policy random_policy(std::mt19937_64& rng, const GenParams& params);

// Independent reference for reachability and liveness: cells from
// elementary segments, one explicit graph per assignment, plain DFS.
struct OracleResult {
  std::vector<bool> if_reachable;    // per rule index
  std::vector<bool> then_reachable;  // per rule index
  std::vector<bool> return_reachable;
  // For each SetVar rule index: is the written variable live after it?
  std::map<std::size_t, bool> write_live;
  std::size_t columns = 0;
};

OracleResult brute_force(const Policy& policy, bool exact_cells);

// Replaces labels by 1, 2, 3... in order, rewriting jump/call targets, so
// that translations can be compared without depending on label bands.
Policy renumber(const Policy& policy);

}  // namespace fwa::test

#endif  // FWA_TESTS_SUPPORT_H_
