// Copyright 2026 The qpolar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace qpolar {

/// Oracle-invocation counters. One key per oracle; an application of an
/// oracle or of its adjoint increments that oracle's key by one.
class QueryLedger {
 public:
  void charge(const std::string& oracle, std::uint64_t uses = 1) {
    if (uses) counts_[oracle] += uses;
  }

  /// Add `times` copies of every counter in `per_use`.
  void charge_all(const QueryLedger& per_use, std::uint64_t times = 1) {
    for (const auto& [k, v] : per_use.counts_) charge(k, v * times);
  }

  std::uint64_t count(const std::string& oracle) const {
    auto it = counts_.find(oracle);
    return it == counts_.end() ? 0 : it->second;
  }

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (const auto& kv : counts_) t += kv.second;
    return t;
  }

  const std::map<std::string, std::uint64_t>& counts() const { return counts_; }
  bool operator==(const QueryLedger&) const = default;

 private:
  std::map<std::string, std::uint64_t> counts_;
};

}  // namespace qpolar
