// Copyright 2026 The pcsp Authors
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

#ifndef PCSP_HOMSEARCH_HPP
#define PCSP_HOMSEARCH_HPP

#include <chrono>
#include <optional>
#include <vector>

#include "pcsp/relstruct.hpp"

namespace pcsp {

// Thrown when a search exceeds its node budget. Running out of budget is
// never reported as "no homomorphism".
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(long long budget)
      : Error("search node budget exceeded (" + std::to_string(budget) + ")") {}
  explicit BudgetExceeded(const std::string& message) : Error(message) {}
};

inline constexpr long long kDefaultNodeBudget = 50'000'000;

struct SearchStats {
  long long nodes_expanded = 0;
  long long propagation_calls = 0;
  std::chrono::microseconds elapsed{0};
};

// True iff f maps every tuple of every relation of x into the corresponding
// relation of a. Throws Error on signature or size mismatch.
bool is_homomorphism(const DomainMap& f, const Structure& x,
                     const Structure& a);

// Complete backtracking search over the elements of x with generalized
// arc-consistency propagation after every assignment. Variable order is
// minimum-remaining-values with index tie-break, values ascending, so the
// result is deterministic. nullopt means provably no homomorphism exists.
std::optional<DomainMap> find_homomorphism(
    const Structure& x, const Structure& a, SearchStats* stats = nullptr,
    long long node_budget = kDefaultNodeBudget);

// First `limit` homomorphisms in lexicographic order of their value arrays
// (static variable order); the list is complete when fewer exist.
std::vector<DomainMap> enumerate_homomorphisms(
    const Structure& x, const Structure& a, long long limit,
    SearchStats* stats = nullptr, long long node_budget = kDefaultNodeBudget);

bool csp_decide(const Structure& x, const Structure& a,
                long long node_budget = kDefaultNodeBudget);

}  // namespace pcsp

#endif  // PCSP_HOMSEARCH_HPP
