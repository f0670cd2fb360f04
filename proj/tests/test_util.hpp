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

#ifndef PCSP_TESTS_TEST_UTIL_HPP
#define PCSP_TESTS_TEST_UTIL_HPP

#include <optional>
#include <random>
#include <vector>

#include "pcsp/homsearch.hpp"
#include "pcsp/relstruct.hpp"

namespace pcsp::testutil {

inline Structure single_relation(int domain_size, int arity,
                                 std::vector<Tuple> tuples) {
  return make_structure(domain_size, Signature{{{"R", arity}}},
                        {std::move(tuples)});
}

inline bool next_digits(std::vector<int>& digits, int base) {
  for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
    if (++digits[i] < base) return true;
    digits[i] = 0;
  }
  return false;
}

// Exhaustive reference decision: tries all |a|^|x| maps in lexicographic
// order and returns the first homomorphism. Independent of the search
// engine; relies only on the definitional check.
inline std::optional<DomainMap> oracle_find_homomorphism(const Structure& x,
                                                         const Structure& a) {
  std::vector<int> values(x.domain_size, 0);
  do {
    DomainMap f{x.domain_size, a.domain_size, values};
    if (is_homomorphism(f, x, a)) return f;
  } while (next_digits(values, a.domain_size));
  return std::nullopt;
}

inline long long oracle_count_homomorphisms(const Structure& x,
                                            const Structure& a) {
  long long count = 0;
  std::vector<int> values(x.domain_size, 0);
  do {
    if (is_homomorphism(DomainMap{x.domain_size, a.domain_size, values}, x, a))
      ++count;
  } while (next_digits(values, a.domain_size));
  return count;
}

inline Tuple random_tuple(std::mt19937& rng, int arity, int domain_size) {
  std::uniform_int_distribution<int> value(0, domain_size - 1);
  Tuple t(arity);
  for (int& v : t) v = value(rng);
  return t;
}

// Random structure over a fresh signature of num_rels relations.
inline Structure random_structure(std::mt19937& rng, int domain_size,
                                  int num_rels, int max_arity,
                                  int max_tuples) {
  Signature sig;
  std::vector<Relation> relations;
  std::uniform_int_distribution<int> arity_dist(1, max_arity);
  std::uniform_int_distribution<int> count_dist(0, max_tuples);
  for (int r = 0; r < num_rels; ++r) {
    int arity = arity_dist(rng);
    sig.rels.push_back({"R" + std::to_string(r), arity});
    Relation rel;
    int count = count_dist(rng);
    for (int i = 0; i < count; ++i)
      rel.push_back(random_tuple(rng, arity, domain_size));
    relations.push_back(std::move(rel));
  }
  return make_structure(domain_size, std::move(sig), std::move(relations));
}

inline DomainMap random_map(std::mt19937& rng, int source_size,
                            int target_size) {
  std::uniform_int_distribution<int> value(0, target_size - 1);
  DomainMap f{source_size, target_size, std::vector<int>(source_size)};
  for (int& v : f.values) v = value(rng);
  return f;
}

}  // namespace pcsp::testutil

#endif  // PCSP_TESTS_TEST_UTIL_HPP
