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

#ifndef PCSP_RELSTRUCT_HPP
#define PCSP_RELSTRUCT_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace pcsp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

using Tuple = std::vector<int>;

// Tuple set; always kept lexicographically sorted and duplicate-free.
using Relation = std::vector<Tuple>;

struct Signature {
  struct Entry {
    std::string name;
    int arity = 0;
    bool operator==(const Entry&) const = default;
  };
  std::vector<Entry> rels;
  bool operator==(const Signature&) const = default;
};

/// A finite relational structure over the domain {0, ..., domain_size-1}.
/// Relations are stored per signature entry, each as a sorted tuple set.
/// Structures are immutable by convention after construction; every operation
/// in this header is pure.
struct Structure {
  int domain_size = 0;
  Signature sig;
  std::vector<Relation> relations;
  bool operator==(const Structure&) const = default;
};

/// A total map {0..source_size-1} -> {0..target_size-1}.
struct DomainMap {
  int source_size = 0;
  int target_size = 0;
  std::vector<int> values;
  bool operator==(const DomainMap&) const = default;
};

// Sorts and deduplicates every relation. Throws Error if a tuple has the
// wrong arity or an out-of-range entry, or if the signature is malformed.
Structure make_structure(int domain_size, Signature sig,
                         std::vector<Relation> relations);

Relation normalize_relation(Relation rel);
bool relation_contains(const Relation& rel, const Tuple& t);

DomainMap identity_map(int size);
DomainMap constant_map(int source_size, int target_size, int value);

// outer(inner(x)); inner.target_size must equal outer.source_size.
DomainMap compose(const DomainMap& outer, const DomainMap& inner);

Tuple apply_to_tuple(const DomainMap& f, const Tuple& t);

// Image structure: each relation becomes {f(t) : t in R}, duplicates
// collapsed. Requires f.source_size == s.domain_size.
Structure apply_map(const DomainMap& f, const Structure& s);

struct InducedSubstructure {
  // Domain relabeled to 0..|subset|-1 preserving element order.
  Structure structure;
  // Inclusion of the relabeled domain back into the original one.
  DomainMap embedding;
};

// Keeps exactly the tuples of s lying inside subset. subset must be a
// nonempty set of domain elements; duplicates in it are collapsed.
InducedSubstructure induced_substructure(const Structure& s,
                                         const std::vector<int>& subset);

// Empty iff all Structure invariants hold. Violations are returned as data,
// one human-readable line each, never thrown.
std::vector<std::string> validate(const Structure& s);

// Text format, one structure per document ('#' starts a comment line):
//   domain <m>
//   rel <name> <arity>
//   <e1> ... <earity>        (one tuple per line)
//   end
// parse_structure throws ParseError with a 1-based line number on syntax
// errors, arity mismatches, out-of-range entries and duplicate tuples.
Structure parse_structure(const std::string& text);

// Canonical form: relations in signature order, tuples lexicographic.
// parse_structure(serialize_structure(s)) == s for every valid s.
std::string serialize_structure(const Structure& s);

}  // namespace pcsp

#endif  // PCSP_RELSTRUCT_HPP
