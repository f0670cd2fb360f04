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

#ifndef PCSP_SANDWICH_HPP
#define PCSP_SANDWICH_HPP

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pcsp/affine.hpp"
#include "pcsp/homsearch.hpp"
#include "pcsp/polymorph.hpp"
#include "pcsp/relstruct.hpp"

namespace pcsp {

struct SearchConfig {
  int n_max = 3;        // largest cyclic group order for the affine family
  int size_bound = 4;   // largest middle domain for the semilattice family
  long long node_budget = kDefaultNodeBudget;
};

struct AffineWitness {
  int modulus = 0;
};
struct SchaeferWitness {
  SchaeferClass cls = SchaeferClass::Const0;
};
struct SemilatticeWitness {
  OperationTable op;
};
struct MajorityWitness {
  OperationTable op;
};
using SandwichWitness =
    std::variant<AffineWitness, SchaeferWitness, SemilatticeWitness,
                 MajorityWitness>;

/// A middle structure with homomorphisms f : a -> middle and g : middle -> b
/// and a tractability witness for CSP(middle).
struct SandwichCertificate {
  Structure middle;
  DomainMap f;
  DomainMap g;
  SandwichWitness witness;
};

// Re-verifies a certificate from scratch against the outer structures:
// both homomorphisms and the witness property. Empty means valid.
std::vector<std::string> certificate_violations(const SandwichCertificate& cert,
                                                const Structure& a,
                                                const Structure& b);

// Certificate document: the middle structure in the structure text format,
// then "hom f:" / "hom g:" value lines, then one witness line:
//   witness: affine n=<n>
//   witness: schaefer class=<name>
//   witness: semilattice <m^2 table values>
//   witness: majority <m^3 table values>
std::string serialize_certificate(const SandwichCertificate& cert);
SandwichCertificate parse_certificate(const std::string& text,
                                      const Structure& a, const Structure& b);

// Finds f : a -> c and g : c -> b through the homomorphism engine.
std::optional<std::pair<DomainMap, DomainMap>> check_sandwich(
    const Structure& a, const Structure& c, const Structure& b,
    long long node_budget = kDefaultNodeBudget);

struct AffineSearchOutcome {
  std::optional<SandwichCertificate> certificate;
  int orders_searched = 0;
  long long maps_tried = 0;
};

// Searches cyclic orders n = 1..n_max ascending, and for each n every map
// f : a -> Z_n in lexicographic order of value arrays. The candidate middle
// is Z_n with each relation the affine closure of the f-image; it is
// accepted when some g into b exists. Any affine middle over Z_n contains
// such a closure relation-wise, so the closure itself is sandwiched and a
// cyclic-order-n witness cannot be missed. First hit wins.
AffineSearchOutcome find_affine_sandwich(const Structure& a,
                                         const Structure& b,
                                         const SearchConfig& cfg = {});

struct SchaeferRejection {
  DomainMap f;
  DomainMap h;
  SchaeferClass cls = SchaeferClass::Const0;
  int rel_index = 0;
  // h-image of the first middle tuple (relation order, lex) that h fails
  // to map into b.
  Tuple image;
};

struct SchaeferSearchOutcome {
  std::optional<SandwichCertificate> certificate;
  long long combos_tried = 0;
  std::vector<SchaeferRejection> rejections;  // one per failed combination

  const SchaeferRejection* rejection_for(const DomainMap& f,
                                         const DomainMap& h,
                                         SchaeferClass cls) const;
};

// Exhausts all 16 pairs of maps f, h : {0,1} -> {0,1} and all six Schaefer
// classes; the candidate middle is the class-closure of the f-image,
// accepted when h maps it into b. Absence is a genuine decision: no Boolean
// middle with any of the six polymorphisms is sandwiched by a and b.
SchaeferSearchOutcome boolean_schaefer_sandwich_search(const Structure& a,
                                                       const Structure& b);

struct FamilyRejection {
  int middle_size = 0;
  DomainMap f;
  OperationTable op;
  int rel_index = -1;
  // Lex-first closure tuple absent from b's relation, when the candidate
  // middle and b share a domain size (the identity-map probe).
  std::optional<Tuple> missing_tuple;
};

struct FamilySearchOutcome {
  std::optional<SandwichCertificate> certificate;
  long long combos_tried = 0;
  int max_size_searched = 0;
  std::vector<FamilyRejection> rejections;  // capped at kMaxRecordedRejections
};

inline constexpr size_t kMaxRecordedRejections = 64;

// Semilattice-witnessed middles of size m <= min(size_bound, |a|):
// enumerates surjective maps f : a -> {0..m-1} and every semilattice table
// on m elements, closing the f-image relation-wise. A conservative
// polymorphism restricts to the image substructure, which keeps middles of
// size <= |a| sufficient for the conservative members of the family.
FamilySearchOutcome conservative_sandwich_search(const Structure& a,
                                                 const Structure& b,
                                                 const SearchConfig& cfg = {});

// Majority-witnessed middles of size m in {1, 2} (a must be Boolean); the
// unique majority table on two elements makes exhaustion a genuine decision.
FamilySearchOutcome majority_sandwich_search(const Structure& a,
                                             const Structure& b,
                                             const SearchConfig& cfg = {});

struct FamilyReport {
  bool applicable = false;
  std::optional<int> min_size;
  bool exhausted = false;     // the family's bounds were fully searched
  std::string bound_note;
};

struct MinSandwichReport {
  FamilyReport affine;
  FamilyReport schaefer;
  FamilyReport semilattice;
  FamilyReport majority;
  std::optional<int> overall_min;
  std::optional<SandwichCertificate> best;
};

// Runs all four family searches and reports the smallest certified middle
// per family and overall. A negative outcome only means "not found within
// the stated bounds", except for the exactly-decided Boolean families.
// Ties for `best` go to the first family in the order affine, schaefer,
// semilattice, majority.
MinSandwichReport min_sandwich_size_bounded(const Structure& a,
                                            const Structure& b,
                                            const SearchConfig& cfg = {});

}  // namespace pcsp

#endif  // PCSP_SANDWICH_HPP
