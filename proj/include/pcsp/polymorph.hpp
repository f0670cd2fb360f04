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

#ifndef PCSP_POLYMORPH_HPP
#define PCSP_POLYMORPH_HPP

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcsp/relstruct.hpp"

namespace pcsp {

// Tables are materialized with domain_size^arity entries, so arities beyond
// this default are rejected by the constructing helpers.
inline constexpr int kDefaultMaxArity = 7;

/// A finitary operation {0..domain_size-1}^arity -> {0..target_size-1},
/// stored as an explicit value table. The row index of an argument tuple is
/// its mixed-radix value with the first argument as the most significant
/// digit. target_size == domain_size for operations on one structure;
/// they may differ for functions between two structures.
struct OperationTable {
  int domain_size = 0;
  int target_size = 0;
  int arity = 0;
  std::vector<int> values;
  bool operator==(const OperationTable&) const = default;
};

int eval(const OperationTable& op, std::span<const int> args);

// Builds a table by evaluating fn on every argument tuple.
OperationTable make_operation(int domain_size, int target_size, int arity,
                              const std::function<int(std::span<const int>)>& fn);

OperationTable projection_table(int domain_size, int arity, int index);
OperationTable constant_table(int domain_size, int value);  // unary

// The Boolean tables used by the Schaefer classification.
OperationTable meet_table();
OperationTable join_table();
OperationTable minority_table();
OperationTable majority_table();

/// One counterexample to preservation: arity-many member tuples of relation
/// rel_index whose componentwise image leaves the target relation.
struct PreservationViolation {
  int rel_index = 0;
  std::vector<Tuple> args;
  Tuple image;
};

// First violation in deterministic order (relations in signature order,
// argument combinations in odometer order over the sorted tuple list with
// the last argument varying fastest), or nullopt if op preserves c.
std::optional<PreservationViolation> find_violation(const OperationTable& op,
                                                    const Structure& c);
bool is_polymorphism(const OperationTable& op, const Structure& c);

// Same check for op : a^arity -> b; member tuples are drawn from a's
// relations and images must land in b's relations.
std::optional<PreservationViolation> find_violation_pair(
    const OperationTable& op, const Structure& a, const Structure& b);
bool is_polymorphism_pair(const OperationTable& op, const Structure& a,
                          const Structure& b);

// Least superset of tuples closed under componentwise op (fixpoint
// iteration). Requires op.domain_size == op.target_size. tuple_arity is
// needed to accept the empty set.
std::vector<Tuple> close_under(const OperationTable& op,
                               const std::vector<Tuple>& tuples,
                               int tuple_arity);

// op(a_1,...,a_k) is always one of its arguments.
bool is_conservative(const OperationTable& op);

struct OperationFlags {
  bool constant = false;
  bool semilattice = false;  // binary, idempotent, commutative, associative
  bool majority = false;     // ternary, m(x,x,y)=m(x,y,x)=m(y,x,x)=x
  bool minority = false;     // ternary, d(x,x,y)=d(x,y,x)=d(y,x,x)=y
};
OperationFlags classify_operation(const OperationTable& op);

// Restriction to a subset when the subset is closed under op, relabeled to
// 0..|subset|-1 in element order; nullopt when some value escapes.
std::optional<OperationTable> restrict_operation(const OperationTable& op,
                                                 const std::vector<int>& subset);

enum class SchaeferClass { Const0, Const1, Meet, Join, Minority, Majority };

inline constexpr std::array<SchaeferClass, 6> kSchaeferClasses = {
    SchaeferClass::Const0, SchaeferClass::Const1, SchaeferClass::Meet,
    SchaeferClass::Join,   SchaeferClass::Minority, SchaeferClass::Majority};

OperationTable schaefer_table(SchaeferClass cls);
std::string_view schaefer_class_name(SchaeferClass cls);
std::optional<SchaeferClass> schaefer_class_from_name(std::string_view name);

/// Presence of each of the six Boolean tractability witnesses, with one
/// concrete preservation violation per absent class.
struct SchaeferReport {
  std::vector<SchaeferClass> present;
  std::vector<std::pair<SchaeferClass, PreservationViolation>> violations;

  bool has(SchaeferClass cls) const;
  bool tractable() const { return !present.empty(); }
};

// Requires a Boolean (two-element) domain.
SchaeferReport schaefer_classify(const Structure& s);

struct BlockPartition {
  int arity = 0;
  // Disjoint, covering blocks of 0-based argument indices; each block
  // ascending, blocks ordered by smallest element.
  std::vector<std::vector<int>> blocks;
  bool operator==(const BlockPartition&) const = default;
};

// The unique coarsest partition for which op is block-symmetric. Blocks are
// the components of the graph with an edge {i,j} whenever op is invariant
// under transposing arguments i and j. Invariance under transpositions is
// transitive (conjugation), so components are full exchangeability classes,
// and transpositions spanning a component generate its symmetric group.
BlockPartition coarsest_block_partition(const OperationTable& op);

// Size of the smallest block of the coarsest partition.
int width(const OperationTable& op);

// Text format:
//   op <name> <m> <m'> <k>
//   <arg1> ... <argk> <value>   (m^k rows, ascending mixed-radix order)
//   end
std::pair<std::string, OperationTable> parse_operation(const std::string& text);
std::string serialize_operation(const std::string& name,
                                const OperationTable& op);

}  // namespace pcsp

#endif  // PCSP_POLYMORPH_HPP
