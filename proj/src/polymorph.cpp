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

#include "pcsp/polymorph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace pcsp {

namespace {

// Hard cap on materialized table entries.
constexpr long long kMaxTableEntries = 1LL << 24;

long long table_entries(int domain_size, int arity) {
  long long n = 1;
  for (int i = 0; i < arity; ++i) {
    n *= domain_size;
    if (n > kMaxTableEntries) throw Error("operation table too large");
  }
  return n;
}

// Advances a fixed-length digit vector in ascending mixed-radix order
// (last digit fastest); false once it wraps around to all zeros.
bool next_digits(std::vector<int>& digits, int base) {
  for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
    if (++digits[i] < base) return true;
    digits[i] = 0;
  }
  return false;
}

void check_op(const OperationTable& op) {
  if (op.domain_size < 1 || op.target_size < 1 || op.arity < 1)
    throw Error("malformed operation table");
  if (static_cast<long long>(op.values.size()) !=
      table_entries(op.domain_size, op.arity))
    throw Error("operation table has wrong number of entries");
}

void check_endo(const OperationTable& op) {
  check_op(op);
  if (op.domain_size != op.target_size)
    throw Error("operation must map its domain to itself");
}

std::optional<PreservationViolation> violation_between(
    const OperationTable& op, const Structure& source,
    const Structure& target) {
  if (source.sig != target.sig) throw Error("signature mismatch");
  if (op.domain_size != source.domain_size ||
      op.target_size != target.domain_size)
    throw Error("operation does not match structure domains");

  const int k = op.arity;
  std::vector<int> args(k);
  for (size_t r = 0; r < source.relations.size(); ++r) {
    const Relation& rel = source.relations[r];
    if (rel.empty()) continue;
    const int arity = source.sig.rels[r].arity;
    std::vector<int> combo(k, 0);
    do {
      Tuple image(arity);
      for (int p = 0; p < arity; ++p) {
        for (int j = 0; j < k; ++j) args[j] = rel[combo[j]][p];
        image[p] = eval(op, args);
      }
      if (!relation_contains(target.relations[r], image)) {
        PreservationViolation v;
        v.rel_index = static_cast<int>(r);
        for (int j = 0; j < k; ++j) v.args.push_back(rel[combo[j]]);
        v.image = std::move(image);
        return v;
      }
    } while (next_digits(combo, static_cast<int>(rel.size())));
  }
  return std::nullopt;
}

}  // namespace

int eval(const OperationTable& op, std::span<const int> args) {
  if (static_cast<int>(args.size()) != op.arity)
    throw Error("eval: wrong argument count");
  long long index = 0;
  for (int a : args) {
    if (a < 0 || a >= op.domain_size) throw Error("eval: argument out of range");
    index = index * op.domain_size + a;
  }
  return op.values[index];
}

OperationTable make_operation(
    int domain_size, int target_size, int arity,
    const std::function<int(std::span<const int>)>& fn) {
  if (domain_size < 1 || target_size < 1 || arity < 1)
    throw Error("make_operation: bad dimensions");
  long long entries = table_entries(domain_size, arity);
  OperationTable op{domain_size, target_size, arity, {}};
  op.values.reserve(entries);
  std::vector<int> args(arity, 0);
  do {
    int v = fn(args);
    if (v < 0 || v >= target_size) throw Error("make_operation: value out of range");
    op.values.push_back(v);
  } while (next_digits(args, domain_size));
  return op;
}

OperationTable projection_table(int domain_size, int arity, int index) {
  if (index < 0 || index >= arity) throw Error("projection index out of range");
  return make_operation(domain_size, domain_size, arity,
                        [index](std::span<const int> a) { return a[index]; });
}

OperationTable constant_table(int domain_size, int value) {
  if (value < 0 || value >= domain_size) throw Error("constant out of range");
  return make_operation(domain_size, domain_size, 1,
                        [value](std::span<const int>) { return value; });
}

OperationTable meet_table() {
  return make_operation(2, 2, 2,
                        [](std::span<const int> a) { return a[0] & a[1]; });
}

OperationTable join_table() {
  return make_operation(2, 2, 2,
                        [](std::span<const int> a) { return a[0] | a[1]; });
}

OperationTable minority_table() {
  return make_operation(
      2, 2, 3, [](std::span<const int> a) { return a[0] ^ a[1] ^ a[2]; });
}

OperationTable majority_table() {
  return make_operation(2, 2, 3, [](std::span<const int> a) {
    return (a[0] + a[1] + a[2]) >= 2 ? 1 : 0;
  });
}

std::optional<PreservationViolation> find_violation(const OperationTable& op,
                                                    const Structure& c) {
  check_endo(op);
  return violation_between(op, c, c);
}

bool is_polymorphism(const OperationTable& op, const Structure& c) {
  return !find_violation(op, c).has_value();
}

std::optional<PreservationViolation> find_violation_pair(
    const OperationTable& op, const Structure& a, const Structure& b) {
  check_op(op);
  return violation_between(op, a, b);
}

bool is_polymorphism_pair(const OperationTable& op, const Structure& a,
                          const Structure& b) {
  return !find_violation_pair(op, a, b).has_value();
}

std::vector<Tuple> close_under(const OperationTable& op,
                               const std::vector<Tuple>& tuples,
                               int tuple_arity) {
  check_endo(op);
  if (tuple_arity < 1) throw Error("close_under: arity must be >= 1");
  std::set<Tuple> closed;
  for (const auto& t : tuples) {
    if (static_cast<int>(t.size()) != tuple_arity)
      throw Error("close_under: tuple arity mismatch");
    for (int v : t)
      if (v < 0 || v >= op.domain_size)
        throw Error("close_under: tuple entry out of range");
    closed.insert(t);
  }

  const int k = op.arity;
  std::vector<int> args(k);
  bool grew = !closed.empty();
  while (grew) {
    grew = false;
    std::vector<Tuple> snapshot(closed.begin(), closed.end());
    std::vector<int> combo(k, 0);
    do {
      Tuple image(tuple_arity);
      for (int p = 0; p < tuple_arity; ++p) {
        for (int j = 0; j < k; ++j) args[j] = snapshot[combo[j]][p];
        image[p] = eval(op, args);
      }
      if (closed.insert(std::move(image)).second) grew = true;
    } while (next_digits(combo, static_cast<int>(snapshot.size())));
  }
  return {closed.begin(), closed.end()};
}

bool is_conservative(const OperationTable& op) {
  check_endo(op);
  std::vector<int> args(op.arity, 0);
  size_t index = 0;
  do {
    int v = op.values[index++];
    if (std::find(args.begin(), args.end(), v) == args.end()) return false;
  } while (next_digits(args, op.domain_size));
  return true;
}

OperationFlags classify_operation(const OperationTable& op) {
  check_endo(op);
  OperationFlags flags;
  flags.constant = std::all_of(op.values.begin(), op.values.end(),
                               [&](int v) { return v == op.values[0]; });

  const int m = op.domain_size;
  auto at2 = [&](int x, int y) { return op.values[x * m + y]; };
  auto at3 = [&](int x, int y, int z) { return op.values[(x * m + y) * m + z]; };

  if (op.arity == 2) {
    flags.semilattice = true;
    for (int x = 0; x < m && flags.semilattice; ++x) {
      if (at2(x, x) != x) flags.semilattice = false;
      for (int y = 0; y < m && flags.semilattice; ++y) {
        if (at2(x, y) != at2(y, x)) flags.semilattice = false;
        for (int z = 0; z < m && flags.semilattice; ++z)
          if (at2(at2(x, y), z) != at2(x, at2(y, z))) flags.semilattice = false;
      }
    }
  }
  if (op.arity == 3) {
    flags.majority = true;
    flags.minority = true;
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) {
        if (at3(x, x, y) != x || at3(x, y, x) != x || at3(y, x, x) != x)
          flags.majority = false;
        if (at3(x, x, y) != y || at3(x, y, x) != y || at3(y, x, x) != y)
          flags.minority = false;
      }
  }
  return flags;
}

std::optional<OperationTable> restrict_operation(const OperationTable& op,
                                                 const std::vector<int>& subset) {
  check_endo(op);
  std::set<int> elements(subset.begin(), subset.end());
  if (elements.empty()) throw Error("restrict_operation: empty subset");
  for (int e : elements)
    if (e < 0 || e >= op.domain_size)
      throw Error("restrict_operation: element out of range");

  std::vector<int> old_of_new(elements.begin(), elements.end());
  std::vector<int> new_of_old(op.domain_size, -1);
  for (size_t i = 0; i < old_of_new.size(); ++i) new_of_old[old_of_new[i]] = i;

  const int size = static_cast<int>(old_of_new.size());
  OperationTable restricted{size, size, op.arity, {}};
  restricted.values.reserve(table_entries(size, op.arity));

  std::vector<int> digits(op.arity, 0);
  std::vector<int> args(op.arity);
  do {
    for (int j = 0; j < op.arity; ++j) args[j] = old_of_new[digits[j]];
    int v = eval(op, args);
    if (new_of_old[v] < 0) return std::nullopt;
    restricted.values.push_back(new_of_old[v]);
  } while (next_digits(digits, size));
  return restricted;
}

OperationTable schaefer_table(SchaeferClass cls) {
  switch (cls) {
    case SchaeferClass::Const0:
      return constant_table(2, 0);
    case SchaeferClass::Const1:
      return constant_table(2, 1);
    case SchaeferClass::Meet:
      return meet_table();
    case SchaeferClass::Join:
      return join_table();
    case SchaeferClass::Minority:
      return minority_table();
    case SchaeferClass::Majority:
      return majority_table();
  }
  throw Error("unknown Schaefer class");
}

std::string_view schaefer_class_name(SchaeferClass cls) {
  switch (cls) {
    case SchaeferClass::Const0:
      return "const0";
    case SchaeferClass::Const1:
      return "const1";
    case SchaeferClass::Meet:
      return "meet";
    case SchaeferClass::Join:
      return "join";
    case SchaeferClass::Minority:
      return "minority";
    case SchaeferClass::Majority:
      return "majority";
  }
  throw Error("unknown Schaefer class");
}

std::optional<SchaeferClass> schaefer_class_from_name(std::string_view name) {
  for (SchaeferClass cls : kSchaeferClasses)
    if (schaefer_class_name(cls) == name) return cls;
  return std::nullopt;
}

bool SchaeferReport::has(SchaeferClass cls) const {
  return std::find(present.begin(), present.end(), cls) != present.end();
}

SchaeferReport schaefer_classify(const Structure& s) {
  if (s.domain_size != 2)
    throw Error("schaefer_classify: requires a Boolean domain");
  SchaeferReport report;
  for (SchaeferClass cls : kSchaeferClasses) {
    auto violation = find_violation(schaefer_table(cls), s);
    if (violation)
      report.violations.emplace_back(cls, std::move(*violation));
    else
      report.present.push_back(cls);
  }
  return report;
}

BlockPartition coarsest_block_partition(const OperationTable& op) {
  check_op(op);
  const int k = op.arity;
  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };

  std::vector<int> args(op.arity);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      if (find(i) == find(j)) continue;
      bool invariant = true;
      std::fill(args.begin(), args.end(), 0);
      do {
        std::swap(args[i], args[j]);
        int swapped = eval(op, args);
        std::swap(args[i], args[j]);
        if (eval(op, args) != swapped) {
          invariant = false;
          break;
        }
      } while (next_digits(args, op.domain_size));
      if (invariant) parent[find(i)] = find(j);
    }

  BlockPartition partition{k, {}};
  std::vector<int> block_of_root(k, -1);
  for (int i = 0; i < k; ++i) {
    int root = find(i);
    if (block_of_root[root] < 0) {
      block_of_root[root] = static_cast<int>(partition.blocks.size());
      partition.blocks.emplace_back();
    }
    partition.blocks[block_of_root[root]].push_back(i);
  }
  return partition;
}

int width(const OperationTable& op) {
  BlockPartition partition = coarsest_block_partition(op);
  int smallest = op.arity;
  for (const auto& block : partition.blocks)
    smallest = std::min(smallest, static_cast<int>(block.size()));
  return smallest;
}

std::pair<std::string, OperationTable> parse_operation(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  auto next_tokens = [&](std::vector<std::string>& tokens) -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      std::istringstream ls(line);
      tokens.clear();
      std::string tok;
      while (ls >> tok) {
        if (tok[0] == '#') break;
        tokens.push_back(tok);
      }
      if (!tokens.empty()) return true;
    }
    return false;
  };

  auto parse_int = [&](const std::string& tok) -> int {
    size_t pos = 0;
    int value;
    try {
      value = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      throw ParseError(lineno, "expected integer, got '" + tok + "'");
    }
    if (pos != tok.size())
      throw ParseError(lineno, "expected integer, got '" + tok + "'");
    return value;
  };

  std::vector<std::string> tokens;
  if (!next_tokens(tokens)) throw ParseError(lineno, "empty document");
  if (tokens.size() != 5 || tokens[0] != "op")
    throw ParseError(lineno, "expected 'op <name> <m> <m\\'> <k>'");
  std::string name = tokens[1];
  OperationTable op;
  op.domain_size = parse_int(tokens[2]);
  op.target_size = parse_int(tokens[3]);
  op.arity = parse_int(tokens[4]);
  if (op.domain_size < 1 || op.target_size < 1 || op.arity < 1)
    throw ParseError(lineno, "sizes and arity must be >= 1");
  long long entries = table_entries(op.domain_size, op.arity);
  op.values.reserve(entries);

  std::vector<int> expected(op.arity, 0);
  for (long long row = 0; row < entries; ++row) {
    if (!next_tokens(tokens)) throw ParseError(lineno, "missing table row");
    if (static_cast<int>(tokens.size()) != op.arity + 1)
      throw ParseError(lineno, "expected " + std::to_string(op.arity) +
                                   " arguments and a value");
    for (int j = 0; j < op.arity; ++j)
      if (parse_int(tokens[j]) != expected[j])
        throw ParseError(lineno, "rows must be in ascending argument order");
    int value = parse_int(tokens[op.arity]);
    if (value < 0 || value >= op.target_size)
      throw ParseError(lineno, "value out of range");
    op.values.push_back(value);
    next_digits(expected, op.domain_size);
  }
  if (!next_tokens(tokens) || tokens.size() != 1 || tokens[0] != "end")
    throw ParseError(lineno, "expected 'end'");
  return {std::move(name), std::move(op)};
}

std::string serialize_operation(const std::string& name,
                                const OperationTable& op) {
  check_op(op);
  std::string out = "op " + name + " " + std::to_string(op.domain_size) + " " +
                    std::to_string(op.target_size) + " " +
                    std::to_string(op.arity) + "\n";
  std::vector<int> args(op.arity, 0);
  size_t index = 0;
  do {
    for (int a : args) out += std::to_string(a) + " ";
    out += std::to_string(op.values[index++]) + "\n";
  } while (next_digits(args, op.domain_size));
  out += "end\n";
  return out;
}

}  // namespace pcsp
