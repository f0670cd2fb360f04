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

#include "pcsp/relstruct.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

namespace pcsp {

namespace {

std::string tuple_to_string(const Tuple& t) {
  std::string out;
  for (size_t i = 0; i < t.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(t[i]);
  }
  return out;
}

void check_signature(const Signature& sig) {
  std::unordered_set<std::string> names;
  for (const auto& entry : sig.rels) {
    if (entry.name.empty()) throw Error("relation name must be nonempty");
    if (entry.arity < 1)
      throw Error("relation " + entry.name + ": arity must be >= 1");
    if (!names.insert(entry.name).second)
      throw Error("duplicate relation name " + entry.name);
  }
}

}  // namespace

Relation normalize_relation(Relation rel) {
  std::sort(rel.begin(), rel.end());
  rel.erase(std::unique(rel.begin(), rel.end()), rel.end());
  return rel;
}

bool relation_contains(const Relation& rel, const Tuple& t) {
  return std::binary_search(rel.begin(), rel.end(), t);
}

Structure make_structure(int domain_size, Signature sig,
                         std::vector<Relation> relations) {
  if (domain_size < 1) throw Error("domain size must be positive");
  check_signature(sig);
  if (relations.size() != sig.rels.size())
    throw Error("relation count does not match signature");
  for (size_t r = 0; r < relations.size(); ++r) {
    for (const auto& t : relations[r]) {
      if (static_cast<int>(t.size()) != sig.rels[r].arity)
        throw Error("relation " + sig.rels[r].name + ": tuple (" +
                    tuple_to_string(t) + ") has wrong arity");
      for (int v : t)
        if (v < 0 || v >= domain_size)
          throw Error("relation " + sig.rels[r].name + ": tuple (" +
                      tuple_to_string(t) + ") has out-of-range entry");
    }
    relations[r] = normalize_relation(std::move(relations[r]));
  }
  return Structure{domain_size, std::move(sig), std::move(relations)};
}

DomainMap identity_map(int size) {
  DomainMap f{size, size, std::vector<int>(size)};
  for (int i = 0; i < size; ++i) f.values[i] = i;
  return f;
}

DomainMap constant_map(int source_size, int target_size, int value) {
  if (value < 0 || value >= target_size) throw Error("constant out of range");
  return DomainMap{source_size, target_size,
                   std::vector<int>(source_size, value)};
}

DomainMap compose(const DomainMap& outer, const DomainMap& inner) {
  if (inner.target_size != outer.source_size)
    throw Error("compose: size mismatch");
  DomainMap result{inner.source_size, outer.target_size, {}};
  result.values.reserve(inner.values.size());
  for (int v : inner.values) result.values.push_back(outer.values[v]);
  return result;
}

Tuple apply_to_tuple(const DomainMap& f, const Tuple& t) {
  Tuple image;
  image.reserve(t.size());
  for (int v : t) {
    if (v < 0 || v >= f.source_size) throw Error("map applied out of range");
    image.push_back(f.values[v]);
  }
  return image;
}

Structure apply_map(const DomainMap& f, const Structure& s) {
  if (f.source_size != s.domain_size)
    throw Error("apply_map: map source does not match structure domain");
  std::vector<Relation> images;
  images.reserve(s.relations.size());
  for (const auto& rel : s.relations) {
    Relation image;
    image.reserve(rel.size());
    for (const auto& t : rel) image.push_back(apply_to_tuple(f, t));
    images.push_back(normalize_relation(std::move(image)));
  }
  return Structure{f.target_size, s.sig, std::move(images)};
}

InducedSubstructure induced_substructure(const Structure& s,
                                         const std::vector<int>& subset) {
  std::set<int> elements(subset.begin(), subset.end());
  if (elements.empty()) throw Error("induced_substructure: empty subset");
  for (int e : elements)
    if (e < 0 || e >= s.domain_size)
      throw Error("induced_substructure: element out of range");

  std::vector<int> old_of_new(elements.begin(), elements.end());
  std::vector<int> new_of_old(s.domain_size, -1);
  for (size_t i = 0; i < old_of_new.size(); ++i) new_of_old[old_of_new[i]] = i;

  std::vector<Relation> rels;
  rels.reserve(s.relations.size());
  for (const auto& rel : s.relations) {
    Relation kept;
    for (const auto& t : rel) {
      bool inside = std::all_of(t.begin(), t.end(),
                                [&](int v) { return new_of_old[v] >= 0; });
      if (!inside) continue;
      Tuple relabeled;
      relabeled.reserve(t.size());
      for (int v : t) relabeled.push_back(new_of_old[v]);
      kept.push_back(std::move(relabeled));
    }
    rels.push_back(normalize_relation(std::move(kept)));
  }
  int size = static_cast<int>(old_of_new.size());
  return InducedSubstructure{
      Structure{size, s.sig, std::move(rels)},
      DomainMap{size, s.domain_size, std::move(old_of_new)}};
}

std::vector<std::string> validate(const Structure& s) {
  std::vector<std::string> violations;
  if (s.domain_size < 1) violations.push_back("domain size must be positive");

  std::unordered_set<std::string> names;
  for (const auto& entry : s.sig.rels) {
    if (entry.name.empty()) violations.push_back("empty relation name");
    if (entry.arity < 1)
      violations.push_back("relation " + entry.name + ": arity must be >= 1");
    if (!names.insert(entry.name).second)
      violations.push_back("duplicate relation name " + entry.name);
  }
  if (s.relations.size() != s.sig.rels.size()) {
    violations.push_back("relation count does not match signature");
    return violations;
  }

  for (size_t r = 0; r < s.relations.size(); ++r) {
    const auto& name = s.sig.rels[r].name;
    const Tuple* prev = nullptr;
    for (const auto& t : s.relations[r]) {
      if (static_cast<int>(t.size()) != s.sig.rels[r].arity)
        violations.push_back("relation " + name + ": tuple (" +
                             tuple_to_string(t) + ") has wrong arity");
      for (int v : t)
        if (v < 0 || v >= s.domain_size) {
          violations.push_back("relation " + name + ": tuple (" +
                               tuple_to_string(t) +
                               ") has out-of-range entry");
          break;
        }
      if (prev != nullptr) {
        if (*prev == t)
          violations.push_back("relation " + name + ": duplicate tuple (" +
                               tuple_to_string(t) + ")");
        else if (!(*prev < t))
          violations.push_back("relation " + name +
                               ": tuples not in lexicographic order at (" +
                               tuple_to_string(t) + ")");
      }
      prev = &t;
    }
  }
  return violations;
}

Structure parse_structure(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  int domain_size = -1;
  Signature sig;
  std::vector<Relation> relations;
  std::unordered_set<std::string> names;

  // Current relation being filled, or -1.
  int current = -1;
  std::set<Tuple> seen;

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
  if (tokens.size() != 2 || tokens[0] != "domain")
    throw ParseError(lineno, "expected 'domain <m>'");
  domain_size = parse_int(tokens[1]);
  if (domain_size < 1) throw ParseError(lineno, "domain size must be >= 1");

  while (next_tokens(tokens)) {
    if (current < 0) {
      if (tokens[0] != "rel")
        throw ParseError(lineno, "expected 'rel <name> <arity>'");
      if (tokens.size() != 3)
        throw ParseError(lineno, "expected 'rel <name> <arity>'");
      int arity = parse_int(tokens[2]);
      if (arity < 1) throw ParseError(lineno, "arity must be >= 1");
      if (!names.insert(tokens[1]).second)
        throw ParseError(lineno, "duplicate relation name " + tokens[1]);
      sig.rels.push_back({tokens[1], arity});
      relations.emplace_back();
      current = static_cast<int>(relations.size()) - 1;
      seen.clear();
      continue;
    }
    if (tokens.size() == 1 && tokens[0] == "end") {
      relations[current] = normalize_relation(std::move(relations[current]));
      current = -1;
      continue;
    }
    int arity = sig.rels[current].arity;
    if (static_cast<int>(tokens.size()) != arity)
      throw ParseError(lineno, "tuple has " + std::to_string(tokens.size()) +
                                   " entries, relation " +
                                   sig.rels[current].name + " has arity " +
                                   std::to_string(arity));
    Tuple t;
    t.reserve(arity);
    for (const auto& tok : tokens) {
      int v = parse_int(tok);
      if (v < 0 || v >= domain_size)
        throw ParseError(lineno, "entry " + std::to_string(v) +
                                     " out of range for domain " +
                                     std::to_string(domain_size));
      t.push_back(v);
    }
    if (!seen.insert(t).second)
      throw ParseError(lineno, "duplicate tuple (" + tuple_to_string(t) + ")");
    relations[current].push_back(std::move(t));
  }
  if (current >= 0)
    throw ParseError(lineno, "missing 'end' for relation " +
                                 sig.rels[current].name);
  return Structure{domain_size, std::move(sig), std::move(relations)};
}

std::string serialize_structure(const Structure& s) {
  std::string out = "domain " + std::to_string(s.domain_size) + "\n";
  for (size_t r = 0; r < s.sig.rels.size(); ++r) {
    out += "rel " + s.sig.rels[r].name + " " +
           std::to_string(s.sig.rels[r].arity) + "\n";
    for (const auto& t : s.relations[r]) out += tuple_to_string(t) + "\n";
    out += "end\n";
  }
  return out;
}

}  // namespace pcsp
