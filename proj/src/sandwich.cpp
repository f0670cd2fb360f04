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

#include "pcsp/sandwich.hpp"

#include <algorithm>
#include <sstream>

namespace pcsp {

namespace {

constexpr long long kMapEnumerationCap = 10'000'000;
constexpr long long kTableEnumerationCap = 2'000'000;

long long checked_pow(int base, int exp, long long cap, const char* what) {
  long long n = 1;
  for (int i = 0; i < exp; ++i) {
    n *= base;
    if (n > cap) throw Error(std::string(what) + " enumeration too large");
  }
  return n;
}

bool next_digits(std::vector<int>& digits, int base) {
  for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
    if (++digits[i] < base) return true;
    digits[i] = 0;
  }
  return false;
}

bool is_surjective(const std::vector<int>& values, int target) {
  std::vector<char> hit(target, 0);
  for (int v : values) hit[v] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c == 1; });
}

// All semilattice tables on m elements in ascending full-table order.
// Idempotence and commutativity pin every entry except the upper off
// diagonal, so candidates are the m^(m(m-1)/2) fillings of those entries,
// filtered by associativity. Practical for m <= 4.
std::vector<OperationTable> semilattice_tables(int m) {
  std::vector<std::pair<int, int>> free_entries;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) free_entries.emplace_back(i, j);
  checked_pow(m, static_cast<int>(free_entries.size()), kTableEnumerationCap,
              "semilattice table");

  std::vector<OperationTable> tables;
  std::vector<int> choice(free_entries.size(), 0);
  do {
    OperationTable op{m, m, 2, std::vector<int>(m * m)};
    for (int i = 0; i < m; ++i) op.values[i * m + i] = i;
    for (size_t e = 0; e < free_entries.size(); ++e) {
      auto [i, j] = free_entries[e];
      op.values[i * m + j] = choice[e];
      op.values[j * m + i] = choice[e];
    }
    if (classify_operation(op).semilattice) tables.push_back(std::move(op));
  } while (!free_entries.empty() && next_digits(choice, m));
  return tables;
}

// Candidate middle: relation-wise closure of the f-image of a under op.
Structure closure_middle(const Structure& a, const DomainMap& f,
                         const OperationTable& op) {
  Structure image = apply_map(f, a);
  std::vector<Relation> closed;
  closed.reserve(image.relations.size());
  for (size_t r = 0; r < image.relations.size(); ++r)
    closed.push_back(
        close_under(op, image.relations[r], a.sig.rels[r].arity));
  return Structure{f.target_size, a.sig, std::move(closed)};
}

// First tuple of middle (relation order, lex order) that the map h fails
// to send into b; nullopt when h is a homomorphism.
std::optional<std::pair<int, Tuple>> first_unmapped_tuple(
    const Structure& middle, const DomainMap& h, const Structure& b) {
  for (size_t r = 0; r < middle.relations.size(); ++r)
    for (const auto& t : middle.relations[r]) {
      Tuple image = apply_to_tuple(h, t);
      if (!relation_contains(b.relations[r], image))
        return std::make_pair(static_cast<int>(r), std::move(image));
    }
  return std::nullopt;
}

// Identity probe for the rejection report: the lex-first middle tuple that
// is itself missing from b. Only meaningful when domains coincide.
void attach_probe(FamilyRejection& rejection, const Structure& middle,
                  const Structure& b) {
  if (middle.domain_size != b.domain_size) return;
  auto missing = first_unmapped_tuple(middle, identity_map(middle.domain_size), b);
  if (missing) {
    rejection.rel_index = missing->first;
    rejection.missing_tuple = std::move(missing->second);
  }
}

std::string map_values_string(const DomainMap& f) {
  std::string out;
  for (size_t i = 0; i < f.values.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(f.values[i]);
  }
  return out;
}

}  // namespace

std::vector<std::string> certificate_violations(const SandwichCertificate& cert,
                                                const Structure& a,
                                                const Structure& b) {
  std::vector<std::string> problems;
  if (a.sig != cert.middle.sig || b.sig != cert.middle.sig) {
    problems.push_back("signature mismatch between middle and outer structures");
    return problems;
  }
  for (const auto& v : validate(cert.middle))
    problems.push_back("middle: " + v);
  if (cert.f.source_size != a.domain_size ||
      cert.f.target_size != cert.middle.domain_size)
    problems.push_back("f has wrong domain sizes");
  if (cert.g.source_size != cert.middle.domain_size ||
      cert.g.target_size != b.domain_size)
    problems.push_back("g has wrong domain sizes");
  if (!problems.empty()) return problems;

  if (!is_homomorphism(cert.f, a, cert.middle))
    problems.push_back("f is not a homomorphism into the middle");
  if (!is_homomorphism(cert.g, cert.middle, b))
    problems.push_back("g is not a homomorphism into b");

  if (const auto* affine = std::get_if<AffineWitness>(&cert.witness)) {
    if (affine->modulus != cert.middle.domain_size)
      problems.push_back("affine witness modulus does not match middle size");
    else if (!is_affine(cert.middle, affine->modulus))
      problems.push_back("middle is not affine over the stated modulus");
  } else if (const auto* schaefer = std::get_if<SchaeferWitness>(&cert.witness)) {
    if (cert.middle.domain_size != 2)
      problems.push_back("schaefer witness requires a Boolean middle");
    else if (!is_polymorphism(schaefer_table(schaefer->cls), cert.middle))
      problems.push_back("middle is not preserved by the stated Schaefer class");
  } else if (const auto* semi = std::get_if<SemilatticeWitness>(&cert.witness)) {
    if (semi->op.domain_size != cert.middle.domain_size ||
        semi->op.target_size != cert.middle.domain_size)
      problems.push_back("semilattice witness operation has wrong domain");
    else if (!classify_operation(semi->op).semilattice)
      problems.push_back("witness operation is not a semilattice operation");
    else if (!is_polymorphism(semi->op, cert.middle))
      problems.push_back("middle is not preserved by the witness operation");
  } else if (const auto* maj = std::get_if<MajorityWitness>(&cert.witness)) {
    if (maj->op.domain_size != cert.middle.domain_size ||
        maj->op.target_size != cert.middle.domain_size)
      problems.push_back("majority witness operation has wrong domain");
    else if (!classify_operation(maj->op).majority)
      problems.push_back("witness operation is not a majority operation");
    else if (!is_polymorphism(maj->op, cert.middle))
      problems.push_back("middle is not preserved by the witness operation");
  }
  return problems;
}

std::string serialize_certificate(const SandwichCertificate& cert) {
  std::string out = serialize_structure(cert.middle);
  out += "hom f: " + map_values_string(cert.f) + "\n";
  out += "hom g: " + map_values_string(cert.g) + "\n";
  if (const auto* affine = std::get_if<AffineWitness>(&cert.witness)) {
    out += "witness: affine n=" + std::to_string(affine->modulus) + "\n";
  } else if (const auto* schaefer = std::get_if<SchaeferWitness>(&cert.witness)) {
    out += "witness: schaefer class=" +
           std::string(schaefer_class_name(schaefer->cls)) + "\n";
  } else if (const auto* semi = std::get_if<SemilatticeWitness>(&cert.witness)) {
    out += "witness: semilattice";
    for (int v : semi->op.values) out += " " + std::to_string(v);
    out += "\n";
  } else if (const auto* maj = std::get_if<MajorityWitness>(&cert.witness)) {
    out += "witness: majority";
    for (int v : maj->op.values) out += " " + std::to_string(v);
    out += "\n";
  }
  return out;
}

SandwichCertificate parse_certificate(const std::string& text,
                                      const Structure& a, const Structure& b) {
  std::istringstream in(text);
  std::string line;
  std::string structure_doc;
  std::vector<std::string> tail;
  bool in_tail = false;
  while (std::getline(in, line)) {
    if (!in_tail && line.rfind("hom f:", 0) == 0) in_tail = true;
    if (in_tail)
      tail.push_back(line);
    else
      structure_doc += line + "\n";
  }
  if (tail.size() < 3)
    throw Error("certificate: expected 'hom f:', 'hom g:' and 'witness:' lines");

  SandwichCertificate cert;
  cert.middle = parse_structure(structure_doc);

  auto parse_values = [](const std::string& s, const std::string& prefix) {
    if (s.rfind(prefix, 0) != 0)
      throw Error("certificate: expected '" + prefix + "'");
    std::istringstream vs(s.substr(prefix.size()));
    std::vector<int> values;
    int v;
    while (vs >> v) values.push_back(v);
    if (!vs.eof()) throw Error("certificate: bad value list after '" + prefix + "'");
    return values;
  };

  auto check_map = [](DomainMap& f, const char* name) {
    if (static_cast<int>(f.values.size()) != f.source_size)
      throw Error("certificate: " + std::string(name) + " has wrong length");
    for (int v : f.values)
      if (v < 0 || v >= f.target_size)
        throw Error("certificate: " + std::string(name) + " value out of range");
  };

  cert.f = DomainMap{a.domain_size, cert.middle.domain_size,
                     parse_values(tail[0], "hom f:")};
  check_map(cert.f, "f");
  cert.g = DomainMap{cert.middle.domain_size, b.domain_size,
                     parse_values(tail[1], "hom g:")};
  check_map(cert.g, "g");

  std::istringstream ws(tail[2]);
  std::string witness_kw, family;
  ws >> witness_kw >> family;
  if (witness_kw != "witness:") throw Error("certificate: expected 'witness:' line");
  const int m = cert.middle.domain_size;
  if (family == "affine") {
    std::string arg;
    ws >> arg;
    if (arg.rfind("n=", 0) != 0) throw Error("certificate: expected 'n=<order>'");
    cert.witness = AffineWitness{std::stoi(arg.substr(2))};
  } else if (family == "schaefer") {
    std::string arg;
    ws >> arg;
    if (arg.rfind("class=", 0) != 0)
      throw Error("certificate: expected 'class=<name>'");
    auto cls = schaefer_class_from_name(arg.substr(6));
    if (!cls) throw Error("certificate: unknown Schaefer class " + arg.substr(6));
    cert.witness = SchaeferWitness{*cls};
  } else if (family == "semilattice" || family == "majority") {
    std::vector<int> values;
    int v;
    while (ws >> v) values.push_back(v);
    int arity = family == "semilattice" ? 2 : 3;
    size_t expected = 1;
    for (int i = 0; i < arity; ++i) expected *= m;
    if (values.size() != expected)
      throw Error("certificate: witness table has wrong number of entries");
    OperationTable op{m, m, arity, std::move(values)};
    if (family == "semilattice")
      cert.witness = SemilatticeWitness{std::move(op)};
    else
      cert.witness = MajorityWitness{std::move(op)};
  } else {
    throw Error("certificate: unknown witness family " + family);
  }
  return cert;
}

std::optional<std::pair<DomainMap, DomainMap>> check_sandwich(
    const Structure& a, const Structure& c, const Structure& b,
    long long node_budget) {
  auto f = find_homomorphism(a, c, nullptr, node_budget);
  if (!f) return std::nullopt;
  auto g = find_homomorphism(c, b, nullptr, node_budget);
  if (!g) return std::nullopt;
  return std::make_pair(std::move(*f), std::move(*g));
}

AffineSearchOutcome find_affine_sandwich(const Structure& a,
                                         const Structure& b,
                                         const SearchConfig& cfg) {
  if (a.sig != b.sig) throw Error("signature mismatch");
  if (cfg.n_max < 1) throw Error("n_max must be >= 1");
  AffineSearchOutcome outcome;
  for (int n = 1; n <= cfg.n_max; ++n) {
    outcome.orders_searched = n;
    checked_pow(n, a.domain_size, kMapEnumerationCap, "map");
    std::vector<int> values(a.domain_size, 0);
    do {
      ++outcome.maps_tried;
      DomainMap f{a.domain_size, n, values};
      Structure image = apply_map(f, a);
      std::vector<Relation> closed;
      closed.reserve(image.relations.size());
      for (auto& rel : image.relations)
        closed.push_back(affine_closure(rel, n));
      Structure middle{n, a.sig, std::move(closed)};
      std::optional<DomainMap> g;
      try {
        g = find_homomorphism(middle, b, nullptr, cfg.node_budget);
      } catch (const BudgetExceeded& e) {
        throw BudgetExceeded("affine search at order " + std::to_string(n) +
                             ", map " + map_values_string(f) + ": " + e.what());
      }
      if (g) {
        outcome.certificate = SandwichCertificate{
            std::move(middle), std::move(f), std::move(*g), AffineWitness{n}};
        return outcome;
      }
    } while (next_digits(values, n));
  }
  return outcome;
}

const SchaeferRejection* SchaeferSearchOutcome::rejection_for(
    const DomainMap& f, const DomainMap& h, SchaeferClass cls) const {
  for (const auto& r : rejections)
    if (r.f.values == f.values && r.h.values == h.values && r.cls == cls)
      return &r;
  return nullptr;
}

SchaeferSearchOutcome boolean_schaefer_sandwich_search(const Structure& a,
                                                       const Structure& b) {
  if (a.sig != b.sig) throw Error("signature mismatch");
  if (a.domain_size != 2 || b.domain_size != 2)
    throw Error("boolean_schaefer_sandwich_search: structures must be Boolean");

  SchaeferSearchOutcome outcome;
  std::vector<int> f_values(2, 0);
  do {
    DomainMap f{2, 2, f_values};
    std::vector<int> h_values(2, 0);
    do {
      DomainMap h{2, 2, h_values};
      for (SchaeferClass cls : kSchaeferClasses) {
        ++outcome.combos_tried;
        Structure middle = closure_middle(a, f, schaefer_table(cls));
        auto missing = first_unmapped_tuple(middle, h, b);
        if (!missing) {
          outcome.certificate = SandwichCertificate{std::move(middle), f, h,
                                                    SchaeferWitness{cls}};
          return outcome;
        }
        outcome.rejections.push_back(SchaeferRejection{
            f, h, cls, missing->first, std::move(missing->second)});
      }
    } while (next_digits(h_values, 2));
  } while (next_digits(f_values, 2));
  return outcome;
}

FamilySearchOutcome conservative_sandwich_search(const Structure& a,
                                                 const Structure& b,
                                                 const SearchConfig& cfg) {
  if (a.sig != b.sig) throw Error("signature mismatch");
  if (cfg.size_bound < 1) throw Error("size_bound must be >= 1");
  FamilySearchOutcome outcome;
  const int bound = std::min(cfg.size_bound, a.domain_size);
  for (int m = 1; m <= bound; ++m) {
    outcome.max_size_searched = m;
    std::vector<OperationTable> ops = semilattice_tables(m);
    checked_pow(m, a.domain_size, kMapEnumerationCap, "map");
    std::vector<int> values(a.domain_size, 0);
    do {
      if (!is_surjective(values, m)) continue;
      DomainMap f{a.domain_size, m, values};
      for (const auto& op : ops) {
        ++outcome.combos_tried;
        Structure middle = closure_middle(a, f, op);
        auto g = find_homomorphism(middle, b, nullptr, cfg.node_budget);
        if (g) {
          outcome.certificate = SandwichCertificate{
              std::move(middle), f, std::move(*g), SemilatticeWitness{op}};
          return outcome;
        }
        if (outcome.rejections.size() < kMaxRecordedRejections) {
          FamilyRejection rejection{m, f, op, -1, std::nullopt};
          attach_probe(rejection, middle, b);
          outcome.rejections.push_back(std::move(rejection));
        }
      }
    } while (next_digits(values, m));
  }
  return outcome;
}

FamilySearchOutcome majority_sandwich_search(const Structure& a,
                                             const Structure& b,
                                             const SearchConfig& cfg) {
  if (a.sig != b.sig) throw Error("signature mismatch");
  if (a.domain_size != 2)
    throw Error("majority_sandwich_search: a must be Boolean");

  FamilySearchOutcome outcome;
  for (int m = 1; m <= 2; ++m) {
    outcome.max_size_searched = m;
    OperationTable op = m == 1 ? make_operation(1, 1, 3,
                                                [](std::span<const int>) { return 0; })
                               : majority_table();
    std::vector<int> values(a.domain_size, 0);
    do {
      if (!is_surjective(values, m)) continue;
      DomainMap f{a.domain_size, m, values};
      ++outcome.combos_tried;
      Structure middle = closure_middle(a, f, op);
      auto g = find_homomorphism(middle, b, nullptr, cfg.node_budget);
      if (g) {
        outcome.certificate = SandwichCertificate{
            std::move(middle), f, std::move(*g), MajorityWitness{op}};
        return outcome;
      }
      if (outcome.rejections.size() < kMaxRecordedRejections) {
        FamilyRejection rejection{m, f, op, -1, std::nullopt};
        attach_probe(rejection, middle, b);
        outcome.rejections.push_back(std::move(rejection));
      }
    } while (next_digits(values, m));
  }
  return outcome;
}

MinSandwichReport min_sandwich_size_bounded(const Structure& a,
                                            const Structure& b,
                                            const SearchConfig& cfg) {
  if (a.sig != b.sig) throw Error("signature mismatch");
  MinSandwichReport report;
  std::optional<SandwichCertificate> candidates[4];

  {
    auto outcome = find_affine_sandwich(a, b, cfg);
    report.affine.applicable = true;
    report.affine.bound_note =
        "cyclic orders n <= " + std::to_string(cfg.n_max);
    if (outcome.certificate) {
      report.affine.min_size = outcome.certificate->middle.domain_size;
      candidates[0] = std::move(outcome.certificate);
    } else {
      report.affine.exhausted = true;
    }
  }

  const bool boolean_pair = a.domain_size == 2 && b.domain_size == 2;
  report.schaefer.applicable = boolean_pair;
  if (boolean_pair) {
    report.schaefer.bound_note = "exact decision over Boolean middles";
    auto outcome = boolean_schaefer_sandwich_search(a, b);
    if (outcome.certificate) {
      report.schaefer.min_size = outcome.certificate->middle.domain_size;
      candidates[1] = std::move(outcome.certificate);
    } else {
      report.schaefer.exhausted = true;
    }
  } else {
    report.schaefer.bound_note = "requires Boolean structures";
  }

  {
    auto outcome = conservative_sandwich_search(a, b, cfg);
    report.semilattice.applicable = true;
    report.semilattice.bound_note =
        "sizes m <= " + std::to_string(std::min(cfg.size_bound, a.domain_size));
    if (outcome.certificate) {
      report.semilattice.min_size = outcome.certificate->middle.domain_size;
      candidates[2] = std::move(outcome.certificate);
    } else {
      report.semilattice.exhausted = true;
    }
  }

  report.majority.applicable = a.domain_size == 2;
  if (report.majority.applicable) {
    report.majority.bound_note = "sizes m <= 2, exact for the majority family";
    auto outcome = majority_sandwich_search(a, b, cfg);
    if (outcome.certificate) {
      report.majority.min_size = outcome.certificate->middle.domain_size;
      candidates[3] = std::move(outcome.certificate);
    } else {
      report.majority.exhausted = true;
    }
  } else {
    report.majority.bound_note = "requires a Boolean first structure";
  }

  const FamilyReport* families[4] = {&report.affine, &report.schaefer,
                                     &report.semilattice, &report.majority};
  for (const auto* family : families)
    if (family->min_size &&
        (!report.overall_min || *family->min_size < *report.overall_min))
      report.overall_min = family->min_size;
  if (report.overall_min)
    for (int i = 0; i < 4; ++i)
      if (families[i]->min_size == report.overall_min) {
        report.best = std::move(candidates[i]);
        break;
      }
  return report;
}

}  // namespace pcsp
