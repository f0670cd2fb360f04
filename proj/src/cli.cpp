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

#include "pcsp/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "pcsp/affine.hpp"
#include "pcsp/builtin_examples.hpp"
#include "pcsp/homsearch.hpp"
#include "pcsp/polymorph.hpp"
#include "pcsp/relstruct.hpp"
#include "pcsp/sandwich.hpp"

namespace pcsp {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Structure load_structure(const std::string& path) {
  try {
    return parse_structure(read_file(path));
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

std::string join_values(const std::vector<int>& values) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(values[i]);
  }
  return out;
}

void print_stats(const SearchStats& stats, std::ostream& err) {
  err << "nodes=" << stats.nodes_expanded
      << " propagations=" << stats.propagation_calls
      << " elapsed_us=" << stats.elapsed.count() << "\n";
}

void write_output(const std::string& document, const std::string& out_path,
                  bool quiet, std::ostream& out) {
  if (!out_path.empty()) {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw Error("cannot write " + out_path);
    file << document;
    return;
  }
  if (!quiet) out << document;
}

struct HomOptions {
  std::string x_path, a_path;
  long long budget = kDefaultNodeBudget;
  bool stats = false;
  bool quiet = false;
};

int run_hom(const HomOptions& opt, std::ostream& out, std::ostream& err) {
  Structure x = load_structure(opt.x_path);
  Structure a = load_structure(opt.a_path);
  SearchStats stats;
  auto f = find_homomorphism(x, a, &stats, opt.budget);
  if (opt.stats) print_stats(stats, err);
  if (!f) {
    if (!opt.quiet) out << "none\n";
    return 1;
  }
  if (!opt.quiet) out << "hom: " << join_values(f->values) << "\n";
  return 0;
}

struct SolveOptions {
  std::string x_path, c_path;
  int affine_modulus = 0;  // 0 means --generic
  bool dump_system = false;
  long long budget = kDefaultNodeBudget;
  bool quiet = false;
};

int run_solve(const SolveOptions& opt, std::ostream& out, std::ostream& err) {
  Structure x = load_structure(opt.x_path);
  Structure c = load_structure(opt.c_path);
  if (opt.affine_modulus > 0) {
    AffineSolveResult result = solve_affine_csp(x, c, opt.affine_modulus);
    if (opt.dump_system && !opt.quiet) out << dump_system(result.system);
    if (!result.yes) {
      if (!opt.quiet) out << "no\n";
      return 1;
    }
    if (!opt.quiet)
      out << "yes\nassignment: " << join_values(result.assignment->values)
          << "\n";
    return 0;
  }
  SearchStats stats;
  auto f = find_homomorphism(x, c, &stats, opt.budget);
  if (opt.dump_system) err << "note: --dump-system applies to --affine only\n";
  if (!f) {
    if (!opt.quiet) out << "no\n";
    return 1;
  }
  if (!opt.quiet) out << "yes\nassignment: " << join_values(f->values) << "\n";
  return 0;
}

struct SandwichOptions {
  std::string a_path, b_path;
  std::string family = "all";
  SearchConfig cfg;
  std::string out_path;
  bool quiet = false;
};

void print_family_rejections(const FamilySearchOutcome& outcome,
                             std::ostream& out) {
  for (const auto& r : outcome.rejections) {
    out << "rejection: m=" << r.middle_size << " f=" << join_values(r.f.values)
        << " op=" << join_values(r.op.values);
    if (r.missing_tuple)
      out << " missing: " << join_values(*r.missing_tuple);
    out << "\n";
  }
}

int run_sandwich(const SandwichOptions& opt, std::ostream& out,
                 std::ostream& err) {
  Structure a = load_structure(opt.a_path);
  Structure b = load_structure(opt.b_path);

  auto deliver = [&](const SandwichCertificate& cert) {
    write_output(serialize_certificate(cert), opt.out_path, opt.quiet, out);
    return 0;
  };

  if (opt.family == "affine") {
    auto outcome = find_affine_sandwich(a, b, opt.cfg);
    if (outcome.certificate) return deliver(*outcome.certificate);
    if (!opt.quiet)
      out << "not found: family affine exhausted cyclic orders n <= "
          << opt.cfg.n_max << " (" << outcome.maps_tried << " maps tried)\n";
    return 1;
  }
  if (opt.family == "schaefer") {
    auto outcome = boolean_schaefer_sandwich_search(a, b);
    if (outcome.certificate) return deliver(*outcome.certificate);
    if (!opt.quiet) {
      out << "not found: family schaefer decided absent ("
          << outcome.combos_tried << " combinations)\n";
      for (const auto& r : outcome.rejections)
        out << "rejection: class=" << schaefer_class_name(r.cls)
            << " f=" << join_values(r.f.values)
            << " h=" << join_values(r.h.values)
            << " missing: " << join_values(r.image) << "\n";
    }
    return 1;
  }
  if (opt.family == "semilattice") {
    auto outcome = conservative_sandwich_search(a, b, opt.cfg);
    if (outcome.certificate) return deliver(*outcome.certificate);
    if (!opt.quiet) {
      out << "not found: family semilattice exhausted sizes m <= "
          << outcome.max_size_searched << " (" << outcome.combos_tried
          << " combinations)\n";
      print_family_rejections(outcome, out);
    }
    return 1;
  }
  if (opt.family == "majority") {
    auto outcome = majority_sandwich_search(a, b, opt.cfg);
    if (outcome.certificate) return deliver(*outcome.certificate);
    if (!opt.quiet) {
      out << "not found: family majority decided absent ("
          << outcome.combos_tried << " combinations)\n";
      print_family_rejections(outcome, out);
    }
    return 1;
  }

  // family == all
  MinSandwichReport report = min_sandwich_size_bounded(a, b, opt.cfg);
  if (report.best) return deliver(*report.best);
  if (!opt.quiet) {
    out << "no sandwich found within bounds\n";
    auto line = [&](const char* name, const FamilyReport& family) {
      if (!family.applicable)
        out << "not applicable: family " << name << " (" << family.bound_note
            << ")\n";
      else
        out << "not found: family " << name << " (" << family.bound_note
            << ")\n";
    };
    line("affine", report.affine);
    line("schaefer", report.schaefer);
    line("semilattice", report.semilattice);
    line("majority", report.majority);
  }
  (void)err;
  return 1;
}

struct SchaeferOptions {
  std::string s_path;
  bool quiet = false;
};

int run_schaefer(const SchaeferOptions& opt, std::ostream& out) {
  Structure s = load_structure(opt.s_path);
  SchaeferReport report = schaefer_classify(s);
  if (!opt.quiet) {
    out << "present:";
    if (report.present.empty()) out << " none";
    for (SchaeferClass cls : report.present)
      out << " " << schaefer_class_name(cls);
    out << "\n";
    for (const auto& [cls, violation] : report.violations)
      out << "absent: " << schaefer_class_name(cls)
          << " rel=" << s.sig.rels[violation.rel_index].name
          << " image: " << join_values(violation.image) << "\n";
  }
  return report.tractable() ? 0 : 1;
}

struct WidthOptions {
  std::string op_path;
  bool quiet = false;
};

int run_width(const WidthOptions& opt, std::ostream& out) {
  auto [name, op] = parse_operation(read_file(opt.op_path));
  BlockPartition partition = coarsest_block_partition(op);
  if (!opt.quiet) {
    out << "blocks:";
    for (const auto& block : partition.blocks) {
      out << " {";
      for (size_t i = 0; i < block.size(); ++i) {
        if (i > 0) out << ",";
        out << block[i] + 1;  // 1-based argument positions
      }
      out << "}";
    }
    out << "\n";
    out << "width: " << width(op) << "\n";
  }
  return 0;
}

struct AffineCloseOptions {
  std::string s_path;
  int modulus = 0;
  std::string out_path;
  bool quiet = false;
};

int run_affine_close(const AffineCloseOptions& opt, std::ostream& out) {
  Structure s = load_structure(opt.s_path);
  if (s.domain_size > opt.modulus)
    throw Error("domain size exceeds the closure modulus");
  std::vector<Relation> closed;
  closed.reserve(s.relations.size());
  for (const auto& rel : s.relations)
    closed.push_back(affine_closure(rel, opt.modulus));
  Structure result{opt.modulus, s.sig, std::move(closed)};
  write_output(serialize_structure(result), opt.out_path, opt.quiet, out);
  return 0;
}

struct VerifyOptions {
  bool quiet = false;
  bool corrupt = false;
};

// Lex-first tuple on which two sorted relations disagree.
std::optional<Tuple> first_mismatch(const Relation& lhs, const Relation& rhs) {
  size_t i = 0, j = 0;
  while (i < lhs.size() && j < rhs.size()) {
    if (lhs[i] == rhs[j]) {
      ++i;
      ++j;
    } else {
      return lhs[i] < rhs[j] ? lhs[i] : rhs[j];
    }
  }
  if (i < lhs.size()) return lhs[i];
  if (j < rhs.size()) return rhs[j];
  return std::nullopt;
}

int run_verify_example(const VerifyOptions& opt, std::ostream& out) {
  std::ostringstream sink;
  std::ostream& report = opt.quiet ? sink : out;

  Structure a = example_a();
  if (opt.corrupt) {
    Relation rel = a.relations[0];
    rel.back().back() ^= 1;  // test hook: damage one entry
    a = make_structure(a.domain_size, a.sig, {rel});
  }
  const Structure& b = example_b();
  const Structure& expected_c = example_c();
  bool all_ok = true;

  // Closure of A's relation over Z_3 against the bundled middle structure.
  Relation closure = affine_closure(a.relations[0], 3);
  report << "closure tuples (" << closure.size() << "):\n";
  for (const auto& t : closure) report << join_values(t) << "\n";
  if (closure == expected_c.relations[0]) {
    report << "check closure: PASS\n";
  } else {
    all_ok = false;
    auto mismatch = first_mismatch(closure, expected_c.relations[0]);
    report << "check closure: FAIL first mismatch: "
           << join_values(mismatch.value()) << "\n";
  }
  Structure c{3, a.sig, {closure}};

  DomainMap inclusion{2, 3, {0, 1}};
  if (is_homomorphism(inclusion, a, c)) {
    report << "check hom A->C: PASS\n";
  } else {
    all_ok = false;
    report << "check hom A->C: FAIL\n";
  }

  const DomainMap& g = example_c_to_b();
  Structure g_image = apply_map(g, c);
  report << "g-image tuples (" << g_image.relations[0].size() << "):\n";
  for (const auto& t : g_image.relations[0]) report << join_values(t) << "\n";
  if (is_homomorphism(g, c, b)) {
    report << "check hom C->B: PASS\n";
  } else {
    all_ok = false;
    std::optional<Tuple> missing;
    for (const auto& t : g_image.relations[0])
      if (!relation_contains(b.relations[0], t)) {
        missing = t;
        break;
      }
    report << "check hom C->B: FAIL first unmapped image: "
           << (missing ? join_values(*missing) : std::string("?")) << "\n";
  }

  auto outcome = boolean_schaefer_sandwich_search(a, b);
  DomainMap id{2, 2, {0, 1}};
  const SchaeferRejection* minority_rej =
      outcome.rejection_for(id, id, SchaeferClass::Minority);
  const SchaeferRejection* majority_rej =
      outcome.rejection_for(id, id, SchaeferClass::Majority);
  bool exclusion_ok =
      !outcome.certificate && outcome.combos_tried == 96 && minority_rej &&
      minority_rej->image == Tuple{1, 1, 1, 0, 0, 0} && majority_rej &&
      majority_rej->image == Tuple{0, 0, 0, 1, 1, 1};
  if (exclusion_ok) {
    report << "check schaefer exclusion: PASS (" << outcome.combos_tried
           << " combinations, minority witness "
           << join_values(minority_rej->image) << ", majority witness "
           << join_values(majority_rej->image) << ")\n";
  } else {
    all_ok = false;
    report << "check schaefer exclusion: FAIL\n";
  }

  AffinePresentation derived = coset_presentation(closure, 3);
  report << "equations (" << derived.equations.size() << "):\n";
  for (const auto& eq : derived.equations) {
    for (int coeff : eq.coeffs) report << coeff << " ";
    report << "= " << eq.rhs << " (mod 3)\n";
  }
  bool derived_ok = presentation_solutions(derived) == closure;
  bool reference_ok =
      presentation_solutions(example_presentation()) == closure;
  if (derived_ok && reference_ok) {
    report << "check presentation: PASS\n";
  } else {
    all_ok = false;
    Relation reference = presentation_solutions(example_presentation());
    auto mismatch = first_mismatch(reference, closure);
    report << "check presentation: FAIL"
           << (mismatch ? " first mismatch: " + join_values(*mismatch)
                        : std::string())
           << "\n";
  }

  report << "verify-example: " << (all_ok ? "PASS" : "FAIL") << "\n";
  return all_ok ? 0 : 1;
}

struct DumpOptions {
  std::string out_dir = ".";
  bool quiet = false;
};

int run_dump(const DumpOptions& opt, std::ostream& out) {
  namespace fs = std::filesystem;
  fs::path dir(opt.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  const std::pair<const char*, std::string_view> files[] = {
      {"A.struct", example_a_document()},
      {"B.struct", example_b_document()},
      {"C.struct", example_c_document()},
  };
  for (const auto& [name, document] : files) {
    fs::path path = dir / name;
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot write " + path.string());
    file << document;
    if (!opt.quiet) out << "wrote " << path.string() << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Promise CSP sandwich toolkit: homomorphisms, polymorphisms, "
               "affine structures and sandwich search over finite relational "
               "structures",
               "pcsp"};
  app.set_help_flag("-h,--help", "Print help");
  app.require_subcommand(1);

  int exit_code = 0;

  HomOptions hom;
  auto* hom_cmd =
      app.add_subcommand("hom", "Decide whether a homomorphism X -> A exists");
  hom_cmd->add_option("X", hom.x_path, "instance structure file")
      ->required()
      ->check(CLI::ExistingFile);
  hom_cmd->add_option("A", hom.a_path, "template structure file")
      ->required()
      ->check(CLI::ExistingFile);
  hom_cmd->add_option("--budget", hom.budget, "search node budget");
  hom_cmd->add_flag("--stats", hom.stats, "print search statistics to stderr");
  hom_cmd->add_flag("--quiet", hom.quiet, "exit status only");
  hom_cmd->callback([&] { exit_code = run_hom(hom, out, err); });

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand(
      "solve", "Solve an instance against a template, as linear equations "
               "(--affine p) or by search (--generic)");
  solve_cmd->add_option("X", solve.x_path, "instance structure file")
      ->required()
      ->check(CLI::ExistingFile);
  solve_cmd->add_option("C", solve.c_path, "template structure file")
      ->required()
      ->check(CLI::ExistingFile);
  auto* affine_opt = solve_cmd->add_option(
      "--affine", solve.affine_modulus,
      "solve as linear system over Z_p (template must be affine)");
  bool generic = false;
  auto* generic_opt =
      solve_cmd->add_flag("--generic", generic, "solve by backtracking search");
  affine_opt->excludes(generic_opt);
  solve_cmd->add_option("--budget", solve.budget, "search node budget");
  solve_cmd->add_flag("--dump-system", solve.dump_system,
                      "print the instantiated linear system");
  solve_cmd->add_flag("--quiet", solve.quiet, "exit status only");
  solve_cmd->callback([&] {
    if (solve.affine_modulus == 0 && !generic)
      throw CLI::ValidationError("solve", "choose --affine <p> or --generic");
    exit_code = run_solve(solve, out, err);
  });

  SandwichOptions sandwich;
  auto* sandwich_cmd = app.add_subcommand(
      "sandwich", "Search for a tractable structure sandwiched between A and B");
  sandwich_cmd->add_option("A", sandwich.a_path, "lower structure file")
      ->required()
      ->check(CLI::ExistingFile);
  sandwich_cmd->add_option("B", sandwich.b_path, "upper structure file")
      ->required()
      ->check(CLI::ExistingFile);
  sandwich_cmd
      ->add_option("--family", sandwich.family, "witness family to search")
      ->check(CLI::IsMember(
          {"affine", "schaefer", "semilattice", "majority", "all"}));
  sandwich_cmd->add_option("--n-max", sandwich.cfg.n_max,
                           "largest cyclic order for the affine family")
      ->check(CLI::PositiveNumber);
  sandwich_cmd->add_option("--size-bound", sandwich.cfg.size_bound,
                           "largest middle size for the semilattice family")
      ->check(CLI::PositiveNumber);
  sandwich_cmd->add_option("--budget", sandwich.cfg.node_budget,
                           "search node budget");
  sandwich_cmd->add_option("--out", sandwich.out_path,
                           "write the certificate to this file");
  sandwich_cmd->add_flag("--quiet", sandwich.quiet, "exit status only");
  sandwich_cmd->callback([&] { exit_code = run_sandwich(sandwich, out, err); });

  SchaeferOptions schaefer;
  auto* schaefer_cmd = app.add_subcommand(
      "schaefer", "Classify a Boolean structure by its Schaefer polymorphisms");
  schaefer_cmd->add_option("S", schaefer.s_path, "Boolean structure file")
      ->required()
      ->check(CLI::ExistingFile);
  schaefer_cmd->add_flag("--quiet", schaefer.quiet, "exit status only");
  schaefer_cmd->callback([&] { exit_code = run_schaefer(schaefer, out); });

  WidthOptions width_opt;
  auto* width_cmd = app.add_subcommand(
      "width", "Coarsest block-symmetry partition and width of an operation");
  width_cmd->add_option("OP", width_opt.op_path, "operation table file")
      ->required()
      ->check(CLI::ExistingFile);
  width_cmd->add_flag("--quiet", width_opt.quiet, "exit status only");
  width_cmd->callback([&] { exit_code = run_width(width_opt, out); });

  AffineCloseOptions close_opt;
  auto* close_cmd = app.add_subcommand(
      "affine-close", "Close every relation under x - y + z mod n");
  close_cmd->add_option("S", close_opt.s_path, "structure file")
      ->required()
      ->check(CLI::ExistingFile);
  close_cmd->add_option("--mod", close_opt.modulus, "closure modulus")
      ->required()
      ->check(CLI::PositiveNumber);
  close_cmd->add_option("--out", close_opt.out_path,
                        "write the closed structure to this file");
  close_cmd->add_flag("--quiet", close_opt.quiet, "exit status only");
  close_cmd->callback([&] { exit_code = run_affine_close(close_opt, out); });

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand(
      "verify-example",
      "Re-derive the bundled three-element sandwich and check every step");
  verify_cmd->add_flag("--quiet", verify.quiet, "exit status only");
  verify_cmd->add_flag("--corrupt-builtin", verify.corrupt, "")->group("");
  verify_cmd->callback([&] { exit_code = run_verify_example(verify, out); });

  DumpOptions dump;
  auto* dump_cmd = app.add_subcommand(
      "dump-paper-structures",
      "Write the bundled example structures A, B, C to files");
  dump_cmd->add_option("--out", dump.out_dir, "output directory");
  dump_cmd->add_flag("--quiet", dump.quiet, "print nothing");
  dump_cmd->callback([&] { exit_code = run_dump(dump, out); });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

}  // namespace pcsp
