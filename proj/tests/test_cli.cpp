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

#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pcsp/affine.hpp"
#include "pcsp/builtin_examples.hpp"
#include "pcsp/cli.hpp"
#include "pcsp/polymorph.hpp"
#include "pcsp/sandwich.hpp"

using namespace pcsp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;

  TempDir() {
    path = fs::temp_directory_path() /
           ("pcsp_cli_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }

  static int& counter() {
    static int value = 0;
    return value;
  }

  std::string write(const std::string& name, std::string_view content) {
    fs::path file = path / name;
    std::ofstream out(file, std::ios::binary);
    out << content;
    return file.string();
  }

  std::string read(const std::string& name) const {
    std::ifstream in(path / name, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }
};

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("hom command decides and prints the map") {
  TempDir dir;
  std::string a = dir.write("A.struct", example_a_document());
  std::string c = dir.write("C.struct", example_c_document());

  CliResult yes = cli({"hom", a, c});
  CHECK(yes.code == 0);
  CHECK(yes.out == "hom: 0 1\n");

  // Unary relations pin every element, so the only endomorphism is the
  // identity.
  std::string rigid = dir.write(
      "rigid.struct", "domain 2\nrel P0 1\n0\nend\nrel P1 1\n1\nend\n");
  CliResult self = cli({"hom", rigid, rigid});
  CHECK(self.code == 0);
  CHECK(self.out == "hom: 0 1\n");

  CliResult stats = cli({"hom", a, c, "--stats", "--quiet"});
  CHECK(stats.code == 0);
  CHECK(stats.out.empty());
  CHECK(stats.err.find("nodes=") != std::string::npos);
}

TEST_CASE("hom command reports negatives and errors distinctly") {
  TempDir dir;
  Relation extended = example_a().relations[0];
  extended.push_back({0, 0, 0, 0, 0, 0});
  std::string x = dir.write(
      "X.struct",
      serialize_structure(make_structure(2, example_a().sig, {extended})));
  std::string templ = dir.write("T.struct", example_a_document());

  CliResult no = cli({"hom", x, templ});
  CHECK(no.code == 1);
  CHECK(no.out == "none\n");

  std::string broken = dir.write("broken.struct", "domain 2\nrel R 2\n0 7\n");
  CliResult error = cli({"hom", broken, templ});
  CHECK(error.code == 2);
  CHECK(error.err.find("out of range") != std::string::npos);

  CliResult missing = cli({"hom", (dir.path / "nope.struct").string(), templ});
  CHECK(missing.code == 2);
}

TEST_CASE("solve command agrees across both engines") {
  TempDir dir;
  std::string one =
      dir.write("one.struct", "domain 6\nrel R 6\n0 1 2 3 4 5\nend\n");
  std::string c = dir.write("C.struct", example_c_document());

  CliResult affine = cli({"solve", "--affine", "3", one, c});
  CHECK(affine.code == 0);
  CHECK(affine.out.find("yes\n") == 0);
  CHECK(affine.out.find("assignment: ") != std::string::npos);

  CliResult generic = cli({"solve", "--generic", one, c});
  CHECK(generic.code == 0);

  CliResult dumped = cli({"solve", "--affine", "3", "--dump-system", one, c});
  CHECK(dumped.code == 0);
  CHECK(dumped.out.find("(mod 3)") != std::string::npos);

  std::string b = dir.write("B.struct", example_b_document());
  CliResult not_affine = cli({"solve", "--affine", "3", one, b});
  CHECK(not_affine.code == 2);

  CliResult no_mode = cli({"solve", one, c});
  CHECK(no_mode.code == 2);

  CliResult both = cli({"solve", "--affine", "3", "--generic", one, c});
  CHECK(both.code == 2);
}

TEST_CASE("solve command reports unsatisfiable instances") {
  TempDir dir;
  std::string x = dir.write(
      "x.struct", "domain 1\nrel P0 1\n0\nend\nrel P1 1\n0\nend\n");
  std::string templ = dir.write(
      "t.struct", "domain 3\nrel P0 1\n0\nend\nrel P1 1\n1\nend\n");
  CliResult affine = cli({"solve", "--affine", "3", x, templ});
  CHECK(affine.code == 1);
  CHECK(affine.out == "no\n");
  CliResult generic = cli({"solve", "--generic", x, templ});
  CHECK(generic.code == 1);
}

TEST_CASE("sandwich command emits the pinned certificate") {
  TempDir dir;
  std::string a = dir.write("A.struct", example_a_document());
  std::string b = dir.write("B.struct", example_b_document());

  CliResult found =
      cli({"sandwich", "--family", "affine", "--n-max", "3", a, b});
  CHECK(found.code == 0);
  SandwichCertificate cert =
      parse_certificate(found.out, example_a(), example_b());
  CHECK(cert.middle == example_c());
  CHECK(certificate_violations(cert, example_a(), example_b()).empty());

  CliResult to_file = cli({"sandwich", "--family", "affine", "--n-max", "3",
                           "--out", (dir.path / "cert.txt").string(), a, b});
  CHECK(to_file.code == 0);
  CHECK(to_file.out.empty());
  CHECK(dir.read("cert.txt") == found.out);

  CliResult all = cli({"sandwich", a, b});
  CHECK(all.code == 0);
  CHECK(all.out == found.out);
}

TEST_CASE("sandwich command reports exhausted families") {
  TempDir dir;
  std::string a = dir.write("A.struct", example_a_document());
  std::string b = dir.write("B.struct", example_b_document());

  CliResult affine =
      cli({"sandwich", "--family", "affine", "--n-max", "2", a, b});
  CHECK(affine.code == 1);
  CHECK(affine.out.find("not found") != std::string::npos);

  CliResult schaefer = cli({"sandwich", "--family", "schaefer", a, b});
  CHECK(schaefer.code == 1);
  CHECK(schaefer.out.find("96 combinations") != std::string::npos);
  CHECK(schaefer.out.find("1 1 1 0 0 0") != std::string::npos);

  CliResult majority = cli({"sandwich", "--family", "majority", a, b});
  CHECK(majority.code == 1);
  CHECK(majority.out.find("0 0 0 1 1 1") != std::string::npos);

  CliResult semilattice = cli({"sandwich", "--family", "semilattice", a, b});
  CHECK(semilattice.code == 1);
  CHECK(semilattice.out.find("0 0 0 0 0 0") != std::string::npos);

  CliResult all =
      cli({"sandwich", "--n-max", "2", "--size-bound", "2", a, b});
  CHECK(all.code == 1);
  CHECK(all.out.find("no sandwich found within bounds") != std::string::npos);

  CliResult quiet = cli({"sandwich", "--family", "affine", "--n-max", "2",
                         "--quiet", a, b});
  CHECK(quiet.code == 1);
  CHECK(quiet.out.empty());

  CliResult non_boolean = cli({"sandwich", "--family", "schaefer", a,
                               dir.write("C.struct", example_c_document())});
  CHECK(non_boolean.code == 2);

  // Running out of search budget is an error, never a negative answer.
  CliResult starved = cli({"sandwich", "--family", "affine", "--n-max", "3",
                           "--budget", "1", a, b});
  CHECK(starved.code == 2);
  CHECK(starved.err.find("budget") != std::string::npos);
}

TEST_CASE("schaefer command classifies Boolean structures") {
  TempDir dir;
  std::string a = dir.write("A.struct", example_a_document());
  CliResult hard = cli({"schaefer", a});
  CHECK(hard.code == 1);
  CHECK(hard.out.find("present: none") != std::string::npos);
  CHECK(hard.out.find("absent: minority rel=R image: 1 1 1 0 0 0") !=
        std::string::npos);
  CHECK(hard.out.find("absent: majority rel=R image: 0 0 0 1 1 1") !=
        std::string::npos);

  std::string full =
      dir.write("full.struct", "domain 2\nrel R 1\n0\n1\nend\n");
  CliResult easy = cli({"schaefer", full});
  CHECK(easy.code == 0);
  CHECK(easy.out.find("present: const0 const1 meet join minority majority") !=
        std::string::npos);
}

TEST_CASE("width command prints blocks and width") {
  TempDir dir;
  DomainMap inclusion{2, 3, {0, 1}};
  OperationTable alt =
      make_alternating_polymorphism(inclusion, example_c_to_b(), 3, 2);
  std::string alt_path = dir.write("alt.op", serialize_operation("alt", alt));
  CliResult result = cli({"width", alt_path});
  CHECK(result.code == 0);
  CHECK(result.out == "blocks: {1,3,5} {2,4}\nwidth: 2\n");

  OperationTable sym =
      make_symmetric_polymorphism(inclusion, example_c_to_b(), 3, 1);
  std::string sym_path = dir.write("sym.op", serialize_operation("sym", sym));
  CliResult symmetric = cli({"width", sym_path});
  CHECK(symmetric.out == "blocks: {1,2,3,4}\nwidth: 4\n");

  std::string proj_path =
      dir.write("proj.op", serialize_operation("p", projection_table(2, 2, 0)));
  CliResult projection = cli({"width", proj_path});
  CHECK(projection.out == "blocks: {1} {2}\nwidth: 1\n");

  std::string bad = dir.write("bad.op", "op f 2 2 1\n1 0\n0 1\nend\n");
  CHECK(cli({"width", bad}).code == 2);
}

TEST_CASE("affine-close command closes relations over Z_n") {
  TempDir dir;
  std::string a = dir.write("A.struct", example_a_document());
  CliResult closed = cli({"affine-close", "--mod", "3", a});
  CHECK(closed.code == 0);
  CHECK(closed.out == example_c_document());
  CHECK(parse_structure(closed.out) == example_c());

  CliResult too_small = cli({"affine-close", "--mod", "1", a});
  CHECK(too_small.code == 2);
}

TEST_CASE("verify-example reproduces every bundled step") {
  CliResult result = cli({"verify-example"});
  CHECK(result.code == 0);
  CHECK(result.out.find("closure tuples (9):") != std::string::npos);
  CHECK(result.out.find("check closure: PASS") != std::string::npos);
  CHECK(result.out.find("check hom A->C: PASS") != std::string::npos);
  CHECK(result.out.find("check hom C->B: PASS") != std::string::npos);
  CHECK(result.out.find("check schaefer exclusion: PASS") != std::string::npos);
  CHECK(result.out.find("check presentation: PASS") != std::string::npos);
  CHECK(result.out.find("verify-example: PASS") != std::string::npos);

  CliResult quiet = cli({"verify-example", "--quiet"});
  CHECK(quiet.code == 0);
  CHECK(quiet.out.empty());

  CliResult corrupted = cli({"verify-example", "--corrupt-builtin"});
  CHECK(corrupted.code == 1);
  CHECK(corrupted.out.find("check closure: FAIL first mismatch:") !=
        std::string::npos);
  CHECK(corrupted.out.find("verify-example: FAIL") != std::string::npos);
}

TEST_CASE("dump-paper-structures writes parseable documents") {
  TempDir dir;
  CliResult result =
      cli({"dump-paper-structures", "--out", dir.path.string()});
  CHECK(result.code == 0);
  CHECK(parse_structure(dir.read("A.struct")) == example_a());
  CHECK(parse_structure(dir.read("B.struct")) == example_b());
  CHECK(parse_structure(dir.read("C.struct")) == example_c());
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"hom"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"sandwich", "--family", "nonsense", "x", "y"}).code == 2);
}
