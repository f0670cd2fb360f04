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

#include <algorithm>
#include <random>
#include <set>

#include "pcsp/affine.hpp"
#include "pcsp/builtin_examples.hpp"
#include "pcsp/homsearch.hpp"
#include "test_util.hpp"

using namespace pcsp;
using testutil::single_relation;

namespace {

// Reference closure: plain fixpoint iteration over all argument triples.
std::vector<Tuple> brute_force_closure(const std::vector<Tuple>& tuples,
                                       int n) {
  CyclicGroup group{n};
  std::set<Tuple> closed(tuples.begin(), tuples.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Tuple> snapshot(closed.begin(), closed.end());
    for (const auto& x : snapshot)
      for (const auto& y : snapshot)
        for (const auto& z : snapshot) {
          Tuple image(x.size());
          for (size_t i = 0; i < x.size(); ++i)
            image[i] = group.add(group.sub(x[i], y[i]), z[i]);
          if (closed.insert(std::move(image)).second) grew = true;
        }
  }
  return {closed.begin(), closed.end()};
}

std::vector<Tuple> random_tuples(std::mt19937& rng, int count, int arity,
                                 int n) {
  std::vector<Tuple> tuples;
  for (int i = 0; i < count; ++i)
    tuples.push_back(testutil::random_tuple(rng, arity, n));
  return tuples;
}

}  // namespace

TEST_CASE("closure of the base relation over Z_3 is the 9-tuple coset") {
  auto closed = affine_closure(example_a().relations[0], 3);
  CHECK(closed == example_c().relations[0]);
  CHECK(closed == brute_force_closure(example_a().relations[0], 3));
}

TEST_CASE("closure of the base relation over Z_2 adds the complement tuple") {
  auto closed = affine_closure(example_a().relations[0], 2);
  Relation expected = example_a().relations[0];
  expected.push_back({1, 1, 1, 0, 0, 0});
  CHECK(closed == normalize_relation(expected));
  // Over Z_2, x - y + z is exactly the minority operation.
  CHECK(closed == close_under(affine_op_table(2), example_a().relations[0], 6));
}

TEST_CASE("closure fixpoint basics") {
  CHECK(affine_closure({{1, 2, 0}}, 3) == std::vector<Tuple>{{1, 2, 0}});
  CHECK(affine_closure({}, 5).empty());
  CHECK_THROWS_AS(affine_closure({{0, 3}}, 3), Error);
}

TEST_CASE("closure agrees with the generic fixpoint and the table route") {
  std::mt19937 rng(61);
  for (int p : {2, 3, 5}) {
    for (int i = 0; i < 6; ++i) {
      int arity = 1 + i % 3;
      auto tuples = random_tuples(rng, 1 + i % 3, arity, p);
      auto fast = affine_closure(tuples, p);
      CHECK(fast == brute_force_closure(tuples, p));
      CHECK(fast == close_under(affine_op_table(p), tuples, arity));
    }
  }
}

TEST_CASE("closures are closed and have prime-power size") {
  std::mt19937 rng(67);
  for (int p : {2, 3, 5}) {
    CyclicGroup group{p};
    for (int i = 0; i < 8; ++i) {
      int arity = 1 + i % 3;
      auto closed = affine_closure(random_tuples(rng, 2, arity, p), p);
      for (const auto& x : closed)
        for (const auto& y : closed)
          for (const auto& z : closed) {
            Tuple image(x.size());
            for (size_t c = 0; c < x.size(); ++c)
              image[c] = group.add(group.sub(x[c], y[c]), z[c]);
            CHECK(relation_contains(closed, image));
          }
      size_t size = closed.size();
      while (size % p == 0) size /= p;
      CHECK(size == 1);
    }
  }
}

TEST_CASE("is_affine") {
  CHECK(is_affine(example_c(), 3));
  CHECK_FALSE(is_affine(example_b(), 2));
  Structure trivial = single_relation(1, 2, {{0, 0}});
  CHECK(is_affine(trivial, 1));
  CHECK_THROWS_AS(is_affine(example_b(), 3), Error);
}

TEST_CASE("coset presentation of the middle relation") {
  AffinePresentation pres = coset_presentation(example_c().relations[0], 3);
  CHECK(pres.arity == 6);
  CHECK(pres.modulus == 3);
  CHECK(pres.equations.size() == 4);  // 6 coordinates minus rank 2
  CHECK(presentation_solutions(pres) == example_c().relations[0]);

  // The bundled reference system has the same solution set.
  CHECK(presentation_solutions(example_presentation()) ==
        example_c().relations[0]);
}

TEST_CASE("coset presentation edge cases") {
  // The full space needs no equations.
  std::vector<Tuple> full;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) full.push_back({x, y});
  AffinePresentation none = coset_presentation(full, 3);
  CHECK(none.equations.empty());
  CHECK(presentation_solutions(none).size() == 9);

  // A singleton pins every coordinate.
  AffinePresentation point = coset_presentation({{2, 0, 1}}, 3);
  CHECK(point.equations.size() == 3);
  CHECK(presentation_solutions(point) == std::vector<Tuple>{{2, 0, 1}});

  CHECK_THROWS_AS(coset_presentation({}, 3), Error);
  CHECK_THROWS_AS(coset_presentation({{0}, {1}}, 4), Error);
  // Not closed: {0, 1} over Z_3 generates all of Z_3.
  CHECK_THROWS_AS(coset_presentation({{0}, {1}}, 3), Error);
}

TEST_CASE("presentation round trip on random cosets") {
  std::mt19937 rng(71);
  for (int p : {2, 3}) {
    for (int i = 0; i < 10; ++i) {
      int arity = 1 + i % 4;
      auto coset = affine_closure(random_tuples(rng, 2, arity, p), p);
      AffinePresentation pres = coset_presentation(coset, p);
      CHECK(presentation_solutions(pres) == coset);
    }
  }
}

TEST_CASE("solving one fresh constraint against the affine middle") {
  Structure x = single_relation(6, 6, {{0, 1, 2, 3, 4, 5}});
  AffineSolveResult result = solve_affine_csp(x, example_c(), 3);
  REQUIRE(result.yes);
  REQUIRE(result.assignment.has_value());
  CHECK(is_homomorphism(*result.assignment, x, example_c()));
  // One solution per middle tuple.
  CHECK(enumerate_homomorphisms(x, example_c(), 100).size() == 9);
}

TEST_CASE("conflicting singleton constraints are inconsistent") {
  Signature sig{{{"P0", 1}, {"P1", 1}}};
  Structure templ = make_structure(3, sig, {{{0}}, {{1}}});
  REQUIRE(is_affine(templ, 3));
  Structure x = make_structure(1, sig, {{{0}}, {{0}}});
  AffineSolveResult result = solve_affine_csp(x, templ, 3);
  CHECK_FALSE(result.yes);
  CHECK_FALSE(csp_decide(x, templ));
}

TEST_CASE("the empty instance is satisfied by the zero assignment") {
  Structure x = single_relation(4, 6, {});
  AffineSolveResult result = solve_affine_csp(x, example_c(), 3);
  REQUIRE(result.yes);
  CHECK(result.assignment->values == std::vector<int>{0, 0, 0, 0});
  CHECK(result.system.rows.empty());
}

TEST_CASE("constraints over an empty template relation are unsatisfiable") {
  Structure templ = single_relation(3, 2, {});
  REQUIRE(is_affine(templ, 3));
  Structure x = single_relation(2, 2, {{0, 1}});
  AffineSolveResult result = solve_affine_csp(x, templ, 3);
  CHECK_FALSE(result.yes);
  CHECK_FALSE(csp_decide(x, templ));
}

TEST_CASE("solve_affine_csp validates its preconditions") {
  Structure x = single_relation(2, 6, {});
  CHECK_THROWS_AS(solve_affine_csp(x, example_b(), 2), Error);  // not affine
  CHECK_THROWS_AS(solve_affine_csp(x, example_b(), 3), Error);  // wrong size
  Structure z4 = single_relation(4, 1, {{0}, {2}});
  Structure x4 = single_relation(1, 1, {{0}});
  CHECK_THROWS_AS(solve_affine_csp(x4, z4, 4), Error);  // composite modulus
}

TEST_CASE("linear solving agrees with the search engine on random instances") {
  std::mt19937 rng(73);
  std::uniform_int_distribution<int> vars(1, 6);
  std::uniform_int_distribution<int> constraints(0, 5);
  for (int i = 0; i < 60; ++i) {
    int nv = vars(rng);
    std::vector<Tuple> tuples;
    int nc = constraints(rng);
    for (int t = 0; t < nc; ++t)
      tuples.push_back(testutil::random_tuple(rng, 6, nv));
    Structure x = single_relation(nv, 6, tuples);
    AffineSolveResult linear = solve_affine_csp(x, example_c(), 3);
    bool searched = csp_decide(x, example_c());
    REQUIRE(linear.yes == searched);
    if (linear.yes)
      CHECK(is_homomorphism(*linear.assignment, x, example_c()));
  }
}

TEST_CASE("gaussian elimination basics") {
  LinearSystem sys{3, 2, {{{1, 1}, 1}, {{0, 1}, 2}}};
  LinearSolution solution = solve_linear_system(sys);
  REQUIRE(solution.consistent);
  CHECK(solution.assignment == std::vector<int>{2, 2});

  LinearSystem bad{3, 1, {{{0}, 1}}};
  CHECK_FALSE(solve_linear_system(bad).consistent);

  // Free variables default to zero.
  LinearSystem under{5, 3, {{{1, 1, 0}, 4}}};
  LinearSolution free_solution = solve_linear_system(under);
  REQUIRE(free_solution.consistent);
  CHECK(free_solution.assignment == std::vector<int>{4, 0, 0});

  CHECK_THROWS_AS(solve_linear_system(LinearSystem{4, 1, {}}), Error);
}

TEST_CASE("system dump format") {
  LinearSystem sys{3, 3, {{{1, 2, 0}, 1}, {{0, 0, 1}, 2}}};
  CHECK(dump_system(sys) == "1 2 0 = 1 (mod 3)\n0 0 1 = 2 (mod 3)\n");
}

TEST_CASE("symmetric construction from the bundled sandwich") {
  DomainMap inclusion{2, 3, {0, 1}};
  const DomainMap& g = example_c_to_b();

  OperationTable sym = make_symmetric_polymorphism(inclusion, g, 3, 1);
  CHECK(sym.arity == 4);
  CHECK(sym.domain_size == 2);
  CHECK(sym.target_size == 2);
  CHECK(eval(sym, std::vector<int>{0, 0, 0, 1}) == 1);
  CHECK(is_polymorphism_pair(sym, example_a(), example_b()));
  CHECK(width(sym) == 4);

  std::mt19937 rng(79);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> args(4);
    for (int& v : args) v = static_cast<int>(rng() % 2);
    std::vector<int> permuted = args;
    std::shuffle(permuted.begin(), permuted.end(), rng);
    CHECK(eval(sym, args) == eval(sym, permuted));
  }
}

TEST_CASE("alternating construction from the bundled sandwich") {
  DomainMap inclusion{2, 3, {0, 1}};
  const DomainMap& g = example_c_to_b();

  OperationTable alt = make_alternating_polymorphism(inclusion, g, 3, 2);
  CHECK(alt.arity == 5);
  CHECK(is_polymorphism_pair(alt, example_a(), example_b()));
  BlockPartition partition = coarsest_block_partition(alt);
  CHECK(partition.blocks ==
        std::vector<std::vector<int>>{{0, 2, 4}, {1, 3}});
  CHECK(width(alt) == 2);

  OperationTable alt1 = make_alternating_polymorphism(inclusion, g, 3, 1);
  CHECK(alt1.arity == 3);
  CHECK(width(alt1) == 1);
  CHECK(is_polymorphism_pair(alt1, example_a(), example_b()));

  // Coefficients sum to one, so constant argument rows collapse.
  for (int a = 0; a < 2; ++a)
    CHECK(eval(alt, std::vector<int>(5, a)) == g.values[inclusion.values[a]]);

  // Invariant within blocks, broken by some cross-block transposition.
  std::mt19937 rng(83);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> perm{0, 1, 2, 3, 4};
    std::vector<int> odds{0, 2, 4}, evens{1, 3};
    std::shuffle(odds.begin(), odds.end(), rng);
    std::shuffle(evens.begin(), evens.end(), rng);
    perm[0] = odds[0];
    perm[2] = odds[1];
    perm[4] = odds[2];
    perm[1] = evens[0];
    perm[3] = evens[1];
    std::vector<int> args(5);
    for (int& v : args) v = static_cast<int>(rng() % 2);
    std::vector<int> permuted(5);
    for (int j = 0; j < 5; ++j) permuted[j] = args[perm[j]];
    CHECK(eval(alt, args) == eval(alt, permuted));
  }
  bool cross_break = false;
  std::vector<int> args(5, 0);
  do {
    std::vector<int> swapped = args;
    std::swap(swapped[0], swapped[1]);
    if (eval(alt, args) != eval(alt, swapped)) cross_break = true;
  } while (testutil::next_digits(args, 2));
  CHECK(cross_break);
}

TEST_CASE("construction arity budget") {
  DomainMap inclusion{2, 3, {0, 1}};
  const DomainMap& g = example_c_to_b();
  CHECK_THROWS_AS(make_symmetric_polymorphism(inclusion, g, 3, 3), Error);
  CHECK(make_symmetric_polymorphism(inclusion, g, 3, 2).arity == 7);
  CHECK_THROWS_AS(make_alternating_polymorphism(inclusion, g, 3, 4), Error);
  // Mismatched factorization is rejected.
  CHECK_THROWS_AS(make_symmetric_polymorphism(identity_map(2), g, 3, 1),
                  Error);
}

TEST_CASE("primality check") {
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK(is_prime(7));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(4));
  CHECK_FALSE(is_prime(9));
}
