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

#ifndef PCSP_AFFINE_HPP
#define PCSP_AFFINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "pcsp/polymorph.hpp"
#include "pcsp/relstruct.hpp"

namespace pcsp {

/// Arithmetic in the cyclic group Z_n.
struct CyclicGroup {
  int order = 1;

  int normalize(long long v) const {
    int r = static_cast<int>(v % order);
    return r < 0 ? r + order : r;
  }
  int add(int a, int b) const { return normalize(static_cast<long long>(a) + b); }
  int sub(int a, int b) const { return normalize(static_cast<long long>(a) - b); }
  int neg(int a) const { return normalize(-static_cast<long long>(a)); }
};

bool is_prime(int n);

// The ternary table (x, y, z) -> x - y + z mod n.
OperationTable affine_op_table(int n);

// Least superset of tuples closed under componentwise x - y + z mod n.
// For nonempty input this is the affine span: a coset of the subgroup of
// Z_n^r generated by the pairwise differences.
std::vector<Tuple> affine_closure(const std::vector<Tuple>& tuples, int n);

// True iff x - y + z mod n preserves every relation of c. Requires
// c.domain_size == n.
bool is_affine(const Structure& c, int n);

/// A relation of arity `arity` presented as the solution set of linear
/// equations over Z_modulus.
struct AffinePresentation {
  struct Equation {
    std::vector<int> coeffs;
    int rhs = 0;
    bool operator==(const Equation&) const = default;
  };
  int modulus = 0;
  int arity = 0;
  std::vector<Equation> equations;
};

// Equations whose solution set over Z_p^arity equals the input exactly.
// The input must be nonempty and closed under x - y + z mod p, p prime.
// Rows are one annihilator basis of the difference subspace; presentations
// are compared by solution set, not by row form.
AffinePresentation coset_presentation(const std::vector<Tuple>& tuples, int p);

// All tuples of Z_modulus^arity satisfying every equation, in lexicographic
// order. Enumeration cost is modulus^arity; guarded by an internal budget.
std::vector<Tuple> presentation_solutions(const AffinePresentation& pres);

struct LinearSystem {
  struct Row {
    std::vector<int> coeffs;
    int rhs = 0;
  };
  int modulus = 0;
  int num_vars = 0;
  std::vector<Row> rows;
};

// One equation per line: "c1 c2 ... cr = b (mod p)".
std::string dump_system(const LinearSystem& sys);

struct LinearSolution {
  bool consistent = false;
  std::vector<int> assignment;  // free variables fixed to 0
};

// Gaussian elimination over Z_p (prime modulus required).
LinearSolution solve_linear_system(const LinearSystem& sys);

struct AffineSolveResult {
  bool yes = false;
  std::optional<DomainMap> assignment;
  LinearSystem system;  // the instantiated equations, for inspection
};

// Decides CSP(c) for the instance x by translating every constraint into
// the coset presentation of its relation and solving the combined linear
// system over Z_p. Requires c affine over Z_p with c.domain_size == p.
// Agrees with csp_decide(x, c).
AffineSolveResult solve_affine_csp(const Structure& x, const Structure& c,
                                   int p);

// The fully symmetric table of arity n*k+1:
//   (x_1, ..., x_{nk+1}) -> g(sum_i f(x_i) mod n).
// f maps a source domain into Z_n, g maps Z_n into a target domain.
OperationTable make_symmetric_polymorphism(const DomainMap& f,
                                           const DomainMap& g, int n, int k,
                                           int max_arity = kDefaultMaxArity);

// The alternating table of arity 2k+1:
//   (x_1, ..., x_{2k+1}) -> g(f(x_1) - f(x_2) + f(x_3) - ... + f(x_{2k+1})).
// Block-symmetric for {odd positions}, {even positions}; width >= k.
OperationTable make_alternating_polymorphism(const DomainMap& f,
                                             const DomainMap& g, int n, int k,
                                             int max_arity = kDefaultMaxArity);

}  // namespace pcsp

#endif  // PCSP_AFFINE_HPP
