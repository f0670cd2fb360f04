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

#include "pcsp/affine.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace pcsp {

namespace {

constexpr long long kEnumerationBudget = 50'000'000;

int mod_pow(int base, int exp, int p) {
  long long result = 1, b = base % p;
  while (exp > 0) {
    if (exp & 1) result = result * b % p;
    b = b * b % p;
    exp >>= 1;
  }
  return static_cast<int>(result);
}

// Multiplicative inverse in Z_p, p prime.
int mod_inv(int a, int p) { return mod_pow(a, p - 2, p); }

void check_tuples(const std::vector<Tuple>& tuples, int n) {
  if (n < 1) throw Error("modulus must be >= 1");
  for (const auto& t : tuples) {
    if (t.size() != tuples.front().size())
      throw Error("tuples must share one arity");
    for (int v : t)
      if (v < 0 || v >= n) throw Error("tuple entry out of range for modulus");
  }
}

// Row-reduced basis of the subspace of Z_p^r spanned by the given vectors.
std::vector<std::vector<int>> row_space_basis(std::vector<std::vector<int>> rows,
                                              int p) {
  size_t pivot_row = 0;
  size_t r = rows.empty() ? 0 : rows[0].size();
  for (size_t col = 0; col < r && pivot_row < rows.size(); ++col) {
    size_t found = pivot_row;
    while (found < rows.size() && rows[found][col] == 0) ++found;
    if (found == rows.size()) continue;
    std::swap(rows[pivot_row], rows[found]);
    int inv = mod_inv(rows[pivot_row][col], p);
    for (auto& v : rows[pivot_row]) v = static_cast<int>(static_cast<long long>(v) * inv % p);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == pivot_row || rows[i][col] == 0) continue;
      int factor = rows[i][col];
      for (size_t j = 0; j < r; ++j)
        rows[i][j] = static_cast<int>(
            ((rows[i][j] - static_cast<long long>(factor) * rows[pivot_row][j]) % p + p) % p);
    }
    ++pivot_row;
  }
  rows.resize(pivot_row);
  return rows;
}

}  // namespace

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

OperationTable affine_op_table(int n) {
  if (n < 1) throw Error("modulus must be >= 1");
  CyclicGroup group{n};
  return make_operation(n, n, 3, [&group](std::span<const int> a) {
    return group.add(group.sub(a[0], a[1]), a[2]);
  });
}

std::vector<Tuple> affine_closure(const std::vector<Tuple>& tuples, int n) {
  check_tuples(tuples, n);
  if (tuples.empty()) return {};
  CyclicGroup group{n};
  const size_t r = tuples.front().size();

  Tuple base = *std::min_element(tuples.begin(), tuples.end());
  std::set<Tuple> generators;
  for (const auto& t : tuples) {
    Tuple diff(r);
    for (size_t i = 0; i < r; ++i) diff[i] = group.sub(t[i], base[i]);
    generators.insert(std::move(diff));
  }

  // Subgroup generated by the differences: breadth-first closure under
  // adding one generator. Finite order makes inverses reachable.
  std::set<Tuple> subgroup;
  std::deque<Tuple> queue;
  Tuple zero(r, 0);
  subgroup.insert(zero);
  queue.push_back(zero);
  while (!queue.empty()) {
    Tuple current = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : generators) {
      Tuple next(r);
      for (size_t i = 0; i < r; ++i) next[i] = group.add(current[i], g[i]);
      if (subgroup.insert(next).second) queue.push_back(std::move(next));
    }
  }

  std::vector<Tuple> result;
  result.reserve(subgroup.size());
  for (const auto& h : subgroup) {
    Tuple t(r);
    for (size_t i = 0; i < r; ++i) t[i] = group.add(base[i], h[i]);
    result.push_back(std::move(t));
  }
  std::sort(result.begin(), result.end());
  return result;
}

bool is_affine(const Structure& c, int n) {
  if (c.domain_size != n)
    throw Error("is_affine: domain size does not match modulus");
  return is_polymorphism(affine_op_table(n), c);
}

AffinePresentation coset_presentation(const std::vector<Tuple>& tuples, int p) {
  if (!is_prime(p)) throw Error("coset_presentation: modulus must be prime");
  check_tuples(tuples, p);
  if (tuples.empty()) throw Error("coset_presentation: empty tuple set");
  if (affine_closure(tuples, p).size() != tuples.size())
    throw Error("coset_presentation: tuple set is not affine-closed");

  const int r = static_cast<int>(tuples.front().size());
  CyclicGroup group{p};
  Tuple base = *std::min_element(tuples.begin(), tuples.end());

  std::vector<std::vector<int>> diffs;
  for (const auto& t : tuples) {
    std::vector<int> d(r);
    for (int i = 0; i < r; ++i) d[i] = group.sub(t[i], base[i]);
    diffs.push_back(std::move(d));
  }
  std::vector<std::vector<int>> basis = row_space_basis(std::move(diffs), p);

  // Null space of the basis matrix: every such row annihilates the
  // difference subspace, and over a field the double annihilator gives the
  // subspace back.
  std::vector<int> pivot_col(basis.size());
  std::vector<char> is_pivot(r, 0);
  for (size_t i = 0; i < basis.size(); ++i) {
    int col = 0;
    while (basis[i][col] == 0) ++col;
    pivot_col[i] = col;
    is_pivot[col] = 1;
  }

  AffinePresentation pres{p, r, {}};
  for (int free = 0; free < r; ++free) {
    if (is_pivot[free]) continue;
    std::vector<int> c(r, 0);
    c[free] = 1;
    // Solve basis * c^T = 0 for the pivot coordinates.
    for (size_t i = 0; i < basis.size(); ++i)
      c[pivot_col[i]] = group.neg(basis[i][free]);
    int rhs = 0;
    for (int i = 0; i < r; ++i)
      rhs = group.add(rhs, group.normalize(static_cast<long long>(c[i]) * base[i]));
    pres.equations.push_back({std::move(c), rhs});
  }
  return pres;
}

std::vector<Tuple> presentation_solutions(const AffinePresentation& pres) {
  if (pres.modulus < 1 || pres.arity < 1)
    throw Error("malformed presentation");
  for (const auto& eq : pres.equations)
    if (static_cast<int>(eq.coeffs.size()) != pres.arity)
      throw Error("equation width does not match presentation arity");
  long long count = 1;
  for (int i = 0; i < pres.arity; ++i) {
    count *= pres.modulus;
    if (count > kEnumerationBudget)
      throw Error("presentation_solutions: enumeration too large");
  }
  CyclicGroup group{pres.modulus};
  std::vector<Tuple> solutions;
  Tuple t(pres.arity, 0);
  while (true) {
    bool ok = true;
    for (const auto& eq : pres.equations) {
      long long sum = 0;
      for (int i = 0; i < pres.arity; ++i)
        sum += static_cast<long long>(eq.coeffs[i]) * t[i];
      if (group.normalize(sum) != group.normalize(eq.rhs)) {
        ok = false;
        break;
      }
    }
    if (ok) solutions.push_back(t);
    int i = pres.arity - 1;
    while (i >= 0 && ++t[i] == pres.modulus) t[i--] = 0;
    if (i < 0) break;
  }
  return solutions;
}

std::string dump_system(const LinearSystem& sys) {
  std::string out;
  for (const auto& row : sys.rows) {
    for (int c : row.coeffs) out += std::to_string(c) + " ";
    out += "= " + std::to_string(row.rhs) + " (mod " +
           std::to_string(sys.modulus) + ")\n";
  }
  return out;
}

LinearSolution solve_linear_system(const LinearSystem& sys) {
  if (!is_prime(sys.modulus))
    throw Error("solve_linear_system: modulus must be prime");
  const int p = sys.modulus;
  const int n = sys.num_vars;
  std::vector<std::vector<int>> mat;
  std::vector<int> rhs;
  for (const auto& row : sys.rows) {
    if (static_cast<int>(row.coeffs.size()) != n)
      throw Error("solve_linear_system: row width mismatch");
    std::vector<int> r(n);
    for (int j = 0; j < n; ++j) r[j] = ((row.coeffs[j] % p) + p) % p;
    mat.push_back(std::move(r));
    rhs.push_back(((row.rhs % p) + p) % p);
  }

  size_t pivot_row = 0;
  std::vector<std::pair<size_t, int>> pivots;  // (row, column)
  for (int col = 0; col < n && pivot_row < mat.size(); ++col) {
    size_t found = pivot_row;
    while (found < mat.size() && mat[found][col] == 0) ++found;
    if (found == mat.size()) continue;
    std::swap(mat[pivot_row], mat[found]);
    std::swap(rhs[pivot_row], rhs[found]);
    int inv = mod_inv(mat[pivot_row][col], p);
    for (auto& v : mat[pivot_row])
      v = static_cast<int>(static_cast<long long>(v) * inv % p);
    rhs[pivot_row] = static_cast<int>(static_cast<long long>(rhs[pivot_row]) * inv % p);
    for (size_t i = 0; i < mat.size(); ++i) {
      if (i == pivot_row || mat[i][col] == 0) continue;
      long long factor = mat[i][col];
      for (int j = 0; j < n; ++j)
        mat[i][j] = static_cast<int>(((mat[i][j] - factor * mat[pivot_row][j]) % p + p) % p);
      rhs[i] = static_cast<int>(((rhs[i] - factor * rhs[pivot_row]) % p + p) % p);
    }
    pivots.emplace_back(pivot_row, col);
    ++pivot_row;
  }

  for (size_t i = pivot_row; i < mat.size(); ++i)
    if (rhs[i] != 0) return {false, {}};

  LinearSolution solution{true, std::vector<int>(n, 0)};
  for (auto [row, col] : pivots) solution.assignment[col] = rhs[row];
  return solution;
}

AffineSolveResult solve_affine_csp(const Structure& x, const Structure& c,
                                   int p) {
  if (x.sig != c.sig) throw Error("signature mismatch");
  if (!is_prime(p)) throw Error("solve_affine_csp: modulus must be prime");
  if (c.domain_size != p)
    throw Error("solve_affine_csp: template domain size does not match modulus");
  if (!is_affine(c, p))
    throw Error("solve_affine_csp: template is not affine over the modulus");

  AffineSolveResult result;
  result.system.modulus = p;
  result.system.num_vars = x.domain_size;

  std::vector<std::optional<AffinePresentation>> presentations(
      c.relations.size());
  bool feasible = true;
  for (size_t r = 0; r < x.relations.size(); ++r) {
    if (x.relations[r].empty()) continue;
    if (c.relations[r].empty()) {
      // A constraint over an empty relation is unsatisfiable; encode 0 = 1.
      LinearSystem::Row row{std::vector<int>(x.domain_size, 0), 1};
      result.system.rows.push_back(std::move(row));
      feasible = false;
      continue;
    }
    if (!presentations[r])
      presentations[r] = coset_presentation(c.relations[r], p);
    for (const auto& t : x.relations[r]) {
      for (const auto& eq : presentations[r]->equations) {
        LinearSystem::Row row{std::vector<int>(x.domain_size, 0), eq.rhs};
        for (size_t j = 0; j < t.size(); ++j)
          row.coeffs[t[j]] = (row.coeffs[t[j]] + eq.coeffs[j]) % p;
        result.system.rows.push_back(std::move(row));
      }
    }
  }

  if (!feasible) {
    result.yes = false;
    return result;
  }
  LinearSolution solution = solve_linear_system(result.system);
  result.yes = solution.consistent;
  if (solution.consistent)
    result.assignment =
        DomainMap{x.domain_size, p, std::move(solution.assignment)};
  return result;
}

namespace {

OperationTable compose_sum_table(const DomainMap& f, const DomainMap& g, int n,
                                 int arity, const std::vector<int>& coeffs,
                                 int max_arity) {
  if (n < 1) throw Error("group order must be >= 1");
  if (f.target_size != n || g.source_size != n)
    throw Error("maps do not factor through the cyclic group");
  if (arity > max_arity) throw Error("arity budget exceeded");
  CyclicGroup group{n};
  return make_operation(f.source_size, g.target_size, arity,
                        [&](std::span<const int> args) {
                          long long sum = 0;
                          for (int i = 0; i < arity; ++i)
                            sum += static_cast<long long>(coeffs[i]) *
                                   f.values[args[i]];
                          return g.values[group.normalize(sum)];
                        });
}

}  // namespace

OperationTable make_symmetric_polymorphism(const DomainMap& f,
                                           const DomainMap& g, int n, int k,
                                           int max_arity) {
  if (k < 1) throw Error("k must be >= 1");
  const int arity = n * k + 1;  // (nk+1)x = x in Z_n, so coefficients 1 work
  return compose_sum_table(f, g, n, arity, std::vector<int>(arity, 1),
                           max_arity);
}

OperationTable make_alternating_polymorphism(const DomainMap& f,
                                             const DomainMap& g, int n, int k,
                                             int max_arity) {
  if (k < 1) throw Error("k must be >= 1");
  const int arity = 2 * k + 1;  // k+1 plus-ones and k minus-ones sum to 1
  std::vector<int> coeffs(arity);
  for (int i = 0; i < arity; ++i) coeffs[i] = (i % 2 == 0) ? 1 : -1;
  return compose_sum_table(f, g, n, arity, coeffs, max_arity);
}

}  // namespace pcsp
