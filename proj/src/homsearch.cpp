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

#include "pcsp/homsearch.hpp"

#include <algorithm>
#include <deque>

namespace pcsp {

namespace {

// One instance tuple, with its variables grouped by occurrence positions.
// Repeated variables inside a tuple are a single entry with several
// positions: a supporting template tuple must carry one value across all
// of them.
struct ConstraintScope {
  int rel_index = 0;
  std::vector<std::pair<int, std::vector<int>>> vars;
};

class Searcher {
 public:
  Searcher(const Structure& x, const Structure& a, long long node_budget,
           bool static_order)
      : template_(a),
        budget_(node_budget),
        static_order_(static_order),
        num_vars_(x.domain_size),
        num_values_(a.domain_size) {
    if (x.sig != a.sig) throw Error("signature mismatch");
    candidates_.assign(num_vars_, std::vector<char>(num_values_, 1));
    counts_.assign(num_vars_, num_values_);
    assigned_.assign(num_vars_, false);
    var_constraints_.assign(num_vars_, {});
    for (size_t r = 0; r < x.relations.size(); ++r) {
      for (const auto& t : x.relations[r]) {
        ConstraintScope scope;
        scope.rel_index = static_cast<int>(r);
        for (size_t p = 0; p < t.size(); ++p) {
          auto it = std::find_if(scope.vars.begin(), scope.vars.end(),
                                 [&](const auto& v) { return v.first == t[p]; });
          if (it == scope.vars.end())
            scope.vars.push_back({t[p], {static_cast<int>(p)}});
          else
            it->second.push_back(static_cast<int>(p));
        }
        int id = static_cast<int>(constraints_.size());
        constraints_.push_back(std::move(scope));
        for (const auto& [var, positions] : constraints_.back().vars)
          var_constraints_[var].push_back(id);
      }
    }
  }

  // Runs the search, appending up to `limit` solutions. Returns once the
  // limit is reached or the space is exhausted.
  void run(long long limit, std::vector<DomainMap>& solutions) {
    limit_ = limit;
    solutions_ = &solutions;
    std::deque<int> all(constraints_.size());
    for (size_t i = 0; i < constraints_.size(); ++i) all[i] = i;
    if (propagate(all)) dfs();
  }

  SearchStats stats;

 private:
  // Generalized arc consistency for one constraint: a candidate survives
  // only if some template tuple supports it together with the other
  // variables' current candidate sets. Returns false on wipeout.
  bool revise(int constraint_id, std::vector<int>& changed_vars) {
    ++stats.propagation_calls;
    const ConstraintScope& scope = constraints_[constraint_id];
    const Relation& templ = template_.relations[scope.rel_index];

    const size_t nvars = scope.vars.size();
    supported_.assign(nvars, std::vector<char>(num_values_, 0));
    for (const auto& s : templ) {
      bool consistent = true;
      for (size_t i = 0; i < nvars && consistent; ++i) {
        const auto& [var, positions] = scope.vars[i];
        int value = s[positions[0]];
        for (size_t j = 1; j < positions.size(); ++j)
          if (s[positions[j]] != value) {
            consistent = false;
            break;
          }
        if (consistent && !candidates_[var][value]) consistent = false;
      }
      if (!consistent) continue;
      for (size_t i = 0; i < nvars; ++i)
        supported_[i][s[scope.vars[i].second[0]]] = 1;
    }

    for (size_t i = 0; i < nvars; ++i) {
      int var = scope.vars[i].first;
      bool shrank = false;
      for (int v = 0; v < num_values_; ++v) {
        if (candidates_[var][v] && !supported_[i][v]) {
          candidates_[var][v] = 0;
          --counts_[var];
          shrank = true;
        }
      }
      if (counts_[var] == 0) return false;
      if (shrank) changed_vars.push_back(var);
    }
    return true;
  }

  bool propagate(std::deque<int>& queue) {
    std::vector<char> queued(constraints_.size(), 0);
    for (int id : queue) queued[id] = 1;
    std::vector<int> changed;
    while (!queue.empty()) {
      int id = queue.front();
      queue.pop_front();
      queued[id] = 0;
      changed.clear();
      if (!revise(id, changed)) return false;
      for (int var : changed)
        for (int other : var_constraints_[var])
          if (other != id && !queued[other]) {
            queued[other] = 1;
            queue.push_back(other);
          }
    }
    return true;
  }

  int pick_variable() const {
    int best = -1;
    for (int v = 0; v < num_vars_; ++v) {
      if (assigned_[v]) continue;
      if (static_order_) return v;
      if (best < 0 || counts_[v] < counts_[best]) best = v;
    }
    return best;
  }

  // Returns true when the solution limit has been reached.
  bool dfs() {
    int var = pick_variable();
    if (var < 0) {
      DomainMap f{num_vars_, num_values_, std::vector<int>(num_vars_)};
      for (int v = 0; v < num_vars_; ++v)
        f.values[v] = static_cast<int>(
            std::find(candidates_[v].begin(), candidates_[v].end(), 1) -
            candidates_[v].begin());
      solutions_->push_back(std::move(f));
      return static_cast<long long>(solutions_->size()) >= limit_;
    }

    auto saved_candidates = candidates_;
    auto saved_counts = counts_;
    for (int value = 0; value < num_values_; ++value) {
      if (!candidates_[var][value]) continue;
      if (++stats.nodes_expanded > budget_) throw BudgetExceeded(budget_);

      std::fill(candidates_[var].begin(), candidates_[var].end(), 0);
      candidates_[var][value] = 1;
      counts_[var] = 1;
      assigned_[var] = true;

      std::deque<int> queue(var_constraints_[var].begin(),
                            var_constraints_[var].end());
      if (propagate(queue) && dfs()) return true;

      assigned_[var] = false;
      candidates_ = saved_candidates;
      counts_ = saved_counts;
    }
    return false;
  }

  const Structure& template_;
  const long long budget_;
  const bool static_order_;
  const int num_vars_;
  const int num_values_;

  std::vector<ConstraintScope> constraints_;
  std::vector<std::vector<int>> var_constraints_;
  std::vector<std::vector<char>> candidates_;
  std::vector<int> counts_;
  std::vector<char> assigned_;
  std::vector<std::vector<char>> supported_;

  long long limit_ = 1;
  std::vector<DomainMap>* solutions_ = nullptr;
};

}  // namespace

bool is_homomorphism(const DomainMap& f, const Structure& x,
                     const Structure& a) {
  if (x.sig != a.sig) throw Error("signature mismatch");
  if (f.source_size != x.domain_size || f.target_size != a.domain_size)
    throw Error("map does not match structure domains");
  for (size_t r = 0; r < x.relations.size(); ++r)
    for (const auto& t : x.relations[r])
      if (!relation_contains(a.relations[r], apply_to_tuple(f, t)))
        return false;
  return true;
}

std::optional<DomainMap> find_homomorphism(const Structure& x,
                                           const Structure& a,
                                           SearchStats* stats,
                                           long long node_budget) {
  auto start = std::chrono::steady_clock::now();
  Searcher searcher(x, a, node_budget, /*static_order=*/false);
  std::vector<DomainMap> solutions;
  try {
    searcher.run(1, solutions);
  } catch (const BudgetExceeded&) {
    if (stats) *stats = searcher.stats;
    throw;
  }
  searcher.stats.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - start);
  if (stats) *stats = searcher.stats;
  if (solutions.empty()) return std::nullopt;
  return std::move(solutions.front());
}

std::vector<DomainMap> enumerate_homomorphisms(const Structure& x,
                                               const Structure& a,
                                               long long limit,
                                               SearchStats* stats,
                                               long long node_budget) {
  if (limit < 1) throw Error("enumerate_homomorphisms: limit must be >= 1");
  auto start = std::chrono::steady_clock::now();
  Searcher searcher(x, a, node_budget, /*static_order=*/true);
  std::vector<DomainMap> solutions;
  try {
    searcher.run(limit, solutions);
  } catch (const BudgetExceeded&) {
    if (stats) *stats = searcher.stats;
    throw;
  }
  searcher.stats.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - start);
  if (stats) *stats = searcher.stats;
  return solutions;
}

bool csp_decide(const Structure& x, const Structure& a, long long node_budget) {
  return find_homomorphism(x, a, nullptr, node_budget).has_value();
}

}  // namespace pcsp
