#pragma once

#include <algorithm>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

namespace pmopt {

// Variable clique: a sorted, duplicate-free, nonempty subset of [n]
// (1-based variable indices).
struct Clique {
  int index = 0;  // position within the pattern
  std::vector<int> vars;

  Clique() = default;
  Clique(int index_, std::vector<int> vars_) : index(index_), vars(std::move(vars_)) {
    if (vars.empty()) throw std::invalid_argument("Clique: empty variable set");
    std::sort(vars.begin(), vars.end());
    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end())
      throw std::invalid_argument("Clique: duplicate variable");
    if (vars.front() < 1) throw std::invalid_argument("Clique: variable index must be >= 1");
  }

  int size() const { return static_cast<int>(vars.size()); }
  bool contains(int v) const { return std::binary_search(vars.begin(), vars.end(), v); }

  std::vector<int> intersect(const Clique& other) const {
    std::vector<int> out;
    std::set_intersection(vars.begin(), vars.end(), other.vars.begin(), other.vars.end(),
                          std::back_inserter(out));
    return out;
  }
};

// Correlative sparsity pattern: cliques whose union covers [n].
struct SparsityPattern {
  int n = 0;
  std::vector<Clique> cliques;

  SparsityPattern() = default;

  SparsityPattern(int n_, std::vector<std::vector<int>> clique_vars) : n(n_) {
    if (n < 1) throw std::invalid_argument("SparsityPattern: n must be >= 1");
    if (clique_vars.empty()) throw std::invalid_argument("SparsityPattern: no cliques");
    std::vector<bool> covered(static_cast<std::size_t>(n) + 1, false);
    for (std::size_t i = 0; i < clique_vars.size(); ++i) {
      Clique c(static_cast<int>(i), std::move(clique_vars[i]));
      if (c.vars.back() > n) throw std::invalid_argument("SparsityPattern: variable beyond n");
      for (int v : c.vars) covered[static_cast<std::size_t>(v)] = true;
      cliques.push_back(std::move(c));
    }
    for (int v = 1; v <= n; ++v)
      if (!covered[static_cast<std::size_t>(v)])
        throw std::invalid_argument("SparsityPattern: cliques do not cover [n]");
  }

  int num_cliques() const { return static_cast<int>(cliques.size()); }

  static SparsityPattern single(int n) {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v) all[static_cast<std::size_t>(v - 1)] = v;
    return SparsityPattern(n, {all});
  }
};

struct RipResult {
  bool satisfied = false;
  std::vector<int> ordering;  // clique indices; empty when not satisfied
};

// checks whether `ordering` (a permutation of clique indices) satisfies the
// running intersection property
inline bool rip_holds(const SparsityPattern& pattern, std::span<const int> ordering) {
  std::set<int> seen;
  for (std::size_t pos = 0; pos < ordering.size(); ++pos) {
    const Clique& c = pattern.cliques[static_cast<std::size_t>(ordering[pos])];
    if (pos > 0) {
      std::vector<int> inter;
      for (int v : c.vars)
        if (seen.count(v)) inter.push_back(v);
      bool contained = false;
      for (std::size_t j = 0; j < pos && !contained; ++j) {
        const Clique& prev = pattern.cliques[static_cast<std::size_t>(ordering[j])];
        contained = std::all_of(inter.begin(), inter.end(), [&](int v) { return prev.contains(v); });
      }
      if (!contained) return false;
    }
    for (int v : c.vars) seen.insert(v);
  }
  return true;
}

// Searches for an ordering of the cliques satisfying the running
// intersection property.  Uses Graham-style reduction: repeatedly peel off
// a clique whose intersection with the union of the others is contained in
// one of the remaining cliques; the reverse peel order is an RIP ordering.
inline RipResult rip_check(const SparsityPattern& pattern) {
  const int m = pattern.num_cliques();
  std::vector<bool> alive(static_cast<std::size_t>(m), true);
  std::vector<int> peeled;
  peeled.reserve(static_cast<std::size_t>(m));

  for (int round = 0; round < m - 1; ++round) {
    int pick = -1;
    for (int i = 0; i < m && pick < 0; ++i) {
      if (!alive[static_cast<std::size_t>(i)]) continue;
      // intersection of clique i with the union of the other alive cliques
      std::set<int> others;
      for (int j = 0; j < m; ++j) {
        if (j == i || !alive[static_cast<std::size_t>(j)]) continue;
        others.insert(pattern.cliques[static_cast<std::size_t>(j)].vars.begin(),
                      pattern.cliques[static_cast<std::size_t>(j)].vars.end());
      }
      std::vector<int> inter;
      for (int v : pattern.cliques[static_cast<std::size_t>(i)].vars)
        if (others.count(v)) inter.push_back(v);
      for (int j = 0; j < m; ++j) {
        if (j == i || !alive[static_cast<std::size_t>(j)]) continue;
        const Clique& cj = pattern.cliques[static_cast<std::size_t>(j)];
        if (std::all_of(inter.begin(), inter.end(), [&](int v) { return cj.contains(v); })) {
          pick = i;
          break;
        }
      }
    }
    if (pick < 0) return {};  // no removable clique: pattern is cyclic
    alive[static_cast<std::size_t>(pick)] = false;
    peeled.push_back(pick);
  }

  RipResult result;
  for (int i = 0; i < m; ++i)
    if (alive[static_cast<std::size_t>(i)]) result.ordering.push_back(i);
  for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) result.ordering.push_back(*it);
  result.satisfied = rip_holds(pattern, result.ordering);
  if (!result.satisfied) result.ordering.clear();
  return result;
}

}  // namespace pmopt
