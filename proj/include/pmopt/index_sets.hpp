#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "pmopt/exponent.hpp"
#include "pmopt/sparsity.hpp"

namespace pmopt {

// All monomial powers supported on a clique with total degree <= d, listed
// in graded lexicographic order.  The count is C(|clique| + d, d).
class PowerIndexSet {
 public:
  PowerIndexSet(Clique clique, int degree) : clique_(std::move(clique)), degree_(degree) {
    if (degree < 0) throw std::invalid_argument("PowerIndexSet: negative degree");
    std::vector<std::pair<int, int>> stack;
    enumerate(0, degree_, stack);
    std::sort(members_.begin(), members_.end(), GrlexLess{});
  }

  const Clique& clique() const { return clique_; }
  int degree() const { return degree_; }
  const std::vector<Exponent>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  const Exponent& operator[](int i) const { return members_[static_cast<std::size_t>(i)]; }

 private:
  void enumerate(std::size_t var_pos, int budget, std::vector<std::pair<int, int>>& stack) {
    if (var_pos == clique_.vars.size()) {
      members_.emplace_back(stack);
      return;
    }
    for (int p = 0; p <= budget; ++p) {
      if (p > 0) stack.emplace_back(clique_.vars[var_pos], p);
      enumerate(var_pos + 1, budget - p, stack);
      if (p > 0) stack.pop_back();
    }
  }

  Clique clique_;
  int degree_;
  std::vector<Exponent> members_;
};

// Index of the union monomial set U_k = union_i N^{Di}_{2k} that labels the
// decision vector of the order-k sparse moment relaxation.  Each power
// appears exactly once; per-clique maps inject the clique index sets into
// the union.  For dense relaxations the union is replaced by the full
// N^n_{2k} while the per-clique maps are kept.
class UnionIndex {
 public:
  UnionIndex(const SparsityPattern& pattern, int k, bool dense = false)
      : pattern_(pattern), k_(k), dense_(dense) {
    if (k < 0) throw std::invalid_argument("UnionIndex: negative order");
    std::map<Exponent, int, GrlexLess> positions;
    std::vector<PowerIndexSet> clique_sets;
    for (const Clique& c : pattern.cliques) clique_sets.emplace_back(c, 2 * k);
    if (dense) {
      PowerIndexSet full(Clique(0, SparsityPattern::single(pattern.n).cliques[0].vars), 2 * k);
      members_ = full.members();
    } else {
      for (const auto& cs : clique_sets)
        for (const Exponent& e : cs.members()) positions.emplace(e, 0);
      members_.reserve(positions.size());
      for (const auto& [e, unused] : positions) members_.push_back(e);
    }
    positions.clear();
    for (std::size_t i = 0; i < members_.size(); ++i)
      positions.emplace(members_[i], static_cast<int>(i));
    position_ = std::move(positions);

    clique_positions_.resize(clique_sets.size());
    for (std::size_t i = 0; i < clique_sets.size(); ++i) {
      auto& map = clique_positions_[i];
      map.reserve(clique_sets[i].members().size());
      for (const Exponent& e : clique_sets[i].members()) map.push_back(position_.at(e));
    }
  }

  const SparsityPattern& pattern() const { return pattern_; }
  int k() const { return k_; }
  bool dense() const { return dense_; }
  int size() const { return static_cast<int>(members_.size()); }
  const std::vector<Exponent>& members() const { return members_; }
  const Exponent& operator[](int i) const { return members_[static_cast<std::size_t>(i)]; }

  // position of a power in the union; throws if absent
  int position(const Exponent& e) const {
    auto it = position_.find(e);
    if (it == position_.end())
      throw std::out_of_range("UnionIndex: power " + e.to_string() + " not in index set");
    return it->second;
  }

  bool contains(const Exponent& e) const { return position_.find(e) != position_.end(); }

  // positions of N^{Di}_{2k} inside the union, aligned with
  // PowerIndexSet(clique_i, 2k)
  const std::vector<int>& clique_positions(int clique) const {
    return clique_positions_.at(static_cast<std::size_t>(clique));
  }

 private:
  SparsityPattern pattern_;
  int k_;
  bool dense_;
  std::vector<Exponent> members_;
  std::map<Exponent, int, GrlexLess> position_;
  std::vector<std::vector<int>> clique_positions_;
};

}  // namespace pmopt
