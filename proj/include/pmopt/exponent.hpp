#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pmopt {

// Monomial power vector, stored sparsely as (variable, power) pairs with
// strictly positive powers and 1-based variable indices.  The empty vector
// is the constant monomial.
class Exponent {
 public:
  Exponent() = default;

  explicit Exponent(std::vector<std::pair<int, int>> powers) : powers_(std::move(powers)) {
    std::sort(powers_.begin(), powers_.end());
    for (std::size_t i = 0; i < powers_.size(); ++i) {
      if (powers_[i].first < 1) throw std::invalid_argument("Exponent: variable index must be >= 1");
      if (powers_[i].second < 0) throw std::invalid_argument("Exponent: negative power");
      if (i > 0 && powers_[i].first == powers_[i - 1].first)
        throw std::invalid_argument("Exponent: duplicate variable");
    }
    std::erase_if(powers_, [](const auto& vp) { return vp.second == 0; });
  }

  static Exponent unit(int var, int power = 1) {
    if (power == 0) return Exponent{};
    return Exponent({{var, power}});
  }

  const std::vector<std::pair<int, int>>& powers() const { return powers_; }
  bool is_constant() const { return powers_.empty(); }

  int degree() const {
    int d = 0;
    for (const auto& [v, p] : powers_) d += p;
    return d;
  }

  int power(int var) const {
    for (const auto& [v, p] : powers_)
      if (v == var) return p;
    return 0;
  }

  int max_var() const { return powers_.empty() ? 0 : powers_.back().first; }

  Exponent times(const Exponent& other) const {
    std::vector<std::pair<int, int>> out;
    out.reserve(powers_.size() + other.powers_.size());
    auto a = powers_.begin(), b = other.powers_.begin();
    while (a != powers_.end() || b != other.powers_.end()) {
      if (b == other.powers_.end() || (a != powers_.end() && a->first < b->first)) {
        out.push_back(*a++);
      } else if (a == powers_.end() || b->first < a->first) {
        out.push_back(*b++);
      } else {
        out.emplace_back(a->first, a->second + b->second);
        ++a;
        ++b;
      }
    }
    Exponent e;
    e.powers_ = std::move(out);
    return e;
  }

  // support contained in the given sorted variable list
  bool supported_on(std::span<const int> vars) const {
    for (const auto& [v, p] : powers_)
      if (!std::binary_search(vars.begin(), vars.end(), v)) return false;
    return true;
  }

  double eval(std::span<const double> u) const {
    double r = 1.0;
    for (const auto& [v, p] : powers_) {
      double base = u[static_cast<std::size_t>(v - 1)];
      for (int i = 0; i < p; ++i) r *= base;
    }
    return r;
  }

  bool operator==(const Exponent& other) const { return powers_ == other.powers_; }

  std::string to_string() const {
    if (powers_.empty()) return "1";
    std::string s;
    for (const auto& [v, p] : powers_) {
      if (!s.empty()) s += "*";
      s += "x" + std::to_string(v);
      if (p > 1) s += "^" + std::to_string(p);
    }
    return s;
  }

 private:
  std::vector<std::pair<int, int>> powers_;
};

// Graded lexicographic order: lower total degree first; within a degree,
// the monomial with the larger power on the earliest differing variable
// comes first (so x1^2 precedes x1*x2 precedes x2^2).
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    auto pa = a.powers().begin(), pb = b.powers().begin();
    while (pa != a.powers().end() && pb != b.powers().end()) {
      if (pa->first != pb->first) return pa->first < pb->first;
      if (pa->second != pb->second) return pa->second > pb->second;
      ++pa;
      ++pb;
    }
    return false;  // equal
  }
};

inline bool grlex_less(const Exponent& a, const Exponent& b) { return GrlexLess{}(a, b); }

}  // namespace pmopt
