#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <vector>

#include "pmopt/sparsity.hpp"

using namespace pmopt;

namespace {

// oracle: try every ordering
bool rip_exhaustive(const SparsityPattern& p) {
  std::vector<int> perm(static_cast<std::size_t>(p.num_cliques()));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (rip_holds(p, perm)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST_CASE("clique and pattern validation") {
  CHECK_THROWS_AS(Clique(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(Clique(0, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(SparsityPattern(3, {{1, 2}}), std::invalid_argument);  // x3 uncovered
  SparsityPattern p(3, {{1, 2}, {2, 3}});
  CHECK(p.num_cliques() == 2);
  CHECK(p.cliques[1].contains(3));
}

TEST_CASE("rip_check on chain, cycle and star") {
  SparsityPattern chain(3, {{1, 2}, {2, 3}});
  auto r1 = rip_check(chain);
  CHECK(r1.satisfied);
  CHECK(rip_holds(chain, r1.ordering));

  SparsityPattern cycle(3, {{1, 2}, {2, 3}, {3, 1}});
  auto r2 = rip_check(cycle);
  CHECK_FALSE(r2.satisfied);
  CHECK_FALSE(rip_exhaustive(cycle));

  SparsityPattern star(4, {{1, 2}, {1, 3}, {1, 4}});
  auto r3 = rip_check(star);
  CHECK(r3.satisfied);
  CHECK(rip_exhaustive(star));
}

TEST_CASE("rip_check agrees with the exhaustive oracle") {
  // a small pool of patterns exercising chains, forks, cycles and nesting
  std::vector<SparsityPattern> pool;
  pool.emplace_back(4, std::vector<std::vector<int>>{{1, 2}, {2, 3}, {3, 4}});
  pool.emplace_back(4, std::vector<std::vector<int>>{{1, 2, 3}, {2, 3, 4}});
  pool.emplace_back(4, std::vector<std::vector<int>>{{1, 2}, {3, 4}});
  pool.emplace_back(5, std::vector<std::vector<int>>{{1, 2, 3}, {3, 4}, {4, 5}, {3, 5}});
  pool.emplace_back(4, std::vector<std::vector<int>>{{1, 2}, {2, 3}, {3, 4}, {4, 1}});
  pool.emplace_back(3, std::vector<std::vector<int>>{{1, 2, 3}, {2, 3}, {1, 3}});
  pool.emplace_back(6, std::vector<std::vector<int>>{{1, 2, 3}, {3, 4, 5}, {5, 6, 1}});
  pool.emplace_back(5, std::vector<std::vector<int>>{{1, 2}, {1, 3}, {1, 4}, {1, 5}});
  for (const auto& p : pool) {
    auto got = rip_check(p);
    bool want = rip_exhaustive(p);
    INFO("pattern with " << p.num_cliques() << " cliques over n=" << p.n);
    CHECK(got.satisfied == want);
    if (got.satisfied) CHECK(rip_holds(p, got.ordering));
  }
}

TEST_CASE("chains of consecutive windows always satisfy RIP") {
  for (int m = 2; m <= 6; ++m) {
    int omega = 3;
    int n = (omega - 1) * m + 1;
    std::vector<std::vector<int>> cliques;
    for (int i = 0; i < m; ++i) {
      std::vector<int> vars;
      for (int j = 1; j <= omega; ++j) vars.push_back((omega - 1) * i + j);
      cliques.push_back(vars);
    }
    SparsityPattern p(n, cliques);
    CHECK(rip_check(p).satisfied);
  }
}
