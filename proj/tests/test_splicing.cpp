#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arbor/splicing.hpp"

#include <set>

using namespace arbor;

TEST_CASE("vertex labelings")
{
  Permutation theta = Permutation::parse("(1 3)(2 4)");
  VertexLabeling nu = VertexLabeling::by_cycles(theta);
  CHECK(nu(0) == 0);
  CHECK(nu(1) == 1);
  CHECK(nu(2) == 0);
  CHECK(nu.fiber(1) == std::vector<int>{1, 3});
  CHECK(nu.is_theta_invariant(theta));
  CHECK_FALSE(VertexLabeling({0, 0, 1, 1}, 2).is_theta_invariant(theta));
  CHECK_THROWS_AS(VertexLabeling({0, 0, 2}, 3), std::invalid_argument);
  CHECK(nu.relabeled({1, 0})(0) == 1);
}

TEST_CASE("splice sets are one transposition per tree edge")
{
  VertexLabeling nu({0, 0, 1, 1, 1, 2}, 3);
  Forest tree = Forest::parse("1-2,2-3", 3);
  auto taus = splice_set(tree, nu);
  // Edge 1-2: 2*3 choices, edge 2-3: 2 remaining points of vertex 2 times 1.
  CHECK(taus.size() == 12);
  std::set<Permutation> distinct(taus.begin(), taus.end());
  CHECK(distinct.size() == taus.size());
  for (const auto& tau : taus) {
    CHECK(tau.is_involution());
    int moved = 0;
    std::multiset<std::pair<int, int>> projected;
    for (int x = 0; x < 6; ++x)
      if (tau(x) != x) {
        ++moved;
        if (x < tau(x))
          projected.insert({std::min(nu(x), nu(tau(x))), std::max(nu(x), nu(tau(x)))});
      }
    CHECK(moved == 4);
    CHECK(projected == std::multiset<std::pair<int, int>>{{0, 1}, {1, 2}});
  }
}

TEST_CASE("colored splicing keeps same-colored partners")
{
  VertexLabeling nu({0, 0, 1, 1}, 2);
  Coloring gamma = Coloring::parse("1,2,1,2", 4);
  auto taus = splice_set_colored(Forest::parse("1-2", 2), nu, gamma);
  CHECK(taus.size() == 2);
  for (const auto& t : taus)
    for (int x = 0; x < 4; ++x)
      CHECK(gamma(x) == gamma(t(x)));
}

TEST_CASE("splice count closed form")
{
  CHECK(splice_count_closed_form(VertexLabeling({0, 0, 1, 1}, 2)) == 4);
  CHECK(splice_count_closed_form(VertexLabeling({0, 1, 2}, 3)) == 0);
  for (const auto& labels : std::vector<std::vector<int>>{{0, 0, 1, 1}, {0, 1, 1, 2, 2, 2}, {0, 0, 0, 1, 2, 3, 3, 3}})
  {
    int k = *std::max_element(labels.begin(), labels.end()) + 1;
    SpliceCountCheck c = splice_count_check(VertexLabeling(labels, k));
    CHECK(c.holds);
  }
}

TEST_CASE("theta tau is a single cycle")
{
  Permutation theta = Permutation::parse("(1 2 3)(4 5)(6 7 8)");
  VertexLabeling nu = VertexLabeling::by_cycles(theta);
  for (const auto& tree : spanning_trees(3))
    CHECK(splicing_cyclicity_check(theta, nu, tree));
}

TEST_CASE("canonical splicing words")
{
  Permutation theta = Permutation::parse("(1 2)(3 4)");
  Coloring gamma = Coloring::constant(4);
  VertexLabeling nu = VertexLabeling::by_cycles(theta);
  auto words = canonical_splicing_polynomial(theta, gamma, nu, Forest::parse("1-2", 2));
  REQUIRE(words.size() == 4);
  for (const auto& w : words) {
    CHECK(w.letters.size() == 4);
    CHECK(w.letters[0].index == 0);
    CHECK(w.kept_count() == 2);
    for (const auto& l : w.letters)
      CHECK(l.kept == (w.tau(l.index) == l.index));
  }
  // tau = (1 3): theta tau = (1 4 3 2) read from point 1 keeps 4 and 2.
  bool found = false;
  for (const auto& w : words)
    if (w.tau == Permutation::parse("(1 3)", 4)) {
      found = true;
      std::vector<int> order;
      for (const auto& l : w.letters)
        order.push_back(l.index);
      CHECK(order == std::vector<int>{0, 3, 2, 1});
      auto kept = w.kept_letters();
      REQUIRE(kept.size() == 2);
      CHECK(kept[0].index == 3);
      CHECK(kept[1].index == 1);
    }
  CHECK(found);
}

TEST_CASE("kept word length is n - 2k + 2")
{
  for (const char* t : {"(1 2 3)(4 5 6)", "(1 2)(3 4)(5 6)", "(1 2 3 4)(5 6)", "(1 2 3 4 5)(6)"}) {
    Permutation theta = Permutation::parse(t);
    VertexLabeling nu = VertexLabeling::by_cycles(theta);
    const int k = theta.cycle_count();
    for (const auto& tree : spanning_trees(k))
      for (const auto& w : canonical_splicing_polynomial(theta, Coloring::constant(theta.size()), nu, tree))
        CHECK(w.kept_count() == theta.size() - 2 * k + 2);
  }
}

TEST_CASE("argument validation")
{
  Permutation theta = Permutation::parse("(1 2)(3 4)");
  VertexLabeling bad({0, 1, 0, 1}, 2);
  CHECK_THROWS_AS(canonical_splicing_polynomial(theta, Coloring::constant(4), bad, Forest::parse("1-2", 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(splice_set(Forest::parse("", 2), VertexLabeling({0, 1}, 2)), std::invalid_argument);
}
