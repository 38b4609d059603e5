#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arbor/errors.hpp"
#include "arbor/mapcount.hpp"
#include "oracles.hpp"

#include <random>

using namespace arbor;

namespace {

std::vector<int> images(const Permutation& p)
{
  return {p.images().begin(), p.images().end()};
}

} // namespace

TEST_CASE("small instances")
{
  auto count = [](const char* theta, const char* gamma) {
    Permutation t = Permutation::parse(theta);
    return count_map0(MapInstance(t, Coloring::parse(gamma, t.size())));
  };
  MapCountReport r = count("(1 2 3 4)", "constant");
  CHECK(r.planar == 2);
  CHECK(r.total == 3);
  CHECK(r.genus_histogram.at(1) == 1);
  CHECK(count("(1 2)", "1,2").planar == 0);
  CHECK(count("(1 2)(3 4)", "constant").planar == 2);
  CHECK(count("(1 2)(3 4)", "constant").total == 2);
  CHECK(count("(1 2 3)", "constant").total == 0);
}

TEST_CASE("agrees with a scan over all permutations")
{
  std::mt19937_64 rng(3);
  for (int n : {2, 4, 6}) {
    std::vector<int> a(static_cast<std::size_t>(n));
    std::iota(a.begin(), a.end(), 0);
    do {
      Permutation theta(a);
      for (int palette : {1, 2, 3}) {
        std::vector<int> c(static_cast<std::size_t>(n));
        for (auto& x : c)
          x = static_cast<int>(rng() % static_cast<unsigned>(palette));
        MapInstance inst(theta, Coloring(c));
        auto mine = count_map0(inst);
        auto ref = oracle::brute_maps(a, c);
        CHECK(mine.total == ref.total);
        CHECK(mine.planar == ref.planar);
      }
    } while (std::next_permutation(a.begin(), a.end()));
  }
}

TEST_CASE("single cycles give Catalan numbers")
{
  for (int n : {2, 4, 6, 8}) {
    Permutation theta = permutation_with_cycle_lengths({n});
    long planar = count_map0(MapInstance(theta, Coloring::constant(n))).planar;
    CHECK(Integer(planar) == oracle::catalan_recurrence(static_cast<unsigned>(n / 2)));
  }
}

TEST_CASE("genus")
{
  Permutation theta = Permutation::parse("(1 2 3 4)");
  CHECK(genus(theta, Matching(Permutation::parse("(1 3)(2 4)"))) == 1);
  CHECK(genus(theta, Matching(Permutation::parse("(1 2)(3 4)"))) == 0);
  CHECK_THROWS_AS(genus(Permutation::parse("(1 2)(3 4)"), Matching(Permutation::parse("(1 2)(3 4)"))),
                  std::invalid_argument);
}

TEST_CASE("every produced gluing is a transitive color-preserving matching")
{
  Permutation theta = Permutation::parse("(1 2 3)(4 5)(6 7 8)");
  Coloring gamma = Coloring::parse("1,2,1,2,1,1,2,1", 8);
  for (const auto& iota : enumerate_maps(MapInstance(theta, gamma))) {
    auto im = images(iota.permutation());
    for (int x = 0; x < 8; ++x) {
      CHECK(im[static_cast<std::size_t>(x)] != x);
      CHECK(gamma(x) == gamma(iota(x)));
    }
    CHECK(oracle::transitive(images(theta), im));
    CHECK(genus(theta, iota) >= 0);
  }
}

TEST_CASE("planar bound for monochrome instances")
{
  for (const auto& lengths : std::vector<std::vector<int>>{{2}, {4}, {2, 2}, {3, 1}, {2, 2, 2}, {3, 3}, {4, 2, 2}, {1, 1}}) {
    Permutation theta = permutation_with_cycle_lengths(lengths);
    BoundCheck b = check_kahuna_bound(MapInstance(theta, Coloring::constant(theta.size())));
    CHECK(b.holds);
  }
  // p n^(k-2) 2^(n-2k+2): (1 2)(3 4) gives 4 * 1 * 4 = 16.
  CHECK(kahuna_bound(Permutation::parse("(1 2)(3 4)")) == 16);
  CHECK(kahuna_bound(Permutation::parse("(1 2 3 4)")) == make_rational(4 * 16, 4));
  CHECK(kahuna_bound(Permutation::parse("", 4)) == 0);
  CHECK_THROWS_AS(check_kahuna_bound(MapInstance(Permutation::parse("(1 2)"), Coloring::parse("1,2", 2))),
                  std::invalid_argument);
}

TEST_CASE("relabeling invariance")
{
  std::mt19937_64 rng(5);
  Permutation theta = Permutation::parse("(1 2 3)(4 5 6)");
  Coloring gamma = Coloring::parse("1,2,1,1,2,1", 6);
  long base = count_map0(MapInstance(theta, gamma)).planar;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> s(6);
    std::iota(s.begin(), s.end(), 0);
    std::shuffle(s.begin(), s.end(), rng);
    Permutation sigma(s);
    Permutation conj = compose(compose(sigma, theta), sigma.inverse());
    std::vector<int> c(6);
    for (int x = 0; x < 6; ++x)
      c[static_cast<std::size_t>(sigma(x))] = gamma(x);
    CHECK(count_map0(MapInstance(conj, Coloring(c))).planar == base);
  }
}

TEST_CASE("generating table")
{
  auto rows = generating_table({2}, {4});
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].planar == 1);
  CHECK(rows[1].planar == 2);
  for (const auto& r : rows)
    CHECK(r.below_majorant);
  CHECK(generating_table({}, {}).empty());
  CHECK_THROWS_AS(generating_table({4}, {4}), CapExceeded);
  CHECK_THROWS_AS(generating_table({2}, {1, 2}), std::invalid_argument);
}

TEST_CASE("instances reject mismatched sizes")
{
  CHECK_THROWS_AS(MapInstance(Permutation::parse("(1 2)"), Coloring::constant(3)), std::invalid_argument);
}
