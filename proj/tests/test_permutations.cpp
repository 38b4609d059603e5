#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arbor/permutations.hpp"
#include "oracles.hpp"

#include <random>
#include <set>

using namespace arbor;

TEST_CASE("cycle notation round trip")
{
  Permutation p = Permutation::parse("(1 3 2)(4 5)");
  CHECK(p.size() == 5);
  CHECK(p(0) == 2);
  CHECK(p(2) == 1);
  CHECK(p(1) == 0);
  CHECK(p.to_string() == "(1 3 2)(4 5)");
  CHECK(Permutation::parse("(1 2)", 4).to_string() == "(1 2)(3)(4)");
  CHECK(Permutation::parse("", 3).is_identity());
  CHECK(Permutation::parse(p.to_string()) == p);
}

TEST_CASE("cycle notation errors carry a column")
{
  auto message = [](const std::string& text) {
    try {
      Permutation::parse(text);
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("(1 2").find("column") != std::string::npos);
  CHECK(message("(1 2)x").find("column 6") != std::string::npos);
  CHECK_FALSE(message("(1 2)(2 3)").empty());
  CHECK_FALSE(message("(0 1)").empty());
  CHECK_THROWS_AS(Permutation::parse("(1 5)", 3), std::invalid_argument);
}

TEST_CASE("composition applies the right factor first")
{
  Permutation p = Permutation::parse("(1 2)", 3);
  Permutation q = Permutation::parse("(2 3)", 3);
  CHECK(compose(p, q).to_string() == "(1 2 3)");
  CHECK(compose(q, p).to_string() == "(1 3 2)");
  CHECK(compose(p, p.inverse()).is_identity());
}

TEST_CASE("cycle lengths sum to n and c(pq) = c(qp)")
{
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 8; ++n)
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<int> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
      std::iota(a.begin(), a.end(), 0);
      std::iota(b.begin(), b.end(), 0);
      std::shuffle(a.begin(), a.end(), rng);
      std::shuffle(b.begin(), b.end(), rng);
      Permutation p(a), q(b);
      std::size_t total = 0;
      for (const auto& c : p.cycles())
        total += c.size();
      CHECK(total == static_cast<std::size_t>(n));
      CHECK(p.cycle_count() == oracle::cycles_of(a));
      CHECK(compose(p, q).cycle_count() == compose(q, p).cycle_count());
    }
}

TEST_CASE("matchings are the (n-1)!! fixed-point-free involutions")
{
  for (int n : {2, 4, 6, 8}) {
    auto ms = matchings(n);
    Integer expected = 1;
    for (int j = n - 1; j > 0; j -= 2)
      expected *= j;
    CHECK(Integer(static_cast<long>(ms.size())) == expected);
    CHECK(matching_count(static_cast<unsigned>(n)) == expected);
    std::set<Permutation> distinct;
    for (const auto& m : ms) {
      CHECK(m.permutation().is_involution());
      for (int x = 0; x < n; ++x)
        CHECK(m(x) != x);
      distinct.insert(m.permutation());
    }
    CHECK(distinct.size() == ms.size());
  }
  CHECK(matchings(5).empty());
  CHECK_THROWS_AS(Matching(Permutation::parse("(1 2)", 3)), std::invalid_argument);
}

TEST_CASE("colorings")
{
  CHECK(Coloring::parse("constant", 3).is_constant());
  Coloring g = Coloring::parse("1,2,1,2", 4);
  CHECK(g(1) == 1);
  CHECK(g.to_string() == "1,2,1,2");
  CHECK_FALSE(g.is_injective());
  CHECK(Coloring::parse("1 2 3", 3).is_injective());
  CHECK_THROWS_AS(Coloring::parse("1,2", 3), std::invalid_argument);
  CHECK_THROWS_AS(Coloring::parse("1,a", 2), std::invalid_argument);
}

TEST_CASE("transitivity")
{
  Permutation theta = Permutation::parse("(1 2)(3 4)");
  CHECK_FALSE(is_transitive_pair(theta, Permutation::parse("(1 2)(3 4)")));
  CHECK(is_transitive_pair(theta, Permutation::parse("(1 3)(2 4)")));
}

TEST_CASE("set partitions are counted by the Bell numbers")
{
  const std::vector<std::size_t> bell{1, 1, 2, 5, 15, 52};
  for (int k = 1; k <= 5; ++k) {
    CHECK(partitions(k).size() == bell[static_cast<std::size_t>(k)]);
    CHECK(partitions(k).size() == oracle::all_partitions(k).size());
  }
  SetPartition p = SetPartition::from_labels(std::vector<int>{0, 1, 0});
  CHECK(p.to_string() == "{{1,3},{2}}");
  CHECK(p.refines(SetPartition::coarsest(3)));
  CHECK(SetPartition::finest(3).refines(p));
  CHECK_FALSE(p.refines(SetPartition::finest(3)));
}

TEST_CASE("Moebius function matches its defining recursion")
{
  for (int k = 1; k <= 4; ++k) {
    oracle::MoebiusTable table(k);
    const auto& ps = table.partitions();
    for (std::size_t a = 0; a < ps.size(); ++a)
      for (std::size_t b = 0; b < ps.size(); ++b) {
        SetPartition pa = SetPartition::from_labels(ps[a]);
        SetPartition pb = SetPartition::from_labels(ps[b]);
        CHECK(moebius(pa, pb) == table(a, b));
      }
  }
  CHECK(moebius(SetPartition::finest(4), SetPartition::coarsest(4)) == -6);
}

TEST_CASE("joint cumulants agree with the log of the moment series")
{
  for (int k = 1; k <= 3; ++k) {
    std::vector<unsigned> a(static_cast<std::size_t>(k), 0);
    for (;;) {
      Rational value = joint_cumulant(
          [&](std::uint32_t mask) {
            unsigned deg = 0;
            for (int i = 0; i < k; ++i)
              if (mask >> i & 1u)
                deg += a[static_cast<std::size_t>(i)];
            return Rational(oracle::gaussian_moment(deg));
          },
          k);
      CHECK(value == oracle::cumulant_by_log_series(a));
      std::size_t i = 0;
      while (i < a.size() && ++a[i] == 5)
        a[i++] = 0;
      if (i == a.size())
        break;
    }
  }
}

TEST_CASE("rational helpers")
{
  CHECK(parse_rational("-3/6") == make_rational(-1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK(catalan(4) == 14);
  for (unsigned m = 0; m < 10; ++m)
    CHECK(catalan(m) == oracle::catalan_recurrence(m));
  CHECK(matching_count(7) == 0);
}
