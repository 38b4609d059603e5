#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arbor/errors.hpp"
#include "arbor/guemc.hpp"
#include "arbor/mapcount.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace arbor;

TEST_CASE("GUE samples are Hermitian with the right scale")
{
  ComplexMatrix one = sample_gue(1, 42);
  CHECK(one.rows() == 1);
  CHECK(one(0, 0).imag() == 0);
  ComplexMatrix m = sample_gue(6, 7);
  CHECK((m - m.adjoint()).norm() == doctest::Approx(0));
  for (int a = 0; a < 6; ++a)
    CHECK(m(a, a).imag() == 0);
  CHECK(sample_gue(6, 7) == m);
  CHECK_THROWS_AS(sample_gue(0, 1), std::invalid_argument);
}

TEST_CASE("trace moments match the exact finite-N values")
{
  const int N = 4;
  const int draws = 10000;
  std::mt19937_64 rng(99);
  double s2 = 0, s2sq = 0, s4 = 0, s4sq = 0;
  double off = 0, offsq = 0;
  for (int d = 0; d < draws; ++d) {
    ComplexMatrix x = sample_gue(N, rng);
    double t2 = (x * x).trace().real() / (N * N);
    double t4 = (x * x * x * x).trace().real() / (N * N * N);
    double e = (x(0, 1) * x(1, 0)).real();
    s2 += t2;
    s2sq += t2 * t2;
    s4 += t4;
    s4sq += t4 * t4;
    off += e;
    offsq += e * e;
  }
  auto within = [&](double sum, double sumsq, double target) {
    double mean = sum / draws;
    double se = std::sqrt((sumsq / draws - mean * mean) / draws);
    return std::abs(mean - target) <= 5 * se;
  };
  CHECK(within(s2, s2sq, 1.0));
  const double exact4 = static_cast<double>(oracle::gue_trace_moment(N, 4)) / (N * N * N);
  CHECK(exact4 == doctest::Approx(2.0 + 1.0 / (N * N)));
  CHECK(within(s4, s4sq, exact4));
  // E Xi(1,2) Xi(2,1) = 1.
  CHECK(within(off, offsq, 1.0));
}

TEST_CASE("cumulant estimates")
{
  ThooftEstimate indep = thooft_estimate(Permutation::parse("(1 2)"), Coloring::parse("1,2", 2), 6, 4000, 3);
  CHECK(std::abs(indep.estimate) <= 5 * indep.standard_error);

  ThooftEstimate single = thooft_estimate(Permutation::parse("(1 2 3 4)"), Coloring::constant(4), 12, 4000, 5);
  // Exact value at N = 12 is 2 + 1/N^2.
  CHECK(std::abs(single.estimate - (2.0 + 1.0 / 144)) <= 5 * single.standard_error);
  CHECK(single.seed == 5);

  ThooftEstimate pair = thooft_estimate(Permutation::parse("(1 2)(3 4)"), Coloring::constant(4), 12, 4000, 8);
  CHECK(std::abs(pair.estimate - 2.0) <= 5 * pair.standard_error);
}

TEST_CASE("estimates are deterministic and independent of the worker count")
{
  Permutation theta = Permutation::parse("(1 2 3)(4 5 6)");
  Coloring gamma = Coloring::constant(6);
  ThooftEstimate a = thooft_estimate(theta, gamma, 5, 1000, 77, 1);
  ThooftEstimate b = thooft_estimate(theta, gamma, 5, 1000, 77, 3);
  CHECK(a.estimate == b.estimate);
  CHECK(a.standard_error == b.standard_error);
  ThooftEstimate c = thooft_estimate(theta, gamma, 5, 1000, 78, 1);
  CHECK(a.estimate != c.estimate);
}

TEST_CASE("standard errors shrink with more samples")
{
  Permutation theta = Permutation::parse("(1 2 3 4)");
  ThooftEstimate small = thooft_estimate(theta, Coloring::constant(4), 6, 500, 1);
  ThooftEstimate large = thooft_estimate(theta, Coloring::constant(4), 6, 8000, 1);
  CHECK(large.standard_error < small.standard_error);
}

TEST_CASE("convergence report")
{
  ConvergenceReport r = convergence_report(Permutation::parse("(1 2 3 4)"), Coloring::constant(4), {8, 4}, 2000, 9);
  CHECK(r.target == 2);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].N == 4);
  CHECK(r.rows[1].N == 8);
}

TEST_CASE("derivative identity on symbolic matrices")
{
  Permutation theta = Permutation::parse("(1 2)(3 4)");
  VertexLabeling nu = VertexLabeling::by_cycles(theta);
  Forest edge = Forest::parse("1-2", 2);
  for (int N : {1, 2}) {
    GhastlyCheck c = ghastly_identity_check(theta, Coloring::constant(4), nu, edge, N);
    CHECK(c.holds);
    CHECK_FALSE(c.lhs.is_zero());
  }
  Permutation star = Permutation::parse("(1 2 3)");
  GhastlyCheck trivial = ghastly_identity_check(star, Coloring::constant(3), VertexLabeling::by_cycles(star),
                                                Forest::parse("", 1), 1);
  CHECK(trivial.holds);
  CHECK(ghastly_identity_check(theta, Coloring::parse("1,2,2,1", 4), nu, edge, 2).holds);
}

TEST_CASE("derivative identity over all small permutations")
{
  for (int n = 1; n <= 3; ++n) {
    std::vector<int> a(static_cast<std::size_t>(n));
    std::iota(a.begin(), a.end(), 0);
    do {
      Permutation theta(a);
      VertexLabeling nu = VertexLabeling::by_cycles(theta);
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> colors;
        for (int x = 0; x < n; ++x)
          colors.push_back(static_cast<int>(mask >> x & 1u));
        for (const auto& tree : spanning_trees(theta.cycle_count()))
          for (int N : {1, 2})
            CHECK(ghastly_identity_check(theta, Coloring(colors), nu, tree, N).holds);
      }
    } while (std::next_permutation(a.begin(), a.end()));
  }
}

TEST_CASE("finite-N cumulant identity")
{
  ExactAndScaryCheck c = exact_and_scary_check(Permutation::parse("(1 2)"), Coloring::constant(2), 1);
  CHECK(c.holds);
  CHECK(c.lhs == 1);
  ExactAndScaryCheck d = exact_and_scary_check(Permutation::parse("(1 2)(3 4)"), Coloring::constant(4), 2);
  CHECK(d.holds);
  // Var(tr Xi^2) = 2 N^2.
  CHECK(d.lhs == 8);
  ExactAndScaryCheck e = exact_and_scary_check(Permutation::parse("(1)(2)"), Coloring::parse("1,2", 2), 2);
  CHECK(e.holds);
  CHECK(e.lhs == 0);
  for (int N : {1, 2}) {
    ExactAndScaryCheck s = exact_and_scary_check(Permutation::parse("(1 2 3 4)"), Coloring::constant(4), N);
    CHECK(s.holds);
    CHECK(s.lhs == oracle::gue_trace_moment(N, 4));
  }
}

TEST_CASE("guards")
{
  Permutation big = Permutation::parse("(1 2 3 4 5 6)");
  CHECK_THROWS_AS(exact_and_scary_check(big, Coloring::constant(6), 1), CapExceeded);
  CHECK_THROWS_AS(exact_and_scary_check(Permutation::parse("(1 2)"), Coloring::constant(2), 3), CapExceeded);
  Permutation id4 = Permutation::parse("", 4);
  ExactAndScaryCheck four = exact_and_scary_check(id4, Coloring::constant(4), 2);
  CHECK(four.holds);
  // Fourth cumulant of tr Xi, a centered Gaussian.
  CHECK(four.lhs == 0);
}

TEST_CASE("Gaussian rationals")
{
  GaussianRational i(0, 1);
  CHECK(i * i == GaussianRational(-1));
  CHECK(to_string(GaussianRational(make_rational(1, 2), -1)) == "(1/2-1i)");
  CHECK(to_string(GaussianRational(3)) == "3");
}
