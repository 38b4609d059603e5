// Acceptance run: one line per criterion, nonzero exit when any criterion fails.
#include "arbor/arboreal.hpp"
#include "arbor/freewick.hpp"
#include "arbor/gausscumulant.hpp"
#include "arbor/guemc.hpp"
#include "arbor/mapcount.hpp"
#include "arbor/permutations.hpp"
#include "arbor/splicing.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace arbor;

namespace {

struct Outcome
{
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::function<Outcome()>& run)
{
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = run();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass)
    ++failures;
  std::printf("criterion %d: %s (%s; %.1fs)\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
  std::fflush(stdout);
}

void integer_partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    integer_partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

struct Instance
{
  Permutation theta;
  Coloring gamma;
};

// Every cycle type with n in {2,4,6,8}: the monochrome coloring plus 100 random ones.
std::vector<Instance> criterion_one_instances()
{
  std::mt19937_64 rng(20240611);
  std::vector<Instance> out;
  for (int n : {2, 4, 6, 8}) {
    std::vector<std::vector<int>> types;
    std::vector<int> cur;
    integer_partitions(n, n, cur, types);
    for (const auto& lengths : types) {
      Permutation theta = permutation_with_cycle_lengths(lengths);
      out.push_back({theta, Coloring::constant(n)});
      for (int r = 0; r < 100; ++r) {
        int palette = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
        std::vector<int> colors(static_cast<std::size_t>(n));
        for (auto& c : colors)
          c = static_cast<int>(rng() % static_cast<unsigned>(palette));
        out.push_back({theta, Coloring(colors)});
      }
    }
  }
  return out;
}

std::vector<int> images(const Permutation& p)
{
  std::vector<int> v(static_cast<std::size_t>(p.size()));
  for (int x = 0; x < p.size(); ++x)
    v[static_cast<std::size_t>(x)] = p(x);
  return v;
}

std::vector<int> colors_of(const Coloring& g)
{
  return {g.colors().begin(), g.colors().end()};
}

Outcome main_theorem(const std::vector<Instance>& instances)
{
  Outcome o;
  long checked = 0;
  for (const auto& inst : instances) {
    MapCountReport r = count_map0(MapInstance(inst.theta, inst.gamma));
    oracle::MapCounts brute = oracle::brute_maps(images(inst.theta), colors_of(inst.gamma));
    ArbEvaluation arb = arb_evaluate(inst.theta, inst.gamma, VertexLabeling::by_cycles(inst.theta));
    MainTheoremCheck m = main_theorem_check(inst.theta, inst.gamma);
    bool ok = r.planar == brute.planar && r.total == brute.total && arb.value == Rational(r.planar) && m.equal &&
              m.lhs_count == r.planar;
    if (!ok && o.pass) {
      o.pass = false;
      o.detail = "mismatch at theta=" + inst.theta.to_string() + " gamma=" + inst.gamma.to_string() +
                 " brute=" + std::to_string(brute.planar) + " arb=" + to_string(arb.value) + "; ";
    }
    ++checked;
  }
  o.detail += std::to_string(checked) + " instances";
  return o;
}

Outcome catalan_anchor()
{
  Outcome o;
  const long expected[] = {1, 2, 5, 14};
  std::ostringstream d;
  for (int m = 1; m <= 4; ++m) {
    int n = 2 * m;
    Permutation theta = permutation_with_cycle_lengths({n});
    oracle::MapCounts brute = oracle::brute_maps(images(theta), std::vector<int>(static_cast<std::size_t>(n), 0));
    Rational arb = arb_evaluate(theta, Coloring::constant(n), VertexLabeling::by_cycles(theta)).value;
    bool ok = brute.planar == expected[m - 1] && oracle::catalan_recurrence(static_cast<unsigned>(m)) == brute.planar &&
              arb == Rational(brute.planar);
    o.pass = o.pass && ok;
    d << "n=" << n << ":" << brute.planar << " ";
  }
  o.detail = d.str() + "against 1 2 5 14";
  return o;
}

Outcome bounds(const std::vector<Instance>& instances)
{
  Outcome o;
  long checked = 0;
  for (const auto& inst : instances) {
    MapCountReport r = count_map0(MapInstance(inst.theta, inst.gamma));
    bool ok = Rational(r.planar) <= kahuna_bound(inst.theta);
    if (inst.gamma.is_constant())
      ok = ok && check_kahuna_bound(MapInstance(inst.theta, inst.gamma)).holds;
    ok = ok && arb_bound_check(inst.theta, inst.gamma, VertexLabeling::by_cycles(inst.theta)).holds;
    if (!ok && o.pass) {
      o.pass = false;
      o.detail = "violated at theta=" + inst.theta.to_string() + " gamma=" + inst.gamma.to_string() + "; ";
    }
    ++checked;
  }
  o.detail += std::to_string(checked) + " instances";
  return o;
}

void compositions(int budget, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
  if (static_cast<int>(cur.size()) == parts) {
    out.push_back(cur);
    return;
  }
  for (int s = 1; s <= budget - (parts - static_cast<int>(cur.size()) - 1); ++s) {
    cur.push_back(s);
    compositions(budget - s, parts, cur, out);
    cur.pop_back();
  }
}

Outcome splice_counts()
{
  Outcome o;
  long checked = 0, nonzero = 0;
  for (int k = 1; k <= 4; ++k) {
    std::vector<std::vector<int>> sizes;
    std::vector<int> cur;
    compositions(8, k, cur, sizes);
    for (const auto& fiber : sizes) {
      std::vector<int> nu;
      for (int v = 0; v < k; ++v)
        nu.insert(nu.end(), static_cast<std::size_t>(fiber[static_cast<std::size_t>(v)]), v);
      SpliceCountCheck c = splice_count_check(VertexLabeling(nu, k));
      if (!(c.holds && c.lhs == c.rhs))
        o.pass = false;
      nonzero += c.lhs != 0;
      ++checked;
    }
  }
  o.detail = std::to_string(checked) + " compositions, " + std::to_string(nonzero) + " with nonzero count";
  return o;
}

Outcome kirchhoff()
{
  Outcome o;
  std::ostringstream d;
  for (int k = 1; k <= 6; ++k) {
    KirchhoffCheck c = kirchhoff_check(k);
    o.pass = o.pass && c.holds && Integer(static_cast<long>(c.tree_count)) == oracle::matrix_tree_count(k);
    d << c.tree_count << (k < 6 ? " " : "");
  }
  o.detail = "tree counts " + d.str();
  return o;
}

std::vector<RationalPolynomial> vector_monomials()
{
  std::vector<RationalPolynomial> out;
  for (unsigned a = 0; a <= 4; ++a)
    for (unsigned b = 0; a + b <= 4; ++b)
      for (unsigned c = 0; a + b + c <= 4; ++c)
        out.push_back(RationalPolynomial::variable(0, a) * RationalPolynomial::variable(1, b) *
                      RationalPolynomial::variable(2, c));
  return out;
}

std::vector<RationalPolynomial> symmetric_monomials(int k, int degree)
{
  std::vector<Var> vars;
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j)
      vars.push_back(symmetric_var(i, j));
  std::vector<RationalPolynomial> out;
  std::function<void(std::size_t, int, RationalPolynomial)> rec = [&](std::size_t from, int left,
                                                                      RationalPolynomial m) {
    out.push_back(m);
    if (left == 0)
      return;
    for (std::size_t v = from; v < vars.size(); ++v)
      rec(v, left - 1, m * RationalPolynomial::variable(vars[v]));
  };
  rec(0, degree, RationalPolynomial(1));
  return out;
}

RationalPolynomial random_polynomial(std::mt19937_64& rng)
{
  RationalPolynomial p;
  int terms = 1 + static_cast<int>(rng() % 4);
  for (int t = 0; t < terms; ++t) {
    RationalPolynomial m(make_rational(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 4)));
    int deg = static_cast<int>(rng() % 5);
    for (int d = 0; d < deg; ++d)
      m = m * RationalPolynomial::variable(static_cast<Var>(rng() % 3));
    p += m;
  }
  return p;
}

Outcome gaussian_identities()
{
  Outcome o;
  std::ostringstream d;
  const auto monos = vector_monomials();
  const std::size_t M = monos.size();
  long tuples = 0;
  for (int k = 1; k <= 4; ++k) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    std::vector<RationalPolynomial> fs(static_cast<std::size_t>(k));
    while (true) {
      for (int i = 0; i < k; ++i)
        fs[static_cast<std::size_t>(i)] = monos[idx[static_cast<std::size_t>(i)]];
      if (!malliavin_check(fs).holds && o.pass) {
        o.pass = false;
        d << "malliavin failed at k=" << k << "; ";
      }
      ++tuples;
      int pos = k - 1;
      while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == M)
        idx[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 0)
        break;
    }
  }
  d << tuples << " malliavin tuples, ";
  long sym = 0;
  for (int k = 1; k <= 4; ++k)
    for (const auto& f : symmetric_monomials(k, 4)) {
      bool ok = bkar_check(f, k).holds && connected_bkar_check(f, k).holds;
      if (!ok && o.pass) {
        o.pass = false;
        d << "bkar failed at k=" << k << " f=" << to_string(f, VariableSpace::Symmetric) << "; ";
      }
      ++sym;
    }
  d << sym << " bkar monomials, ";
  std::mt19937_64 rng(8675309);
  int pairs = 0;
  while (pairs < 100) {
    RationalPolynomial f = random_polynomial(rng), g = random_polynomial(rng);
    CovarianceIdentityCheck c = covariance_identity_check(f, g);
    if (!(c.holds && c.covariance == c.tree_formula && c.covariance == c.interpolation) && o.pass) {
      o.pass = false;
      d << "covariance failed; ";
    }
    ++pairs;
  }
  d << pairs << " covariance pairs";
  o.detail = d.str();
  return o;
}

Outcome finite_n()
{
  Outcome o;
  long ghastly = 0, scary = 0;
  for (int n = 1; n <= 4; ++n) {
    std::vector<int> a(static_cast<std::size_t>(n));
    std::iota(a.begin(), a.end(), 0);
    do {
      Permutation theta(a);
      VertexLabeling nu = VertexLabeling::by_cycles(theta);
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> colors;
        for (int x = 0; x < n; ++x)
          colors.push_back(static_cast<int>(mask >> x & 1u));
        Coloring gamma(colors);
        for (int N : {1, 2}) {
          for (const auto& tree : spanning_trees(theta.cycle_count())) {
            if (!ghastly_identity_check(theta, gamma, nu, tree, N).holds && o.pass) {
              o.pass = false;
              o.detail += "ghastly failed at theta=" + theta.to_string() + " N=" + std::to_string(N) + "; ";
            }
            ++ghastly;
          }
          if (!exact_and_scary_check(theta, gamma, N).holds && o.pass) {
            o.pass = false;
            o.detail += "exact-and-scary failed at theta=" + theta.to_string() + " N=" + std::to_string(N) + "; ";
          }
          ++scary;
        }
      }
    } while (std::next_permutation(a.begin(), a.end()));
  }
  o.detail += std::to_string(ghastly) + " tree checks, " + std::to_string(scary) + " cumulant checks";
  return o;
}

Outcome thooft()
{
  Outcome o;
  std::ostringstream d;
  const long samples = 10000;
  const std::uint64_t seed = 1;
  for (const char* text : {"(1 2 3 4)", "(1 2)(3 4)"}) {
    Permutation theta = Permutation::parse(text);
    Coloring gamma = Coloring::constant(4);
    const double target = static_cast<double>(count_map0(MapInstance(theta, gamma)).planar);
    ThooftEstimate small = thooft_estimate(theta, gamma, 25, samples, seed);
    ThooftEstimate large = thooft_estimate(theta, gamma, 100, samples, seed);
    double err_small = std::abs(small.estimate - target);
    double err_large = std::abs(large.estimate - target);
    bool within = err_large <= 5 * large.standard_error;
    bool improves = err_large < err_small;
    o.pass = o.pass && within && improves;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s target %g: N=25 %.5f (se %.5f), N=100 %.5f (se %.5f), within=%d improves=%d; ",
                  text, target, small.estimate, small.standard_error, large.estimate, large.standard_error, within,
                  improves);
    d << buf;
  }
  o.detail = d.str();
  return o;
}

Forest random_forest(int k, std::mt19937_64& rng)
{
  static std::map<int, std::vector<Forest>> cache;
  auto& all = cache[k];
  if (all.empty())
    all = forests(k);
  return all[rng() % all.size()];
}

std::vector<Rational> distinct_weights(std::size_t count, std::mt19937_64& rng)
{
  std::vector<Rational> w;
  while (w.size() < count) {
    Rational r = make_rational(1 + static_cast<long>(rng() % 9999), 10000);
    if (std::find(w.begin(), w.end(), r) == w.end())
      w.push_back(r);
  }
  return w;
}

bool no_loops(const RationalMatrix& a, int k)
{
  for (int m = 2; m <= 5; ++m) {
    std::vector<int> seq(static_cast<std::size_t>(m), 0);
    while (true) {
      std::vector<Rational> vals;
      for (int t = 0; t < m; ++t)
        vals.push_back(a[static_cast<std::size_t>(seq[static_cast<std::size_t>(t)])]
                        [static_cast<std::size_t>(seq[static_cast<std::size_t>((t + 1) % m)])]);
      std::sort(vals.begin(), vals.end());
      if (vals[0] != vals[1])
        return false;
      int pos = m - 1;
      while (pos >= 0 && ++seq[static_cast<std::size_t>(pos)] == k)
        seq[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 0)
        break;
    }
  }
  return true;
}

Outcome properties()
{
  Outcome o;
  std::ostringstream d;
  std::mt19937_64 rng(4242);

  bool loops_ok = true;
  for (int trial = 0; trial < 1000; ++trial) {
    int k = 2 + static_cast<int>(rng() % 4);
    Forest f = random_forest(k, rng);
    RationalMatrix a = SymbolicWeightMatrix(f).substitute(distinct_weights(f.edges().size(), rng));
    loops_ok = loops_ok && no_loops(a, k);
  }
  d << "NoLoops " << (loops_ok ? "ok" : "FAILED") << ", ";

  bool posdef_ok = true, round_ok = true;
  for (int trial = 0; trial < 1000; ++trial) {
    int k = 1 + static_cast<int>(rng() % 4);
    Forest f = random_forest(k, rng);
    std::vector<Rational> w = distinct_weights(f.edges().size(), rng);
    RationalMatrix a = SymbolicWeightMatrix(f).substitute(w);
    PsdResult psd = psd_check(a);
    posdef_ok = posdef_ok && is_co_ultrametric(a) && psd.positive_definite;
    GaplessData g = gapless_data(a);
    bool ok = g.gapless && g.forest && g.articulation == static_cast<int>(f.edges().size()) &&
              g.co_articulation == k - static_cast<int>(f.edges().size()) &&
              g.forest->components() == f.components();
    if (ok) {
      ok = SymbolicWeightMatrix(*g.forest).substitute(g.edge_weights) == a;
      auto sorted_in = w, sorted_out = g.edge_weights;
      std::sort(sorted_in.begin(), sorted_in.end());
      std::sort(sorted_out.begin(), sorted_out.end());
      ok = ok && sorted_in == sorted_out;
    }
    round_ok = round_ok && ok;
  }
  for (int k = 1; k <= 5; ++k)
    for (const auto& phi : partitions(k))
      posdef_ok = posdef_ok && psd_check(partition_matrix(phi)).positive_semidefinite;
  d << "PosDef " << (posdef_ok ? "ok" : "FAILED") << ", round trip " << (round_ok ? "ok" : "FAILED") << ", ";

  bool moebius_ok = true;
  for (int k = 1; k <= 5; ++k) {
    auto parts = partitions(k);
    for (const auto& pi : parts)
      for (const auto& sigma : parts) {
        Integer s = 0;
        for (const auto& theta : parts)
          if (pi.refines(theta))
            s += moebius(theta, sigma);
        moebius_ok = moebius_ok && s == (pi.refines(sigma) && sigma.refines(pi) ? 1 : 0);
      }
  }
  d << "Moebius " << (moebius_ok ? "ok" : "FAILED") << ", ";

  bool matching_ok = true;
  for (int n : {2, 4, 6, 8}) {
    long count = 0;
    long fixed = 0;
    for_each_matching(n, [&](const Matching& m) {
      ++count;
      for (int x = 0; x < n; ++x)
        fixed += m(x) == x || m(m(x)) != x;
    });
    long df = 1;
    for (int j = n - 1; j > 0; j -= 2)
      df *= j;
    matching_ok = matching_ok && count == df && fixed == 0 && Integer(count) == matching_count(static_cast<unsigned>(n));
  }
  d << "matchings " << (matching_ok ? "ok" : "FAILED");

  o.pass = loops_ok && posdef_ok && round_ok && moebius_ok && matching_ok;
  o.detail = d.str();
  return o;
}

} // namespace

int main()
{
  const auto instances = criterion_one_instances();
  report(1, [&] { return main_theorem(instances); });
  report(2, catalan_anchor);
  report(3, [&] { return bounds(instances); });
  report(4, splice_counts);
  report(5, kirchhoff);
  report(6, gaussian_identities);
  report(7, finite_n);
  report(8, thooft);
  report(9, properties);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
