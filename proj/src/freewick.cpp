#include "arbor/freewick.hpp"

#include "arbor/errors.hpp"
#include "arbor/mapcount.hpp"

#include <stdexcept>

namespace arbor {

void for_each_nc_pairing(int m, const std::function<void(const NCPairing&)>& visit)
{
  if (m < 0 || m % 2 != 0)
    return;
  NCPairing current;
  // Pair the first open position with a partner that leaves an even gap inside, then recurse on
  // the interval inside and the remainder; work is a stack of pending intervals.
  std::function<void(std::vector<std::pair<int, int>>&)> rec = [&](std::vector<std::pair<int, int>>& pending) {
    while (!pending.empty() && pending.back().first >= pending.back().second)
      pending.pop_back();
    if (pending.empty()) {
      visit(current);
      return;
    }
    auto [lo, hi] = pending.back();
    pending.pop_back();
    for (int j = lo + 1; j < hi; j += 2) {
      current.pairs.emplace_back(lo, j);
      auto next = pending;
      next.emplace_back(j + 1, hi);
      next.emplace_back(lo + 1, j);
      rec(next);
      current.pairs.pop_back();
    }
  };
  std::vector<std::pair<int, int>> start{{0, m}};
  rec(start);
}

std::vector<NCPairing> nc_pairings(int m)
{
  std::vector<NCPairing> out;
  for_each_nc_pairing(m, [&](const NCPairing& p) { out.push_back(p); });
  return out;
}

bool is_non_crossing(const NCPairing& p)
{
  for (const auto& [a, c] : p.pairs)
    for (const auto& [b, d] : p.pairs)
      if (a < b && b < c && c < d)
        return false;
  return true;
}

CovarianceSpec tree_covariance(const SymbolicWeightMatrix& wt)
{
  return [&wt](const FreeLetter& x, const FreeLetter& y) -> RationalPolynomial {
    if (x.color != y.color)
      return {};
    return wt.entry_polynomial(x.vertex, y.vertex);
  };
}

RationalPolynomial semicircular_moment(const std::vector<FreeLetter>& word, const CovarianceSpec& cov, int word_cap)
{
  const int m = static_cast<int>(word.size());
  if (m > word_cap)
    throw CapExceeded("semicircular moment of a word of length " + std::to_string(m) + " exceeds the cap " +
                      std::to_string(word_cap) + "; raise the word cap to proceed");
  RationalPolynomial total;
  if (m % 2 != 0)
    return total;
  for_each_nc_pairing(m, [&](const NCPairing& p) {
    RationalPolynomial term(1);
    for (const auto& [a, b] : p.pairs) {
      term = term * cov(word[static_cast<std::size_t>(a)], word[static_cast<std::size_t>(b)]);
      if (term.is_zero())
        return;
    }
    total += term;
  });
  return total;
}

ArbEvaluation arb_evaluate(const Permutation& theta, const Coloring& gamma, const VertexLabeling& nu, int word_cap)
{
  const int k = theta.cycle_count();
  if (nu.vertex_count() != k)
    throw std::invalid_argument("vertex labeling must have one vertex per cycle of theta");
  if (!nu.is_theta_invariant(theta))
    throw std::invalid_argument("vertex labeling is not theta-invariant");
  ArbEvaluation result;
  result.value = 0;
  // A tree whose vertex degree exceeds the fiber size has no splicing involutions.
  std::vector<int> max_degree(static_cast<std::size_t>(k));
  for (int v = 0; v < k; ++v)
    max_degree[static_cast<std::size_t>(v)] = nu.fiber_size(v);
  for_each_spanning_tree(k, max_degree, [&](const Forest& tree) {
    auto words = canonical_splicing_polynomial(theta, gamma, nu, tree);
    if (words.empty())
      return;
    SymbolicWeightMatrix wt(tree);
    auto cov = tree_covariance(wt);
    TreeContribution contrib{tree, words.size(), {}, 0};
    for (const auto& w : words) {
      std::vector<FreeLetter> letters;
      for (const auto& l : w.kept_letters())
        letters.push_back({l.vertex, l.color});
      contrib.moment += semicircular_moment(letters, cov, word_cap);
    }
    contrib.value = expectation_over_weights(tree, contrib.moment);
    result.value += contrib.value;
    result.per_tree.push_back(std::move(contrib));
  });
  return result;
}

MainTheoremCheck main_theorem_check(const Permutation& theta, const Coloring& gamma, int word_cap)
{
  MainTheoremCheck c;
  c.lhs_count = count_map0(MapInstance(theta, gamma)).planar;
  if (theta.size() % 2 != 0) {
    c.rhs_value = 0;
  } else {
    c.arb = arb_evaluate(theta, gamma, VertexLabeling::by_cycles(theta), word_cap);
    c.rhs_value = c.arb.value;
  }
  c.equal = Rational(c.lhs_count) == c.rhs_value;
  return c;
}

Rational arb_bound(const VertexLabeling& nu)
{
  const int n = nu.point_count();
  const int k = nu.vertex_count();
  if (n < 2 * k - 2)
    return 0;
  return pow(Rational(2), static_cast<unsigned>(n - 2 * k + 2)) * Rational(splice_count_closed_form(nu));
}

ArbBoundCheck arb_bound_check(const Permutation& theta, const Coloring& gamma, const VertexLabeling& nu)
{
  ArbBoundCheck c;
  c.value = arb_evaluate(theta, gamma, nu).value;
  c.bound = arb_bound(nu);
  c.holds = abs(c.value) <= c.bound;
  return c;
}

} // namespace arbor
