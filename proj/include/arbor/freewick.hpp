#ifndef ARBOR_FREEWICK_HPP
#define ARBOR_FREEWICK_HPP

#include "arbor/arboreal.hpp"
#include "arbor/permutations.hpp"
#include "arbor/polynomial.hpp"
#include "arbor/splicing.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace arbor {

// Non-crossing perfect pairing of positions {0..m-1}; pairs (a, b) with a < b.
struct NCPairing
{
  std::vector<std::pair<int, int>> pairs;
};

void for_each_nc_pairing(int m, const std::function<void(const NCPairing&)>& visit);
std::vector<NCPairing> nc_pairings(int m);
bool is_non_crossing(const NCPairing& p);

struct FreeLetter
{
  int vertex;
  int color;
};

// phi(z(a) z(b)) for a semicircular system, symbolic in weight tokens.
using CovarianceSpec = std::function<RationalPolynomial(const FreeLetter&, const FreeLetter&)>;

// Covariance delta(color, color') * wt_T(vertex, vertex').
CovarianceSpec tree_covariance(const SymbolicWeightMatrix& wt);

inline constexpr int default_word_cap = 16;

// Sum over non-crossing pairings of the product of pair covariances; 0 for odd length.
RationalPolynomial semicircular_moment(const std::vector<FreeLetter>& word, const CovarianceSpec& cov,
                                       int word_cap = default_word_cap);

struct TreeContribution
{
  Forest tree;
  std::size_t word_count = 0;
  RationalPolynomial moment;  // summed over the tree's words, in MinOf tokens
  Rational value;             // its expectation over the edge weights
};

struct ArbEvaluation
{
  Rational value;
  std::vector<TreeContribution> per_tree;  // trees with a nonempty colored splice set
};

// phi(Arb_{theta,gamma,nu}) at a free semicircular family, exactly.
ArbEvaluation arb_evaluate(const Permutation& theta, const Coloring& gamma, const VertexLabeling& nu,
                           int word_cap = default_word_cap);

struct MainTheoremCheck
{
  long lhs_count = 0;
  Rational rhs_value;
  bool equal = false;
  ArbEvaluation arb;
};

MainTheoremCheck main_theorem_check(const Permutation& theta, const Coloring& gamma, int word_cap = default_word_cap);

struct ArbBoundCheck
{
  Rational value;
  Rational bound;
  bool holds = false;
};

// 2^(n-2k+2) (n-k)! prod n_i / (n-2k+2)!, or 0 when n < 2k-2.
Rational arb_bound(const VertexLabeling& nu);
ArbBoundCheck arb_bound_check(const Permutation& theta, const Coloring& gamma, const VertexLabeling& nu);

} // namespace arbor

#endif
