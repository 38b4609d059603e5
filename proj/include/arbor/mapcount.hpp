#ifndef ARBOR_MAPCOUNT_HPP
#define ARBOR_MAPCOUNT_HPP

#include "arbor/permutations.hpp"
#include "arbor/rational.hpp"

#include <functional>
#include <map>
#include <vector>

namespace arbor {

struct MapInstance
{
  MapInstance(Permutation theta, Coloring gamma);

  Permutation theta;
  Coloring gamma;
  int n() const { return theta.size(); }
};

struct MapCountReport
{
  long total = 0;
  long planar = 0;
  std::map<int, long> genus_histogram;
};

// Visits every iota in Map(theta, gamma): color preserving, then transitive together with theta.
void for_each_map(const MapInstance& inst, const std::function<void(const Matching&)>& visit);
std::vector<Matching> enumerate_maps(const MapInstance& inst);

// Genus of the constellation (theta, iota, (theta iota)^-1); throws unless the pair is transitive.
int genus(const Permutation& theta, const Matching& iota);

MapCountReport count_map0(const MapInstance& inst);

struct BoundCheck
{
  Rational lhs;
  Rational rhs;
  bool holds = false;
};

// |Map0(theta)| <= p n^(k-2) 2^(n-2k+2) 1{n >= 2k-2} for monochrome gamma, p = product of cycle lengths.
Rational kahuna_bound(const Permutation& theta);
BoundCheck check_kahuna_bound(const MapInstance& inst);

// The permutation with consecutive cycles of the given lengths, each repeated orders[i] times.
Permutation permutation_with_cycle_lengths(const std::vector<int>& lengths);

struct GeneratingRow
{
  std::vector<int> orders;
  int degree = 0;
  long planar = 0;
  Rational coefficient;  // |Map0| / prod orders!
  Rational majorant;     // majorizing coefficient n^K prod (n_i 2^n_i)^orders_i / prod orders!
  bool below_majorant = false;
};

inline constexpr int default_degree_cap = 12;

// Coefficients of sum_orders |Map0(theta_orders)| z^orders / orders! for 1 <= orders_i <= max_orders_i.
std::vector<GeneratingRow> generating_table(const std::vector<int>& shape, const std::vector<int>& max_orders,
                                            int degree_cap = default_degree_cap);

} // namespace arbor

#endif
