#ifndef ARBOR_SPLICING_HPP
#define ARBOR_SPLICING_HPP

#include "arbor/arboreal.hpp"
#include "arbor/permutations.hpp"
#include "arbor/rational.hpp"

#include <functional>
#include <vector>

namespace arbor {

// Onto map from points {0..n-1} to vertices {0..k-1}.
class VertexLabeling
{
public:
  VertexLabeling(std::vector<int> nu, int k);

  // Vertex i is the i-th cycle of theta, cycles ordered by minimal point.
  static VertexLabeling by_cycles(const Permutation& theta);

  int point_count() const { return static_cast<int>(nu_.size()); }
  int vertex_count() const { return k_; }
  int operator()(int point) const { return nu_[static_cast<std::size_t>(point)]; }
  const std::vector<int>& fiber(int vertex) const { return fibers_[static_cast<std::size_t>(vertex)]; }
  int fiber_size(int vertex) const { return static_cast<int>(fiber(vertex).size()); }

  bool is_theta_invariant(const Permutation& theta) const;

  // Relabel vertices: new label of vertex v is relabel[v].
  VertexLabeling relabeled(const std::vector<int>& relabel) const;

private:
  std::vector<int> nu_;
  int k_;
  std::vector<std::vector<int>> fibers_;
};

// Splicing involutions for a tree: one transposition (i j) per edge {nu(i), nu(j)}, all disjoint.
void for_each_splice(const Forest& tree, const VertexLabeling& nu, const Coloring* gamma,
                     const std::function<void(const Permutation&)>& visit);
std::vector<Permutation> splice_set(const Forest& tree, const VertexLabeling& nu);
std::vector<Permutation> splice_set_colored(const Forest& tree, const VertexLabeling& nu, const Coloring& gamma);

struct SpliceCountCheck
{
  Integer lhs;  // sum over spanning trees of |Splice_T(nu)|, by enumeration
  Integer rhs;  // (n-k)! prod n_i / (n-2k+2)!, or 0 when n < 2k-2
  bool holds = false;
};

Integer splice_count_closed_form(const VertexLabeling& nu);
SpliceCountCheck splice_count_check(const VertexLabeling& nu);

// Every splicing involution tau of the tree makes theta*tau a single cycle.
bool splicing_cyclicity_check(const Permutation& theta, const VertexLabeling& nu, const Forest& tree);

struct Letter
{
  int index;   // point of <n>
  bool kept;   // tau fixes the point
  int vertex;  // nu(index)
  int color;   // gamma(index)
};

// One monomial of the canonical splicing polynomial: the cycle of theta*tau read from point 0.
struct SplicingWord
{
  Permutation tau;
  std::vector<Letter> letters;

  int kept_count() const;
  std::vector<Letter> kept_letters() const;
};

std::vector<SplicingWord> canonical_splicing_polynomial(const Permutation& theta, const Coloring& gamma,
                                                        const VertexLabeling& nu, const Forest& tree);

} // namespace arbor

#endif
