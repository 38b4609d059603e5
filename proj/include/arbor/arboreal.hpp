#ifndef ARBOR_ARBOREAL_HPP
#define ARBOR_ARBOREAL_HPP

#include "arbor/permutations.hpp"
#include "arbor/polynomial.hpp"
#include "arbor/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace arbor {

struct Edge
{
  int a;
  int b;  // a < b
  auto operator<=>(const Edge&) const = default;
};

// Acyclic graph on {0,...,k-1}. Edges are kept sorted; edge indices refer to that order.
class Forest
{
public:
  Forest() = default;
  Forest(int k, std::vector<Edge> edges);

  // "1-2,2-3" with 1-based vertices; "" is the empty forest.
  static Forest parse(const std::string& text, int k);

  int vertex_count() const { return k_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  bool is_tree() const { return edge_count() == k_ - 1; }

  std::vector<int> degrees() const;
  // Component id per vertex, components numbered by minimal vertex.
  std::vector<int> components() const;
  // Bitmask over edge indices of the geodesic from i to j, or nullopt when disconnected.
  std::optional<std::uint32_t> path_mask(int i, int j) const;

  std::string to_string() const;

  bool operator==(const Forest&) const = default;

private:
  int k_ = 0;
  std::vector<Edge> edges_;
};

// Labelled trees on k vertices via Pruefer sequences; k^(k-2) of them.
void for_each_spanning_tree(int k, const std::function<void(const Forest&)>& visit);
// Same, restricted to trees where vertex i has degree at most max_degree[i].
void for_each_spanning_tree(int k, const std::vector<int>& max_degree, const std::function<void(const Forest&)>& visit);
std::vector<Forest> spanning_trees(int k);

// All forests with vertex set {0..k-1}, including the edgeless one.
std::vector<Forest> forests(int k);

struct KirchhoffCheck
{
  RationalPolynomial lhs;  // sum over trees of prod over edges x_i x_j
  RationalPolynomial rhs;  // (x_1 + ... + x_k)^(k-2) x_1 ... x_k
  std::size_t tree_count = 0;
  bool holds = false;
};

// Variable x_i has id i (0-based).
KirchhoffCheck kirchhoff_check(int k);

// Entry of a symbolic forest weight matrix.
struct WeightEntry
{
  enum class Kind { Zero, One, Min };
  Kind kind = Kind::Zero;
  std::uint32_t edges = 0;  // edge-index mask for Kind::Min

  bool operator==(const WeightEntry&) const = default;
};

// wt_F as a matrix of tokens; polynomial variables for MinOf(S) use the mask S as variable id.
class SymbolicWeightMatrix
{
public:
  explicit SymbolicWeightMatrix(const Forest& forest);

  const Forest& forest() const { return forest_; }
  int size() const { return forest_.vertex_count(); }
  const WeightEntry& operator()(int i, int j) const { return entries_[index(i, j)]; }

  // 0, 1 or the MinOf variable.
  RationalPolynomial entry_polynomial(int i, int j) const;

  // Numeric matrix for edge weights given per edge index.
  std::vector<std::vector<Rational>> substitute(const std::vector<Rational>& edge_weights) const;

  std::string to_string() const;

private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i * size() + j); }

  Forest forest_;
  std::vector<WeightEntry> entries_;
};

inline SymbolicWeightMatrix weight_matrix(const Forest& f) { return SymbolicWeightMatrix(f); }

std::string min_token_name(std::uint32_t mask, const Forest& f);

using RationalMatrix = std::vector<std::vector<Rational>>;

// Unit diagonal, entries in [0,1], A(i,k) >= min(A(i,j), A(j,k)).
bool is_co_ultrametric(const RationalMatrix& a);

// [Phi](i,j) = 1 when i and j share a block.
RationalMatrix partition_matrix(const SetPartition& phi);

struct GaplessData
{
  int articulation = 0;
  int co_articulation = 0;
  bool gapless = false;
  // Present when gapless; one pair per distinct value in (0,1), lexicographically smallest pair.
  std::optional<Forest> forest;
  std::vector<Rational> edge_weights;  // value carried by each recovered edge
};

GaplessData gapless_data(const RationalMatrix& a);

struct PsdResult
{
  bool positive_semidefinite = false;
  bool positive_definite = false;
  int rank = 0;
};

// Exact symmetric elimination with diagonal pivoting.
PsdResult psd_check(const RationalMatrix& a);

// E[poly] for i.i.d. Uniform(0,1) weights on `edge_count` edges, where variable S (a nonempty
// edge mask) stands for the minimum of the weights in S.
Rational simplex_expectation(int edge_count, const RationalPolynomial& poly);

// As above, validating that every token refers to edges of f.
Rational expectation_over_weights(const Forest& f, const RationalPolynomial& poly);

} // namespace arbor

#endif
