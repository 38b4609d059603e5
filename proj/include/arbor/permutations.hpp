#ifndef ARBOR_PERMUTATIONS_HPP
#define ARBOR_PERMUTATIONS_HPP

#include "arbor/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace arbor {

// A bijection of {0,...,n-1}. Points are 0-based in memory and 1-based in all text I/O.
//
// Composition convention: compose(p, q) is x -> p(q(x)), i.e. the right factor acts first.
// Every product written theta*iota or theta*tau in this library follows it.
class Permutation
{
public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);

  // Cycle notation, e.g. "(1 2 3)(4 5)". Points left out are fixed; when n is omitted
  // it is taken to be the largest point mentioned. "()" or "" denote the identity.
  static Permutation parse(const std::string& text, std::optional<int> n = std::nullopt);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int x) const { return images_[static_cast<std::size_t>(x)]; }
  std::span<const int> images() const { return images_; }

  Permutation inverse() const;
  bool is_involution() const;
  bool is_identity() const;

  // Cycles listed from their minimal point, sorted by minimal point; fixed points included.
  std::vector<std::vector<int>> cycles() const;
  int cycle_count() const;

  // Cycle notation with fixed points written out, e.g. "(1 2)(3)".
  std::string to_string() const;

  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

private:
  std::vector<int> images_;
};

Permutation compose(const Permutation& p, const Permutation& q);

// Fixed-point-free involution.
class Matching
{
public:
  explicit Matching(Permutation p);
  const Permutation& permutation() const { return perm_; }
  int size() const { return perm_.size(); }
  int operator()(int x) const { return perm_(x); }
  bool operator==(const Matching&) const = default;

private:
  Permutation perm_;
};

// A map from points to colors. Colors are arbitrary nonnegative ids (0-based in memory).
class Coloring
{
public:
  Coloring() = default;
  explicit Coloring(std::vector<int> colors) : colors_(std::move(colors)) {}
  static Coloring constant(int n) { return Coloring(std::vector<int>(static_cast<std::size_t>(n), 0)); }

  // "constant" or a comma/space separated list of 1-based colors.
  static Coloring parse(const std::string& text, int n);

  int size() const { return static_cast<int>(colors_.size()); }
  int operator()(int x) const { return colors_[static_cast<std::size_t>(x)]; }
  std::span<const int> colors() const { return colors_; }
  bool is_constant() const;
  bool is_injective() const;

  // Comma separated 1-based list.
  std::string to_string() const;

  bool operator==(const Coloring&) const = default;

private:
  std::vector<int> colors_;
};

// Visits each fixed-point-free involution of n points exactly once, in the order obtained by
// pairing the smallest unmatched point with each larger partner in turn. Odd n visits nothing.
void for_each_matching(int n, const std::function<void(const Matching&)>& visit);
std::vector<Matching> matchings(int n);

// Whether <theta, iota> acts transitively on the points.
bool is_transitive_pair(const Permutation& theta, const Permutation& iota);

// Set partition of {0,...,k-1}; blocks sorted internally and ordered by minimal element.
class SetPartition
{
public:
  SetPartition() = default;
  explicit SetPartition(std::vector<std::vector<int>> blocks);

  // Block label per point given as a restricted growth string.
  static SetPartition from_labels(std::span<const int> labels);
  static SetPartition finest(int k);
  static SetPartition coarsest(int k);

  int ground_size() const { return static_cast<int>(block_of_.size()); }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  int block_of(int x) const { return block_of_[static_cast<std::size_t>(x)]; }
  bool same_block(int x, int y) const { return block_of(x) == block_of(y); }

  // Bitmask of each block (k <= 32).
  std::vector<std::uint32_t> block_masks() const;

  // Refinement order: every block of *this lies inside a block of other.
  bool refines(const SetPartition& other) const;

  std::string to_string() const;

  bool operator==(const SetPartition& o) const { return blocks_ == o.blocks_; }

private:
  std::vector<std::vector<int>> blocks_;
  std::vector<int> block_of_;
};

std::vector<SetPartition> partitions(int k);

// mu(pi : sigma) in the partition lattice; 0 unless pi refines sigma.
Integer moebius(const SetPartition& pi, const SetPartition& sigma);

// Joint cumulant from mixed moments: sum over partitions of mu(Pi:1_k) prod_A moment(A),
// where a block A is passed as a bitmask over {0,...,k-1}.
Rational joint_cumulant(const std::function<Rational(std::uint32_t)>& moment, int k);

} // namespace arbor

#endif
