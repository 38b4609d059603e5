#include "arbor/splicing.hpp"

#include <numeric>
#include <stdexcept>

namespace arbor {

VertexLabeling::VertexLabeling(std::vector<int> nu, int k) : nu_(std::move(nu)), k_(k), fibers_(static_cast<std::size_t>(k))
{
  for (std::size_t p = 0; p < nu_.size(); ++p) {
    int v = nu_[p];
    if (v < 0 || v >= k)
      throw std::invalid_argument("vertex labeling maps a point outside <k>");
    fibers_[static_cast<std::size_t>(v)].push_back(static_cast<int>(p));
  }
  for (const auto& f : fibers_)
    if (f.empty())
      throw std::invalid_argument("vertex labeling is not onto");
}

VertexLabeling VertexLabeling::by_cycles(const Permutation& theta)
{
  std::vector<int> nu(static_cast<std::size_t>(theta.size()));
  auto cycles = theta.cycles();
  for (std::size_t c = 0; c < cycles.size(); ++c)
    for (int p : cycles[c])
      nu[static_cast<std::size_t>(p)] = static_cast<int>(c);
  return VertexLabeling(std::move(nu), static_cast<int>(cycles.size()));
}

bool VertexLabeling::is_theta_invariant(const Permutation& theta) const
{
  if (theta.size() != point_count())
    return false;
  for (int p = 0; p < point_count(); ++p)
    if ((*this)(theta(p)) != (*this)(p))
      return false;
  return true;
}

VertexLabeling VertexLabeling::relabeled(const std::vector<int>& relabel) const
{
  std::vector<int> nu(nu_.size());
  for (std::size_t p = 0; p < nu_.size(); ++p)
    nu[p] = relabel.at(static_cast<std::size_t>(nu_[p]));
  return VertexLabeling(std::move(nu), k_);
}

void for_each_splice(const Forest& tree, const VertexLabeling& nu, const Coloring* gamma,
                     const std::function<void(const Permutation&)>& visit)
{
  if (tree.vertex_count() != nu.vertex_count())
    throw std::invalid_argument("tree and vertex labeling disagree on k");
  if (!tree.is_tree())
    throw std::invalid_argument("splicing involutions are indexed by spanning trees");
  const int n = nu.point_count();
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  const auto& edges = tree.edges();
  std::function<void(std::size_t)> rec = [&](std::size_t e) {
    if (e == edges.size()) {
      visit(Permutation(images));
      return;
    }
    for (int i : nu.fiber(edges[e].a)) {
      if (used[static_cast<std::size_t>(i)])
        continue;
      for (int j : nu.fiber(edges[e].b)) {
        if (used[static_cast<std::size_t>(j)])
          continue;
        if (gamma && (*gamma)(i) != (*gamma)(j))
          continue;
        used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = true;
        images[static_cast<std::size_t>(i)] = j;
        images[static_cast<std::size_t>(j)] = i;
        rec(e + 1);
        images[static_cast<std::size_t>(i)] = i;
        images[static_cast<std::size_t>(j)] = j;
        used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = false;
      }
    }
  };
  rec(0);
}

std::vector<Permutation> splice_set(const Forest& tree, const VertexLabeling& nu)
{
  std::vector<Permutation> out;
  for_each_splice(tree, nu, nullptr, [&](const Permutation& t) { out.push_back(t); });
  return out;
}

std::vector<Permutation> splice_set_colored(const Forest& tree, const VertexLabeling& nu, const Coloring& gamma)
{
  if (gamma.size() != nu.point_count())
    throw std::invalid_argument("coloring and vertex labeling disagree on n");
  std::vector<Permutation> out;
  for_each_splice(tree, nu, &gamma, [&](const Permutation& t) { out.push_back(t); });
  return out;
}

Integer splice_count_closed_form(const VertexLabeling& nu)
{
  const int n = nu.point_count();
  const int k = nu.vertex_count();
  if (n < 2 * k - 2)
    return 0;
  Integer prod = 1;
  for (int v = 0; v < k; ++v)
    prod *= nu.fiber_size(v);
  return factorial(static_cast<unsigned>(n - k)) * prod / factorial(static_cast<unsigned>(n - 2 * k + 2));
}

SpliceCountCheck splice_count_check(const VertexLabeling& nu)
{
  SpliceCountCheck c;
  c.lhs = 0;
  for_each_spanning_tree(nu.vertex_count(), [&](const Forest& tree) {
    for_each_splice(tree, nu, nullptr, [&](const Permutation&) { ++c.lhs; });
  });
  c.rhs = splice_count_closed_form(nu);
  c.holds = c.lhs == c.rhs;
  return c;
}

bool splicing_cyclicity_check(const Permutation& theta, const VertexLabeling& nu, const Forest& tree)
{
  if (!nu.is_theta_invariant(theta))
    throw std::invalid_argument("vertex labeling is not theta-invariant");
  bool ok = true;
  for_each_splice(tree, nu, nullptr, [&](const Permutation& tau) { ok = ok && compose(theta, tau).cycle_count() == 1; });
  return ok;
}

int SplicingWord::kept_count() const
{
  int c = 0;
  for (const auto& l : letters)
    c += l.kept;
  return c;
}

std::vector<Letter> SplicingWord::kept_letters() const
{
  std::vector<Letter> out;
  for (const auto& l : letters)
    if (l.kept)
      out.push_back(l);
  return out;
}

std::vector<SplicingWord> canonical_splicing_polynomial(const Permutation& theta, const Coloring& gamma,
                                                        const VertexLabeling& nu, const Forest& tree)
{
  if (theta.size() != gamma.size() || theta.size() != nu.point_count())
    throw std::invalid_argument("theta, gamma and nu must act on the same points");
  if (!nu.is_theta_invariant(theta))
    throw std::invalid_argument("vertex labeling is not theta-invariant");
  std::vector<SplicingWord> words;
  const int n = theta.size();
  for_each_splice(tree, nu, &gamma, [&](const Permutation& tau) {
    Permutation walk = compose(theta, tau);
    SplicingWord w{tau, {}};
    int p = 0;
    for (int step = 0; step < n; ++step) {
      if (step > 0 && p == 0)
        throw std::logic_error("theta*tau is not a single cycle");
      w.letters.push_back({p, tau(p) == p, nu(p), gamma(p)});
      p = walk(p);
    }
    if (p != 0)
      throw std::logic_error("theta*tau is not a single cycle");
    words.push_back(std::move(w));
  });
  return words;
}

} // namespace arbor
