#include "arbor/arboreal.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace arbor {

namespace {

int find_root(std::vector<int>& parent, int x)
{
  while (parent[static_cast<std::size_t>(x)] != x)
    x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
  return x;
}

} // namespace

Forest::Forest(int k, std::vector<Edge> edges) : k_(k)
{
  if (k < 0)
    throw std::invalid_argument("forest with negative vertex count");
  for (auto& e : edges) {
    if (e.a > e.b)
      std::swap(e.a, e.b);
    if (e.a == e.b || e.a < 0 || e.b >= k)
      throw std::invalid_argument("forest edge out of range or a loop");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("repeated forest edge");
  std::vector<int> parent(static_cast<std::size_t>(k));
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& e : edges) {
    int ra = find_root(parent, e.a);
    int rb = find_root(parent, e.b);
    if (ra == rb)
      throw std::invalid_argument("edge set has a circuit");
    parent[static_cast<std::size_t>(ra)] = rb;
  }
  if (edges.size() > 32)
    throw std::invalid_argument("forests are limited to 32 edges");
  edges_ = std::move(edges);
}

Forest Forest::parse(const std::string& text, int k)
{
  std::vector<Edge> edges;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty())
      continue;
    auto dash = item.find('-');
    if (dash == std::string::npos)
      throw std::invalid_argument("forest edge '" + item + "' is not of the form a-b");
    edges.push_back({std::stoi(item.substr(0, dash)) - 1, std::stoi(item.substr(dash + 1)) - 1});
  }
  return Forest(k, std::move(edges));
}

std::vector<int> Forest::degrees() const
{
  std::vector<int> d(static_cast<std::size_t>(k_), 0);
  for (const auto& e : edges_) {
    ++d[static_cast<std::size_t>(e.a)];
    ++d[static_cast<std::size_t>(e.b)];
  }
  return d;
}

std::vector<int> Forest::components() const
{
  std::vector<int> parent(static_cast<std::size_t>(k_));
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& e : edges_) {
    int ra = find_root(parent, e.a);
    int rb = find_root(parent, e.b);
    parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
  }
  std::vector<int> comp(static_cast<std::size_t>(k_));
  for (int v = 0; v < k_; ++v)
    comp[static_cast<std::size_t>(v)] = find_root(parent, v);
  return comp;
}

std::optional<std::uint32_t> Forest::path_mask(int i, int j) const
{
  if (i == j)
    return 0u;
  // BFS from i recording the edge used to reach each vertex.
  std::vector<int> via(static_cast<std::size_t>(k_), -1);
  std::vector<int> prev(static_cast<std::size_t>(k_), -1);
  std::vector<bool> seen(static_cast<std::size_t>(k_), false);
  std::queue<int> q;
  q.push(i);
  seen[static_cast<std::size_t>(i)] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (std::size_t idx = 0; idx < edges_.size(); ++idx) {
      const auto& e = edges_[idx];
      int w = e.a == v ? e.b : e.b == v ? e.a : -1;
      if (w < 0 || seen[static_cast<std::size_t>(w)])
        continue;
      seen[static_cast<std::size_t>(w)] = true;
      via[static_cast<std::size_t>(w)] = static_cast<int>(idx);
      prev[static_cast<std::size_t>(w)] = v;
      q.push(w);
    }
  }
  if (!seen[static_cast<std::size_t>(j)])
    return std::nullopt;
  std::uint32_t mask = 0;
  for (int v = j; v != i; v = prev[static_cast<std::size_t>(v)])
    mask |= 1u << via[static_cast<std::size_t>(v)];
  return mask;
}

std::string Forest::to_string() const
{
  std::ostringstream os;
  for (std::size_t i = 0; i < edges_.size(); ++i)
    os << (i ? "," : "") << edges_[i].a + 1 << '-' << edges_[i].b + 1;
  return os.str();
}

void for_each_spanning_tree(int k, const std::vector<int>& max_degree, const std::function<void(const Forest&)>& visit)
{
  if (k < 1)
    return;
  if (static_cast<int>(max_degree.size()) != k)
    throw std::invalid_argument("degree bounds must be given for every vertex");
  if (k == 1) {
    visit(Forest(1, {}));
    return;
  }
  for (int d : max_degree)
    if (d < 1)
      return;
  // Vertex v appears deg(v) - 1 times in the Pruefer sequence.
  std::vector<int> budget(max_degree.size());
  for (std::size_t v = 0; v < budget.size(); ++v)
    budget[v] = max_degree[v] - 1;
  std::vector<int> seq(static_cast<std::size_t>(k - 2));
  std::function<void(int)> rec = [&](int pos) {
    if (pos == k - 2) {
      std::vector<int> degree(static_cast<std::size_t>(k), 1);
      for (int v : seq)
        ++degree[static_cast<std::size_t>(v)];
      std::vector<Edge> edges;
      for (int v : seq) {
        int leaf = 0;
        while (degree[static_cast<std::size_t>(leaf)] != 1)
          ++leaf;
        edges.push_back({leaf, v});
        --degree[static_cast<std::size_t>(leaf)];
        --degree[static_cast<std::size_t>(v)];
      }
      int u = -1;
      for (int v = 0; v < k; ++v)
        if (degree[static_cast<std::size_t>(v)] == 1) {
          if (u < 0)
            u = v;
          else
            edges.push_back({u, v});
        }
      visit(Forest(k, std::move(edges)));
      return;
    }
    for (int v = 0; v < k; ++v) {
      if (budget[static_cast<std::size_t>(v)] == 0)
        continue;
      --budget[static_cast<std::size_t>(v)];
      seq[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1);
      ++budget[static_cast<std::size_t>(v)];
    }
  };
  rec(0);
}

void for_each_spanning_tree(int k, const std::function<void(const Forest&)>& visit)
{
  for_each_spanning_tree(k, std::vector<int>(static_cast<std::size_t>(std::max(k, 0)), std::max(k - 1, 1)), visit);
}

std::vector<Forest> spanning_trees(int k)
{
  std::vector<Forest> out;
  for_each_spanning_tree(k, [&](const Forest& t) { out.push_back(t); });
  return out;
}

std::vector<Forest> forests(int k)
{
  std::vector<Edge> all;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      all.push_back({a, b});
  std::vector<Forest> out;
  std::vector<Edge> chosen;
  std::vector<int> parent(static_cast<std::size_t>(std::max(k, 0)));
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == all.size()) {
      out.emplace_back(k, chosen);
      return;
    }
    rec(idx + 1);
    // Connectivity of the chosen edges, recomputed; k is small.
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& e : chosen)
      parent[static_cast<std::size_t>(find_root(parent, e.a))] = find_root(parent, e.b);
    if (find_root(parent, all[idx].a) == find_root(parent, all[idx].b))
      return;
    chosen.push_back(all[idx]);
    rec(idx + 1);
    chosen.pop_back();
  };
  if (k >= 1)
    rec(0);
  return out;
}

KirchhoffCheck kirchhoff_check(int k)
{
  if (k < 1)
    throw std::invalid_argument("kirchhoff_check needs k >= 1");
  KirchhoffCheck check;
  for_each_spanning_tree(k, [&](const Forest& t) {
    ++check.tree_count;
    std::vector<Factor> fs;
    for (const auto& e : t.edges()) {
      fs.push_back({static_cast<Var>(e.a), 1});
      fs.push_back({static_cast<Var>(e.b), 1});
    }
    check.lhs.add_term(Monomial::from_factors(std::move(fs)), 1);
  });
  if (k == 1) {
    check.rhs = RationalPolynomial(1);
  } else {
    RationalPolynomial sum;
    RationalPolynomial prod(1);
    for (int i = 0; i < k; ++i) {
      sum += RationalPolynomial::variable(static_cast<Var>(i));
      prod = prod * RationalPolynomial::variable(static_cast<Var>(i));
    }
    check.rhs = prod;
    for (int r = 0; r < k - 2; ++r)
      check.rhs = check.rhs * sum;
  }
  check.holds = check.lhs == check.rhs;
  return check;
}

SymbolicWeightMatrix::SymbolicWeightMatrix(const Forest& forest)
    : forest_(forest), entries_(static_cast<std::size_t>(forest.vertex_count() * forest.vertex_count()))
{
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j) {
      auto& e = entries_[index(i, j)];
      if (i == j) {
        e.kind = WeightEntry::Kind::One;
      } else if (auto mask = forest_.path_mask(i, j)) {
        e.kind = WeightEntry::Kind::Min;
        e.edges = *mask;
      }
    }
}

RationalPolynomial SymbolicWeightMatrix::entry_polynomial(int i, int j) const
{
  const auto& e = (*this)(i, j);
  switch (e.kind) {
  case WeightEntry::Kind::Zero:
    return {};
  case WeightEntry::Kind::One:
    return RationalPolynomial(1);
  case WeightEntry::Kind::Min:
    return RationalPolynomial::variable(e.edges);
  }
  return {};
}

RationalMatrix SymbolicWeightMatrix::substitute(const std::vector<Rational>& edge_weights) const
{
  if (static_cast<int>(edge_weights.size()) != forest_.edge_count())
    throw std::invalid_argument("one weight per forest edge is required");
  RationalMatrix a(static_cast<std::size_t>(size()), std::vector<Rational>(static_cast<std::size_t>(size())));
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j) {
      const auto& e = (*this)(i, j);
      Rational v = e.kind == WeightEntry::Kind::One ? Rational(1) : Rational(0);
      if (e.kind == WeightEntry::Kind::Min) {
        bool first = true;
        for (int idx = 0; idx < forest_.edge_count(); ++idx)
          if (e.edges >> idx & 1u) {
            if (first || edge_weights[static_cast<std::size_t>(idx)] < v)
              v = edge_weights[static_cast<std::size_t>(idx)];
            first = false;
          }
      }
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    }
  return a;
}

std::string min_token_name(std::uint32_t mask, const Forest& f)
{
  std::ostringstream os;
  os << "min{";
  bool first = true;
  for (int idx = 0; idx < f.edge_count(); ++idx)
    if (mask >> idx & 1u) {
      const auto& e = f.edges()[static_cast<std::size_t>(idx)];
      os << (first ? "" : ",") << e.a + 1 << '-' << e.b + 1;
      first = false;
    }
  os << '}';
  return os.str();
}

std::string SymbolicWeightMatrix::to_string() const
{
  std::ostringstream os;
  for (int i = 0; i < size(); ++i) {
    os << '[';
    for (int j = 0; j < size(); ++j) {
      const auto& e = (*this)(i, j);
      os << (j ? ", " : "");
      if (e.kind == WeightEntry::Kind::Zero)
        os << '0';
      else if (e.kind == WeightEntry::Kind::One)
        os << '1';
      else
        os << min_token_name(e.edges, forest_);
    }
    os << "]\n";
  }
  return os.str();
}

bool is_co_ultrametric(const RationalMatrix& a)
{
  const std::size_t k = a.size();
  for (const auto& row : a)
    if (row.size() != k)
      return false;
  for (std::size_t i = 0; i < k; ++i) {
    if (a[i][i] != 1)
      return false;
    for (std::size_t j = 0; j < k; ++j)
      if (a[i][j] != a[j][i] || a[i][j] < 0 || a[i][j] > 1)
        return false;
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l)
        if (a[i][l] < std::min(a[i][j], a[j][l]))
          return false;
  return true;
}

RationalMatrix partition_matrix(const SetPartition& phi)
{
  const auto k = static_cast<std::size_t>(phi.ground_size());
  RationalMatrix a(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      a[i][j] = phi.same_block(static_cast<int>(i), static_cast<int>(j)) ? 1 : 0;
  return a;
}

GaplessData gapless_data(const RationalMatrix& a)
{
  const int k = static_cast<int>(a.size());
  GaplessData d;
  std::map<Rational, std::pair<int, int>> values;  // value -> lexicographically first pair
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const Rational& v = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (v > 0 && v < 1)
        values.try_emplace(v, i, j);
    }
  d.articulation = static_cast<int>(values.size());

  std::vector<int> parent(static_cast<std::size_t>(k));
  std::iota(parent.begin(), parent.end(), 0);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] > 0)
        parent[static_cast<std::size_t>(find_root(parent, i))] = find_root(parent, j);
  for (int v = 0; v < k; ++v)
    d.co_articulation += find_root(parent, v) == v;

  d.gapless = d.articulation + d.co_articulation == k;
  if (!d.gapless)
    return d;
  std::vector<Edge> edges;
  for (const auto& [v, ij] : values)
    edges.push_back({ij.first, ij.second});
  d.forest = Forest(k, edges);
  for (const auto& e : d.forest->edges())
    d.edge_weights.push_back(a[static_cast<std::size_t>(e.a)][static_cast<std::size_t>(e.b)]);
  return d;
}

PsdResult psd_check(const RationalMatrix& a)
{
  RationalMatrix s = a;
  const std::size_t k = s.size();
  std::vector<bool> used(k, false);
  PsdResult r;
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t piv = k;
    for (std::size_t i = 0; i < k; ++i)
      if (!used[i] && (piv == k || s[i][i] > s[piv][piv]))
        piv = i;
    const Rational d = s[piv][piv];
    if (d < 0)
      return r;
    if (d == 0) {
      // A PSD matrix with a zero diagonal entry has a zero row there.
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          if (!used[i] && !used[j] && s[i][j] != 0)
            return r;
      break;
    }
    used[piv] = true;
    ++r.rank;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (!used[i] && !used[j])
          s[i][j] -= s[i][piv] * s[piv][j] / d;
  }
  r.positive_semidefinite = true;
  r.positive_definite = r.rank == static_cast<int>(k);
  return r;
}

Rational simplex_expectation(int edge_count, const RationalPolynomial& poly)
{
  if (edge_count < 0 || edge_count > 12)
    throw std::invalid_argument("simplex_expectation supports up to 12 edges");
  const auto m = static_cast<std::size_t>(edge_count);
  const std::uint32_t full = edge_count == 32 ? ~0u : (1u << edge_count) - 1u;
  for (const auto& [mono, c] : poly.terms())
    for (const auto& f : mono.factors())
      if (f.var == 0 || (f.var & ~full) != 0)
        throw std::invalid_argument("weight token refers to edges outside the forest");

  // rank_of[e] = position of edge e in the increasing order of the weights.
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> rank_of(m);
  std::map<std::vector<unsigned>, Rational> integral_cache;
  Rational total = 0;
  std::vector<unsigned> exps(m);
  do {
    for (std::size_t r = 0; r < m; ++r)
      rank_of[static_cast<std::size_t>(order[r])] = static_cast<int>(r);
    for (const auto& [mono, c] : poly.terms()) {
      std::fill(exps.begin(), exps.end(), 0u);
      for (const auto& f : mono.factors()) {
        int lowest = static_cast<int>(m);
        for (std::size_t e = 0; e < m; ++e)
          if (f.var >> e & 1u)
            lowest = std::min(lowest, rank_of[e]);
        exps[static_cast<std::size_t>(lowest)] += f.exp;
      }
      auto [it, inserted] = integral_cache.try_emplace(exps);
      if (inserted) {
        // Integral of prod t_r^a_r over 0 < t_1 < ... < t_m < 1, innermost variable first.
        Rational v = 1;
        unsigned running = 0;
        for (std::size_t r = 0; r < m; ++r) {
          running += exps[r] + 1;
          v /= running;
        }
        it->second = v;
      }
      total += c * it->second;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return total;
}

Rational expectation_over_weights(const Forest& f, const RationalPolynomial& poly)
{
  return simplex_expectation(f.edge_count(), poly);
}

} // namespace arbor
