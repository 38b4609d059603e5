#include "arbor/permutations.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace arbor {

namespace {

struct UnionFind
{
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n))
  {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int x)
  {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }

  bool unite(int a, int b)
  {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }

  std::vector<int> parent;
};

} // namespace

Permutation::Permutation(std::vector<int> images) : images_(std::move(images))
{
  std::vector<bool> seen(images_.size(), false);
  for (int x : images_) {
    if (x < 0 || x >= size() || seen[static_cast<std::size_t>(x)])
      throw std::invalid_argument("images do not form a permutation");
    seen[static_cast<std::size_t>(x)] = true;
  }
}

Permutation Permutation::identity(int n)
{
  std::vector<int> im(static_cast<std::size_t>(n));
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::parse(const std::string& text, std::optional<int> n)
{
  std::vector<std::vector<int>> cycles;
  int largest = 0;
  bool open = false;
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("cycle notation, column " + std::to_string(pos + 1) + ": " + what);
  };
  while (pos < text.size()) {
    char ch = text[pos];
    if (std::isspace(static_cast<unsigned char>(ch)) || (ch == ',' && open)) {
      ++pos;
    } else if (ch == '(') {
      if (open)
        fail("nested '('");
      open = true;
      cycles.emplace_back();
      ++pos;
    } else if (ch == ')') {
      if (!open)
        fail("unmatched ')'");
      open = false;
      ++pos;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      if (!open)
        fail("point outside parentheses");
      std::size_t end = pos;
      while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end])))
        ++end;
      int point = std::stoi(text.substr(pos, end - pos));
      if (point < 1)
        fail("points are numbered from 1");
      cycles.back().push_back(point - 1);
      largest = std::max(largest, point);
      pos = end;
    } else {
      fail(std::string("unexpected character '") + ch + "'");
    }
  }
  if (open)
    fail("unterminated cycle");
  int size = n.value_or(largest);
  if (largest > size)
    throw std::invalid_argument("cycle notation mentions point " + std::to_string(largest) +
                                " but n = " + std::to_string(size));
  std::vector<int> im(static_cast<std::size_t>(size), -1);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      auto& slot = im[static_cast<std::size_t>(c[i])];
      if (slot != -1)
        throw std::invalid_argument("point " + std::to_string(c[i] + 1) + " appears twice");
      slot = c[(i + 1) % c.size()];
    }
  }
  for (int x = 0; x < size; ++x)
    if (im[static_cast<std::size_t>(x)] == -1)
      im[static_cast<std::size_t>(x)] = x;
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const
{
  std::vector<int> inv(images_.size());
  for (int x = 0; x < size(); ++x)
    inv[static_cast<std::size_t>((*this)(x))] = x;
  return Permutation(std::move(inv));
}

bool Permutation::is_involution() const
{
  for (int x = 0; x < size(); ++x)
    if ((*this)((*this)(x)) != x)
      return false;
  return true;
}

bool Permutation::is_identity() const
{
  for (int x = 0; x < size(); ++x)
    if ((*this)(x) != x)
      return false;
  return true;
}

std::vector<std::vector<int>> Permutation::cycles() const
{
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(images_.size(), false);
  for (int start = 0; start < size(); ++start) {
    if (seen[static_cast<std::size_t>(start)])
      continue;
    auto& cyc = out.emplace_back();
    for (int x = start; !seen[static_cast<std::size_t>(x)]; x = (*this)(x)) {
      seen[static_cast<std::size_t>(x)] = true;
      cyc.push_back(x);
    }
  }
  return out;
}

int Permutation::cycle_count() const
{
  int count = 0;
  std::vector<bool> seen(images_.size(), false);
  for (int start = 0; start < size(); ++start) {
    if (seen[static_cast<std::size_t>(start)])
      continue;
    ++count;
    for (int x = start; !seen[static_cast<std::size_t>(x)]; x = (*this)(x))
      seen[static_cast<std::size_t>(x)] = true;
  }
  return count;
}

std::string Permutation::to_string() const
{
  std::ostringstream os;
  for (const auto& c : cycles()) {
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i)
      os << (i ? " " : "") << c[i] + 1;
    os << ')';
  }
  return os.str();
}

Permutation compose(const Permutation& p, const Permutation& q)
{
  if (p.size() != q.size())
    throw std::invalid_argument("compose: permutations act on different sets");
  std::vector<int> im(static_cast<std::size_t>(p.size()));
  for (int x = 0; x < p.size(); ++x)
    im[static_cast<std::size_t>(x)] = p(q(x));
  return Permutation(std::move(im));
}

Matching::Matching(Permutation p) : perm_(std::move(p))
{
  for (int x = 0; x < perm_.size(); ++x)
    if (perm_(x) == x || perm_(perm_(x)) != x)
      throw std::invalid_argument("not a fixed-point-free involution");
}

Coloring Coloring::parse(const std::string& text, int n)
{
  if (text == "constant")
    return constant(n);
  std::vector<int> colors;
  for (char ch : text)
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == ',' || std::isspace(static_cast<unsigned char>(ch))))
      throw std::invalid_argument(std::string("coloring: unexpected character '") + ch + "'");
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  int c;
  while (in >> c) {
    if (c < 1)
      throw std::invalid_argument("coloring: colors are numbered from 1");
    colors.push_back(c - 1);
  }
  if (static_cast<int>(colors.size()) != n)
    throw std::invalid_argument("coloring has " + std::to_string(colors.size()) +
                                " entries but n = " + std::to_string(n));
  return Coloring(std::move(colors));
}

bool Coloring::is_constant() const
{
  return std::adjacent_find(colors_.begin(), colors_.end(), std::not_equal_to<>{}) == colors_.end();
}

bool Coloring::is_injective() const
{
  std::vector<int> sorted = colors_;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

std::string Coloring::to_string() const
{
  std::ostringstream os;
  for (std::size_t i = 0; i < colors_.size(); ++i)
    os << (i ? "," : "") << colors_[i] + 1;
  return os.str();
}

void for_each_matching(int n, const std::function<void(const Matching&)>& visit)
{
  if (n <= 0 || n % 2 != 0)
    return;
  std::vector<int> partner(static_cast<std::size_t>(n), -1);
  std::function<void()> rec = [&]() {
    int first = -1;
    for (int x = 0; x < n; ++x)
      if (partner[static_cast<std::size_t>(x)] == -1) {
        first = x;
        break;
      }
    if (first == -1) {
      visit(Matching(Permutation(partner)));
      return;
    }
    for (int y = first + 1; y < n; ++y) {
      if (partner[static_cast<std::size_t>(y)] != -1)
        continue;
      partner[static_cast<std::size_t>(first)] = y;
      partner[static_cast<std::size_t>(y)] = first;
      rec();
      partner[static_cast<std::size_t>(first)] = -1;
      partner[static_cast<std::size_t>(y)] = -1;
    }
  };
  rec();
}

std::vector<Matching> matchings(int n)
{
  std::vector<Matching> out;
  for_each_matching(n, [&](const Matching& m) { out.push_back(m); });
  return out;
}

bool is_transitive_pair(const Permutation& theta, const Permutation& iota)
{
  if (theta.size() != iota.size())
    throw std::invalid_argument("is_transitive_pair: permutations act on different sets");
  int n = theta.size();
  if (n == 0)
    return true;
  UnionFind uf(n);
  int components = n;
  for (int x = 0; x < n; ++x) {
    components -= uf.unite(x, theta(x));
    components -= uf.unite(x, iota(x));
  }
  return components == 1;
}

SetPartition::SetPartition(std::vector<std::vector<int>> blocks)
{
  int k = 0;
  for (auto& b : blocks) {
    if (b.empty())
      throw std::invalid_argument("set partition with an empty block");
    std::sort(b.begin(), b.end());
    k += static_cast<int>(b.size());
  }
  std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  block_of_.assign(static_cast<std::size_t>(k), -1);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (int x : blocks[i]) {
      if (x < 0 || x >= k || block_of_[static_cast<std::size_t>(x)] != -1)
        throw std::invalid_argument("blocks are not a partition of {1..k}");
      block_of_[static_cast<std::size_t>(x)] = static_cast<int>(i);
    }
  blocks_ = std::move(blocks);
}

SetPartition SetPartition::from_labels(std::span<const int> labels)
{
  int count = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::vector<int>> blocks(static_cast<std::size_t>(count));
  for (std::size_t x = 0; x < labels.size(); ++x)
    blocks[static_cast<std::size_t>(labels[x])].push_back(static_cast<int>(x));
  std::erase_if(blocks, [](const auto& b) { return b.empty(); });
  return SetPartition(std::move(blocks));
}

SetPartition SetPartition::finest(int k)
{
  std::vector<int> labels(static_cast<std::size_t>(k));
  std::iota(labels.begin(), labels.end(), 0);
  return from_labels(labels);
}

SetPartition SetPartition::coarsest(int k)
{
  std::vector<int> labels(static_cast<std::size_t>(k), 0);
  return from_labels(labels);
}

std::vector<std::uint32_t> SetPartition::block_masks() const
{
  std::vector<std::uint32_t> masks;
  for (const auto& b : blocks_) {
    std::uint32_t m = 0;
    for (int x : b)
      m |= 1u << x;
    masks.push_back(m);
  }
  return masks;
}

bool SetPartition::refines(const SetPartition& other) const
{
  if (ground_size() != other.ground_size())
    return false;
  for (const auto& b : blocks_)
    for (int x : b)
      if (!other.same_block(x, b.front()))
        return false;
  return true;
}

std::string SetPartition::to_string() const
{
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    os << (i ? "," : "") << '{';
    for (std::size_t j = 0; j < blocks_[i].size(); ++j)
      os << (j ? "," : "") << blocks_[i][j] + 1;
    os << '}';
  }
  os << '}';
  return os.str();
}

std::vector<SetPartition> partitions(int k)
{
  std::vector<SetPartition> out;
  if (k < 1)
    return out;
  // Restricted growth strings: label[0] = 0, label[i] <= 1 + max(label[0..i-1]).
  std::vector<int> label(static_cast<std::size_t>(k), 0);
  std::function<void(int, int)> rec = [&](int i, int max_label) {
    if (i == k) {
      out.push_back(SetPartition::from_labels(label));
      return;
    }
    for (int l = 0; l <= max_label + 1; ++l) {
      label[static_cast<std::size_t>(i)] = l;
      rec(i + 1, std::max(max_label, l));
    }
  };
  rec(1, 0);
  return out;
}

Integer moebius(const SetPartition& pi, const SetPartition& sigma)
{
  if (!pi.refines(sigma))
    return 0;
  std::vector<int> inner(static_cast<std::size_t>(sigma.block_count()), 0);
  for (const auto& b : pi.blocks())
    ++inner[static_cast<std::size_t>(sigma.block_of(b.front()))];
  Integer mu = 1;
  for (int r : inner) {
    mu *= factorial(static_cast<unsigned>(r - 1));
    if ((r - 1) % 2 != 0)
      mu = -mu;
  }
  return mu;
}

Rational joint_cumulant(const std::function<Rational(std::uint32_t)>& moment, int k)
{
  const SetPartition top = SetPartition::coarsest(k);
  Rational total = 0;
  for (const auto& p : partitions(k)) {
    Rational term(moebius(p, top));
    for (std::uint32_t mask : p.block_masks())
      term *= moment(mask);
    total += term;
  }
  return total;
}

} // namespace arbor
