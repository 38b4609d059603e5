#include "arbor/guemc.hpp"

#include "arbor/errors.hpp"
#include "arbor/gausscumulant.hpp"
#include "arbor/mapcount.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

namespace arbor {

ComplexMatrix sample_gue(int N, std::mt19937_64& rng)
{
  if (N < 1)
    throw std::invalid_argument("GUE dimension must be at least 1");
  std::normal_distribution<double> normal;
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix m(N, N);
  for (int a = 0; a < N; ++a) {
    m(a, a) = normal(rng);
    for (int b = a + 1; b < N; ++b) {
      double x = normal(rng);
      double y = normal(rng);
      m(a, b) = std::complex<double>(x * r, y * r);
      m(b, a) = std::conj(m(a, b));
    }
  }
  return m;
}

ComplexMatrix sample_gue(int N, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  return sample_gue(N, rng);
}

namespace {

constexpr long chunk_size = 256;

struct TraceWords
{
  int colors = 0;
  std::vector<std::vector<int>> cycles;  // color index of each letter, in cycle order
};

TraceWords trace_words(const Permutation& theta, const Coloring& gamma)
{
  if (theta.size() != gamma.size())
    throw std::invalid_argument("theta and gamma must act on the same points");
  std::map<int, int> index;
  for (int c : gamma.colors())
    index.emplace(c, 0);
  int next = 0;
  for (auto& [c, i] : index)
    i = next++;
  TraceWords w;
  w.colors = next;
  for (const auto& cyc : theta.cycles()) {
    auto& word = w.cycles.emplace_back();
    for (int p : cyc)
      word.push_back(index.at(gamma(p)));
  }
  return w;
}

class ProductCache
{
public:
  explicit ProductCache(const std::vector<ComplexMatrix>& ms) : ms_(ms) {}

  const ComplexMatrix& product(const std::vector<int>& word)
  {
    auto it = cache_.find(word);
    if (it != cache_.end())
      return it->second;
    ComplexMatrix p = ms_[static_cast<std::size_t>(word[0])];
    for (std::size_t i = 1; i < word.size(); ++i)
      p = p * ms_[static_cast<std::size_t>(word[i])];
    return cache_.emplace(word, std::move(p)).first->second;
  }

  std::complex<double> trace(const std::vector<int>& word)
  {
    if (word.size() == 1)
      return ms_[static_cast<std::size_t>(word[0])].trace();
    const auto half = static_cast<std::ptrdiff_t>((word.size() + 1) / 2);
    std::vector<int> left(word.begin(), word.begin() + half);
    std::vector<int> right(word.begin() + half, word.end());
    const ComplexMatrix& l = product(left);
    const ComplexMatrix& r = product(right);
    return l.cwiseProduct(r.transpose()).sum();
  }

private:
  const std::vector<ComplexMatrix>& ms_;
  std::map<std::vector<int>, ComplexMatrix> cache_;
};

} // namespace

ThooftEstimate thooft_estimate(const Permutation& theta, const Coloring& gamma, int N, long samples,
                               std::uint64_t seed, int workers)
{
  if (N < 1)
    throw std::invalid_argument("N must be at least 1");
  if (samples < 2)
    throw std::invalid_argument("at least two samples are needed for a jackknife error");
  const TraceWords words = trace_words(theta, gamma);
  const int k = static_cast<int>(words.cycles.size());
  if (k > 8)
    throw CapExceeded("thooft_estimate supports at most 8 cycles");
  const auto M = static_cast<std::size_t>(samples);
  const auto K = static_cast<std::size_t>(k);
  std::vector<std::complex<double>> traces(M * K);

  const long chunks = (samples + chunk_size - 1) / chunk_size;
  std::atomic<long> next_chunk{0};
  auto work = [&] {
    for (long c = next_chunk++; c < chunks; c = next_chunk++) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(N), static_cast<std::uint32_t>(c)};
      std::mt19937_64 rng(seq);
      const long end = std::min(samples, (c + 1) * chunk_size);
      for (long s = c * chunk_size; s < end; ++s) {
        std::vector<ComplexMatrix> ms;
        for (int col = 0; col < words.colors; ++col)
          ms.push_back(sample_gue(N, rng));
        ProductCache cache(ms);
        for (std::size_t v = 0; v < K; ++v)
          traces[static_cast<std::size_t>(s) * K + v] = cache.trace(words.cycles[v]);
      }
    }
  };
  const int threads = std::max(1, std::min<int>(workers, static_cast<int>(chunks)));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t)
    pool.emplace_back(work);
  work();
  for (auto& t : pool)
    t.join();

  // Higher cumulants of the empirical law are shift invariant; centering keeps the sums small.
  if (k >= 2) {
    for (std::size_t v = 0; v < K; ++v) {
      std::complex<double> mean = 0;
      for (std::size_t s = 0; s < M; ++s)
        mean += traces[s * K + v];
      mean /= static_cast<double>(M);
      for (std::size_t s = 0; s < M; ++s)
        traces[s * K + v] -= mean;
    }
  }

  const std::uint32_t full = (1u << k) - 1;
  std::vector<std::complex<double>> sums(full + 1, 0.0);
  std::vector<std::complex<double>> per_sample((full + 1) * M);
  for (std::uint32_t mask = 1; mask <= full; ++mask)
    for (std::size_t s = 0; s < M; ++s) {
      std::complex<double> p = 1;
      for (std::size_t v = 0; v < K; ++v)
        if (mask >> v & 1u)
          p *= traces[s * K + v];
      per_sample[mask * M + s] = p;
      sums[mask] += p;
    }

  struct Term
  {
    double weight;
    std::vector<std::uint32_t> blocks;
  };
  std::vector<Term> terms;
  const SetPartition top = SetPartition::coarsest(k);
  for (const auto& phi : partitions(k))
    terms.push_back({moebius(phi, top).get_d(), phi.block_masks()});

  auto cumulant = [&](std::size_t leave_out, bool leave) {
    const double count = static_cast<double>(M) - (leave ? 1.0 : 0.0);
    std::complex<double> total = 0;
    for (const auto& t : terms) {
      std::complex<double> prod = t.weight;
      for (auto b : t.blocks) {
        std::complex<double> s = sums[b];
        if (leave)
          s -= per_sample[b * M + leave_out];
        prod *= s / count;
      }
      total += prod;
    }
    return total;
  };

  const double scale = std::pow(static_cast<double>(N), 2.0 + theta.size() / 2.0 - k);
  const std::complex<double> full_estimate = cumulant(0, false) / scale;
  std::vector<double> loo(M);
  double loo_mean = 0;
  for (std::size_t s = 0; s < M; ++s) {
    loo[s] = (cumulant(s, true) / scale).real();
    loo_mean += loo[s];
  }
  loo_mean /= static_cast<double>(M);
  double ss = 0;
  for (double v : loo)
    ss += (v - loo_mean) * (v - loo_mean);

  ThooftEstimate e;
  e.N = N;
  e.samples = samples;
  e.seed = seed;
  e.estimate = full_estimate.real();
  e.imaginary = full_estimate.imag();
  e.standard_error = std::sqrt(ss * (static_cast<double>(M) - 1) / static_cast<double>(M));
  return e;
}

ConvergenceReport convergence_report(const Permutation& theta, const Coloring& gamma, const std::vector<int>& grid,
                                     long samples, std::uint64_t seed, int workers)
{
  if (grid.empty())
    throw std::invalid_argument("empty N grid");
  ConvergenceReport r;
  r.target = count_map0(MapInstance(theta, gamma)).planar;
  std::vector<int> sorted = grid;
  std::sort(sorted.begin(), sorted.end());
  for (int N : sorted)
    r.rows.push_back(thooft_estimate(theta, gamma, N, samples, seed, workers));
  const auto& last = r.rows.back();
  const auto& first = r.rows.front();
  const double err_last = std::abs(last.estimate - static_cast<double>(r.target));
  const double err_first = std::abs(first.estimate - static_cast<double>(r.target));
  r.within_tolerance = err_last <= r.tolerance_in_se * last.standard_error;
  r.improves = r.rows.size() > 1 && err_last < err_first;
  return r;
}

std::string to_string(const GaussianRational& z)
{
  if (z.im == 0)
    return z.re.get_str();
  if (z.re == 0)
    return z.im.get_str() + "i";
  return "(" + z.re.get_str() + (z.im > 0 ? "+" : "") + z.im.get_str() + "i)";
}

PolynomialMatrix symbolic_matrix(int vertex, int color, int N)
{
  const auto n = static_cast<std::size_t>(N);
  PolynomialMatrix m(n, std::vector<ComplexPolynomial>(n));
  const GaussianRational i_unit(0, 1);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      auto& e = m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      if (a == b) {
        e = ComplexPolynomial::variable(entry_var(vertex, color, a, a));
      } else if (a < b) {
        e = ComplexPolynomial::variable(entry_var(vertex, color, a, b)) +
            ComplexPolynomial::variable(entry_var(vertex, color, b, a)) * i_unit;
      } else {
        e = ComplexPolynomial::variable(entry_var(vertex, color, b, a)) -
            ComplexPolynomial::variable(entry_var(vertex, color, a, b)) * i_unit;
      }
    }
  return m;
}

ComplexPolynomial trace_of_product(const std::vector<const PolynomialMatrix*>& factors, int N)
{
  const auto n = static_cast<std::size_t>(N);
  if (factors.empty())
    return ComplexPolynomial(static_cast<long>(N));
  PolynomialMatrix acc = *factors[0];
  for (std::size_t f = 1; f < factors.size(); ++f) {
    const PolynomialMatrix& rhs = *factors[f];
    PolynomialMatrix next(n, std::vector<ComplexPolynomial>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          next[a][b] += acc[a][c] * rhs[c][b];
    acc = std::move(next);
  }
  ComplexPolynomial t;
  for (std::size_t a = 0; a < n; ++a)
    t += acc[a][a];
  return t;
}

ComplexPolynomial finite_tree_operator(const Forest& tree, const ComplexPolynomial& f, int colors, int N)
{
  const GaussianRational half(make_rational(1, 2));
  ComplexPolynomial g = f;
  for (const auto& e : tree.edges()) {
    ComplexPolynomial next;
    for (int j = 0; j < colors; ++j)
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
          ComplexPolynomial d = g.derivative(entry_var(e.a, j, a, b)).derivative(entry_var(e.b, j, a, b));
          if (d.is_zero())
            continue;
          // Off-diagonal variables carry a 1/sqrt2, so their second derivative picks up 1/2.
          next += a == b ? d : d * half;
        }
    g = std::move(next);
    if (g.is_zero())
      break;
  }
  return g;
}

namespace {

std::vector<int> color_indices(const Coloring& gamma)
{
  std::map<int, int> index;
  for (int c : gamma.colors())
    index.emplace(c, 0);
  int next = 0;
  for (auto& [c, i] : index)
    i = next++;
  std::vector<int> out;
  for (int c : gamma.colors())
    out.push_back(index.at(c));
  return out;
}

void check_finite_guards(const Permutation& theta, const Coloring& gamma, int N)
{
  if (N < 1 || N > finite_n_max_N)
    throw CapExceeded("finite-N symbolic checks need N in {1, 2}; got " + std::to_string(N));
  if (theta.size() > finite_n_max_points)
    throw CapExceeded("finite-N symbolic checks need n <= 4; got " + std::to_string(theta.size()));
  if (theta.cycle_count() > finite_n_max_vertices)
    throw CapExceeded("finite-N symbolic checks need at most 3 cycles; got " + std::to_string(theta.cycle_count()));
  if (gamma.size() != theta.size())
    throw std::invalid_argument("theta and gamma must act on the same points");
}

} // namespace

GhastlyCheck ghastly_identity_check(const Permutation& theta, const Coloring& gamma, const VertexLabeling& nu,
                                    const Forest& tree, int N)
{
  check_finite_guards(theta, gamma, N);
  const int k = theta.cycle_count();
  if (nu.vertex_count() != k || tree.vertex_count() != k || !tree.is_tree())
    throw std::invalid_argument("nu and the tree must live on the cycles of theta");
  if (!nu.is_theta_invariant(theta))
    throw std::invalid_argument("vertex labeling is not theta-invariant");
  const std::vector<int> colour = color_indices(gamma);
  const int colors = *std::max_element(colour.begin(), colour.end()) + 1;

  std::map<std::pair<int, int>, PolynomialMatrix> mats;
  auto matrix = [&](int point) -> const PolynomialMatrix* {
    auto key = std::make_pair(nu(point), colour[static_cast<std::size_t>(point)]);
    auto it = mats.find(key);
    if (it == mats.end())
      it = mats.emplace(key, symbolic_matrix(key.first, key.second, N)).first;
    return &it->second;
  };

  ComplexPolynomial product(1);
  for (const auto& cyc : theta.cycles()) {
    std::vector<const PolynomialMatrix*> fs;
    for (int p : cyc)
      fs.push_back(matrix(p));
    product = product * trace_of_product(fs, N);
  }

  GhastlyCheck c;
  c.lhs = finite_tree_operator(tree, product, colors, N);
  for (const auto& word : canonical_splicing_polynomial(theta, gamma, nu, tree)) {
    std::vector<const PolynomialMatrix*> fs;
    for (const auto& l : word.kept_letters())
      fs.push_back(matrix(l.index));
    c.rhs += trace_of_product(fs, N);
  }
  c.holds = c.lhs == c.rhs;
  return c;
}

namespace {

struct EntryVar
{
  int vertex, color, row, col;
};

EntryVar decode(Var v)
{
  return {static_cast<int>(v >> 12), static_cast<int>(v >> 8 & 15u), static_cast<int>(v >> 4 & 15u),
          static_cast<int>(v & 15u)};
}

// Entries are formal complex Gaussians with bilinear covariance E M(a,b) M'(c,d) = delta_ad delta_bc.
RationalPolynomial entry_trace(const std::vector<std::pair<int, int>>& letters, int N)
{
  if (letters.empty())
    return RationalPolynomial(static_cast<long>(N));
  RationalPolynomial total;
  std::vector<int> idx(letters.size(), 0);
  for (;;) {
    RationalPolynomial term(1);
    for (std::size_t s = 0; s < letters.size(); ++s) {
      int a = idx[s];
      int b = idx[(s + 1) % letters.size()];
      term = term * RationalPolynomial::variable(entry_var(letters[s].first, letters[s].second, a, b));
    }
    total += term;
    std::size_t s = 0;
    while (s < idx.size() && ++idx[s] == N)
      idx[s++] = 0;
    if (s == idx.size())
      break;
  }
  return total;
}

} // namespace

ExactAndScaryCheck exact_and_scary_check(const Permutation& theta, const Coloring& gamma, int N)
{
  check_finite_guards(theta, gamma, N);
  const int k = theta.cycle_count();
  const std::vector<int> colour = color_indices(gamma);
  const auto cycles = theta.cycles();

  std::vector<RationalPolynomial> traces;
  for (const auto& cyc : cycles) {
    std::vector<std::pair<int, int>> letters;
    for (int p : cyc)
      letters.emplace_back(0, colour[static_cast<std::size_t>(p)]);
    traces.push_back(entry_trace(letters, N));
  }
  auto gue_cov = [](Var u, Var v) -> RationalPolynomial {
    EntryVar x = decode(u), y = decode(v);
    return x.color == y.color && x.row == y.col && x.col == y.row ? RationalPolynomial(1) : RationalPolynomial();
  };

  ExactAndScaryCheck c;
  c.lhs = joint_cumulant(
      [&](std::uint32_t mask) {
        RationalPolynomial p(1);
        for (int v = 0; v < k; ++v)
          if (mask >> v & 1u)
            p = p * traces[static_cast<std::size_t>(v)];
        return wick_expectation(p, gue_cov).constant_term();
      },
      k);

  const VertexLabeling nu = VertexLabeling::by_cycles(theta);
  c.rhs = 0;
  for_each_spanning_tree(k, [&](const Forest& tree) {
    RationalPolynomial poly;
    for (const auto& word : canonical_splicing_polynomial(theta, gamma, nu, tree)) {
      std::vector<std::pair<int, int>> letters;
      for (const auto& l : word.kept_letters())
        letters.emplace_back(l.vertex, colour[static_cast<std::size_t>(l.index)]);
      poly += entry_trace(letters, N);
    }
    if (poly.is_zero())
      return;
    SymbolicWeightMatrix wt(tree);
    RationalPolynomial tokens = wick_expectation(poly, [&wt](Var u, Var v) -> RationalPolynomial {
      EntryVar x = decode(u), y = decode(v);
      if (x.color != y.color || x.row != y.col || x.col != y.row)
        return {};
      return wt.entry_polynomial(x.vertex, y.vertex);
    });
    c.rhs += expectation_over_weights(tree, tokens);
  });
  c.holds = c.lhs == c.rhs;
  return c;
}

} // namespace arbor
