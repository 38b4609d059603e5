#ifndef ARBOR_GUEMC_HPP
#define ARBOR_GUEMC_HPP

#include "arbor/arboreal.hpp"
#include "arbor/permutations.hpp"
#include "arbor/polynomial.hpp"
#include "arbor/rational.hpp"
#include "arbor/splicing.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace arbor {

using ComplexMatrix = Eigen::MatrixXcd;

// Diagonal N(0,1); off-diagonal (x + iy)/sqrt2 above the diagonal, Hermitian.
ComplexMatrix sample_gue(int N, std::mt19937_64& rng);
ComplexMatrix sample_gue(int N, std::uint64_t seed);

struct ThooftEstimate
{
  int N = 0;
  long samples = 0;
  std::uint64_t seed = 0;
  double estimate = 0;        // real part of the plug-in cumulant over N^(2+n/2-k)
  double imaginary = 0;       // imaginary part, should be near 0
  double standard_error = 0;  // delete-one jackknife
};

// Traces are unnormalized; one independent GUE matrix per color. Draws are split into fixed
// chunks with their own generators so the result does not depend on `workers`.
ThooftEstimate thooft_estimate(const Permutation& theta, const Coloring& gamma, int N, long samples,
                               std::uint64_t seed, int workers = 1);

struct ConvergenceReport
{
  std::vector<ThooftEstimate> rows;
  long target = 0;                  // planar map count
  bool within_tolerance = false;    // |estimate - target| <= 5 se at the largest N
  bool improves = false;            // error at the largest N below the error at the smallest N
  double tolerance_in_se = 5;
};

ConvergenceReport convergence_report(const Permutation& theta, const Coloring& gamma, const std::vector<int>& grid,
                                     long samples, std::uint64_t seed, int workers = 1);

// a + b i with rational parts.
struct GaussianRational
{
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(long v) : re(v), im(0) {}
  GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

  GaussianRational& operator+=(const GaussianRational& o)
  {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o)
  {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o)
  {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  GaussianRational operator-() const { return {-re, -im}; }
  bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
};

std::string to_string(const GaussianRational& z);

using ComplexPolynomial = Polynomial<GaussianRational>;

// Variable for entry (alpha, beta) of X_(i,j). Off-diagonal variables are stored scaled by
// 1/sqrt2, so X entries and the operator below have coefficients in Q(i).
inline Var entry_var(int i, int j, int alpha, int beta)
{
  return static_cast<Var>(i << 12 | j << 8 | alpha << 4 | beta);
}

inline constexpr int finite_n_max_N = 2;
inline constexpr int finite_n_max_points = 4;
inline constexpr int finite_n_max_vertices = 4;

using PolynomialMatrix = std::vector<std::vector<ComplexPolynomial>>;

PolynomialMatrix symbolic_matrix(int vertex, int color, int N);
ComplexPolynomial trace_of_product(const std::vector<const PolynomialMatrix*>& factors, int N);

// L_T^(N) = prod over edges {i,i'} of sum_j sum_(alpha,beta) d^2 / dx_ij(alpha,beta) dx_i'j(alpha,beta).
ComplexPolynomial finite_tree_operator(const Forest& tree, const ComplexPolynomial& f, int colors, int N);

struct GhastlyCheck
{
  ComplexPolynomial lhs;  // L_T^(N) applied to the product of traces
  ComplexPolynomial rhs;  // tr Poly at the symbolic matrices
  bool holds = false;
};

GhastlyCheck ghastly_identity_check(const Permutation& theta, const Coloring& gamma, const VertexLabeling& nu,
                                    const Forest& tree, int N);

struct ExactAndScaryCheck
{
  Rational lhs;  // joint cumulant of the unnormalized traces at finite N
  Rational rhs;  // sum over trees of E tr Poly at sqrt(wt_T)-mixed GUE matrices
  bool holds = false;
};

ExactAndScaryCheck exact_and_scary_check(const Permutation& theta, const Coloring& gamma, int N);

} // namespace arbor

#endif
