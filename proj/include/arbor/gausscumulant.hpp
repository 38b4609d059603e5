#ifndef ARBOR_GAUSSCUMULANT_HPP
#define ARBOR_GAUSSCUMULANT_HPP

#include "arbor/arboreal.hpp"
#include "arbor/permutations.hpp"
#include "arbor/polynomial.hpp"

#include <functional>
#include <string>
#include <vector>

namespace arbor {

// Variable layouts used by this module. Indices are 0-based and limited to 255.
//   vector space R^n:     x_j        -> id j
//   matrix space Mat_kxn: X(i,j)     -> id (i << 8) | j
//   symmetric Sym_k:      Q(i,j)     -> id (min << 8) | max, one coordinate per unordered pair
enum class VariableSpace { Vector, Matrix, Symmetric };

inline Var vector_var(int j) { return static_cast<Var>(j); }
inline Var matrix_var(int i, int j) { return static_cast<Var>(i << 8 | j); }
inline Var symmetric_var(int i, int j) { return i < j ? matrix_var(i, j) : matrix_var(j, i); }
inline int row_of(Var v) { return static_cast<int>(v >> 8); }
inline int col_of(Var v) { return static_cast<int>(v & 0xffu); }

std::string variable_name(Var v, VariableSpace space);
std::string to_string(const RationalPolynomial& p, VariableSpace space);

// Parses sums of terms such as "3/2 x[1,2]^2 x[2,1] - x1 + 4". Vector space accepts x1 or x[1];
// matrix space X[i,j] or x[i,j]; symmetric space Q[i,j] (either order). Errors carry the column.
RationalPolynomial parse_polynomial(const std::string& text, VariableSpace space);

// Isserlis: E of each monomial is the sum over perfect pairings of its letters of the product of
// covariances. The covariance may be symbolic (a polynomial in other variables, e.g. weight tokens).
using GaussianCovariance = std::function<RationalPolynomial(Var, Var)>;
RationalPolynomial wick_expectation(const RationalPolynomial& poly, const GaussianCovariance& cov);

// E over independent standard Gaussians for the variables selected by `gaussian`; other
// variables are carried through as symbols.
RationalPolynomial standard_gaussian_expectation(const RationalPolynomial& poly,
                                                 const std::function<bool(Var)>& gaussian = {});

// Row i of the matrix space carries f_i's variables.
RationalPolynomial tensor_product(const std::vector<RationalPolynomial>& fs);

// L_T f = prod over edges {i,i'} of sum_j D_ij D_i'j, applied to a polynomial on Mat_kxn.
RationalPolynomial tree_operator(const Forest& tree, const RationalPolynomial& f, int columns);

// d_F f = prod over edges of the directional derivative along e_ij + e_ji on Sym_k.
RationalPolynomial forest_derivative(const Forest& forest, const RationalPolynomial& f);

// Substitutes the symbolic wt_F into a polynomial on Sym_k (diagonal 1, off-forest pairs 0).
RationalPolynomial substitute_weight_matrix(const RationalPolynomial& f, const SymbolicWeightMatrix& wt);

// Value of a polynomial on Sym_k at a numeric symmetric matrix.
Rational evaluate_symmetric(const RationalPolynomial& f, const RationalMatrix& a);

// Number of vector-space columns a family of functions uses (at least 1).
int column_count(const std::vector<RationalPolynomial>& fs);

// kappa(f_1(zeta), ..., f_k(zeta)) by the independent copies trick.
Rational gaussian_joint_cumulant(const std::vector<RationalPolynomial>& fs);

// Sum over spanning trees of E (L_T (f_1 x ... x f_k))(sqrt(wt_T) Z).
Rational malliavin_rhs(const std::vector<RationalPolynomial>& fs);

struct IdentityCheck
{
  Rational lhs;
  Rational rhs;
  bool holds = false;
};

IdentityCheck malliavin_check(const std::vector<RationalPolynomial>& fs);

// f([1_k]) = sum over forests of E (d_F f)(wt_F).
IdentityCheck bkar_check(const RationalPolynomial& f, int k);

// sum_Pi mu(Pi:1_k) f([Pi]) = sum over trees of E (d_T f)(wt_T).
IdentityCheck connected_bkar_check(const RationalPolynomial& f, int k);

struct CovarianceIdentityCheck
{
  Rational covariance;      // Cov(f(zeta), g(zeta)) from Gaussian moments
  Rational tree_formula;    // malliavin_rhs(f, g)
  Rational interpolation;   // int_0^1 E grad f(zeta1) . grad g(t zeta1 + sqrt(1-t^2) zeta2) dt
  bool holds = false;
};

CovarianceIdentityCheck covariance_identity_check(const RationalPolynomial& f, const RationalPolynomial& g);

} // namespace arbor

#endif
