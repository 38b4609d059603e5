#include "arbor/gausscumulant.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace arbor {

std::string variable_name(Var v, VariableSpace space)
{
  std::ostringstream os;
  switch (space) {
  case VariableSpace::Vector:
    os << 'x' << v + 1;
    break;
  case VariableSpace::Matrix:
    os << "x[" << row_of(v) + 1 << ',' << col_of(v) + 1 << ']';
    break;
  case VariableSpace::Symmetric:
    os << "Q[" << row_of(v) + 1 << ',' << col_of(v) + 1 << ']';
    break;
  }
  return os.str();
}

std::string to_string(const RationalPolynomial& p, VariableSpace space)
{
  return p.to_string([space](Var v) { return variable_name(v, space); },
                     [](const Rational& c) { return c.get_str(); });
}

namespace {

class PolynomialParser
{
public:
  PolynomialParser(const std::string& text, VariableSpace space) : text_(text), space_(space) {}

  RationalPolynomial parse()
  {
    RationalPolynomial result;
    skip_space();
    if (pos_ == text_.size())
      fail("empty polynomial");
    bool first = true;
    while (pos_ < text_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      result.add_term(parse_monomial_into_coefficient(sign).first, coef_);
      skip_space();
    }
    return result;
  }

private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space()
  {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const
  {
    throw std::invalid_argument("polynomial, column " + std::to_string(pos_ + 1) + ": " + what);
  }

  long parse_int()
  {
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected a number");
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 1000000000L)
        fail("number too large");
      ++pos_;
    }
    return v;
  }

  Var parse_variable()
  {
    char head = peek();
    bool ok = (space_ == VariableSpace::Vector && head == 'x') ||
              (space_ == VariableSpace::Matrix && (head == 'x' || head == 'X')) ||
              (space_ == VariableSpace::Symmetric && (head == 'Q' || head == 'q'));
    if (!ok)
      fail(std::string("unexpected '") + head + "'");
    ++pos_;
    std::vector<long> idx;
    if (peek() == '[') {
      ++pos_;
      skip_space();
      idx.push_back(parse_int());
      skip_space();
      while (peek() == ',') {
        ++pos_;
        skip_space();
        idx.push_back(parse_int());
        skip_space();
      }
      if (peek() != ']')
        fail("expected ']'");
      ++pos_;
    } else {
      idx.push_back(parse_int());
    }
    for (long i : idx)
      if (i < 1 || i > 255)
        fail("variable index out of range 1..255");
    if (space_ == VariableSpace::Vector) {
      if (idx.size() != 1)
        fail("vector variables take one index");
      return vector_var(static_cast<int>(idx[0] - 1));
    }
    if (idx.size() != 2)
      fail("matrix variables take two indices");
    int i = static_cast<int>(idx[0] - 1);
    int j = static_cast<int>(idx[1] - 1);
    return space_ == VariableSpace::Matrix ? matrix_var(i, j) : symmetric_var(i, j);
  }

  std::pair<Monomial, bool> parse_monomial_into_coefficient(int sign)
  {
    coef_ = sign;
    std::vector<Factor> factors;
    bool any = false;
    for (;;) {
      skip_space();
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        long num = parse_int();
        long den = 1;
        if (peek() == '/') {
          ++pos_;
          den = parse_int();
          if (den == 0)
            fail("zero denominator");
        }
        coef_ *= make_rational(num, den);
        any = true;
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        Var v = parse_variable();
        unsigned e = 1;
        if (peek() == '^') {
          ++pos_;
          e = static_cast<unsigned>(parse_int());
        }
        factors.push_back({v, e});
        any = true;
      } else if (c == '*' && any) {
        ++pos_;
      } else {
        break;
      }
    }
    if (!any)
      fail("expected a term");
    return {Monomial::from_factors(std::move(factors)), true};
  }

  const std::string& text_;
  VariableSpace space_;
  std::size_t pos_ = 0;
  Rational coef_;
};

Rational odd_double_factorial(unsigned even_exp)
{
  // E z^e for a standard Gaussian: (e-1)!! for even e.
  if (even_exp % 2 != 0)
    return 0;
  return Rational(matching_count(even_exp));
}

} // namespace

RationalPolynomial parse_polynomial(const std::string& text, VariableSpace space)
{
  return PolynomialParser(text, space).parse();
}

namespace {

struct WickState
{
  std::vector<unsigned> exps;
  std::vector<std::vector<RationalPolynomial>> cov;  // cov[a][b]
  std::vector<std::vector<bool>> nonzero;
  std::map<std::tuple<std::size_t, std::size_t, unsigned>, RationalPolynomial> power_cache;
  std::vector<unsigned> rem;
  std::vector<std::tuple<std::size_t, std::size_t, unsigned>> chosen;
  Rational weight_den = 1;
  RationalPolynomial total;

  const RationalPolynomial& power(std::size_t a, std::size_t b, unsigned m)
  {
    auto key = std::make_tuple(a, b, m);
    auto it = power_cache.find(key);
    if (it != power_cache.end())
      return it->second;
    RationalPolynomial p(1);
    for (unsigned i = 0; i < m; ++i)
      p = p * cov[a][b];
    return power_cache.emplace(key, std::move(p)).first->second;
  }

  void leaf()
  {
    Rational num = 1;
    for (unsigned e : exps)
      num *= Rational(factorial(e));
    RationalPolynomial term(num / weight_den);
    for (const auto& [a, b, m] : chosen)
      term = term * power(a, b, m);
    total += term;
  }

  // Distribute the remaining letters of variable a among partners b, b+1, ...
  void distribute(std::size_t a, std::size_t b)
  {
    if (rem[a] == 0) {
      next_var(a + 1);
      return;
    }
    if (b >= exps.size())
      return;
    if (!nonzero[a][b] || rem[b] == 0) {
      distribute(a, b + 1);
      return;
    }
    const unsigned cap = std::min(rem[a], rem[b]);
    for (unsigned m = 0; m <= cap; ++m) {
      if (m > 0) {
        rem[a] -= m;
        rem[b] -= m;
        chosen.emplace_back(a, b, m);
        weight_den *= Rational(factorial(m));
      }
      distribute(a, b + 1);
      if (m > 0) {
        weight_den /= Rational(factorial(m));
        chosen.pop_back();
        rem[a] += m;
        rem[b] += m;
      }
    }
  }

  void next_var(std::size_t a)
  {
    if (a == exps.size()) {
      leaf();
      return;
    }
    if (rem[a] == 0) {
      next_var(a + 1);
      return;
    }
    const unsigned max_self = nonzero[a][a] ? rem[a] / 2 : 0;
    for (unsigned s = 0; s <= max_self; ++s) {
      if (s > 0) {
        rem[a] -= 2 * s;
        chosen.emplace_back(a, a, s);
        weight_den *= Rational(factorial(s)) * pow(Rational(2), s);
      }
      distribute(a, a + 1);
      if (s > 0) {
        weight_den /= Rational(factorial(s)) * pow(Rational(2), s);
        chosen.pop_back();
        rem[a] += 2 * s;
      }
    }
  }
};

} // namespace

RationalPolynomial wick_expectation(const RationalPolynomial& poly, const GaussianCovariance& cov)
{
  RationalPolynomial result;
  std::map<std::pair<Var, Var>, RationalPolynomial> cov_cache;
  auto covariance = [&](Var u, Var v) -> const RationalPolynomial& {
    auto key = u < v ? std::make_pair(u, v) : std::make_pair(v, u);
    auto it = cov_cache.find(key);
    if (it == cov_cache.end())
      it = cov_cache.emplace(key, cov(key.first, key.second)).first;
    return it->second;
  };
  for (const auto& [mono, coef] : poly.terms()) {
    if (mono.degree() % 2 != 0)
      continue;
    if (mono.is_one()) {
      result.add_term(mono, coef);
      continue;
    }
    WickState st;
    const auto fs = mono.factors();
    const std::size_t r = fs.size();
    st.exps.resize(r);
    st.cov.assign(r, std::vector<RationalPolynomial>(r));
    st.nonzero.assign(r, std::vector<bool>(r, false));
    for (std::size_t a = 0; a < r; ++a) {
      st.exps[a] = fs[a].exp;
      for (std::size_t b = a; b < r; ++b) {
        st.cov[a][b] = covariance(fs[a].var, fs[b].var);
        st.nonzero[a][b] = !st.cov[a][b].is_zero();
      }
    }
    st.rem = st.exps;
    st.next_var(0);
    result += st.total * coef;
  }
  return result;
}

RationalPolynomial standard_gaussian_expectation(const RationalPolynomial& poly, const std::function<bool(Var)>& gaussian)
{
  RationalPolynomial result;
  for (const auto& [mono, coef] : poly.terms()) {
    Rational c = coef;
    std::vector<Factor> rest;
    for (const auto& f : mono.factors()) {
      if (!gaussian || gaussian(f.var))
        c *= odd_double_factorial(f.exp);
      else
        rest.push_back(f);
      if (c == 0)
        break;
    }
    if (c != 0)
      result.add_term(Monomial::from_factors(std::move(rest)), c);
  }
  return result;
}

RationalPolynomial tensor_product(const std::vector<RationalPolynomial>& fs)
{
  RationalPolynomial result(1);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const int row = static_cast<int>(i);
    RationalPolynomial placed = fs[i].rename([row](Var v) {
      if (v > 0xffu)
        throw std::invalid_argument("tensor_product expects functions of a vector variable");
      return matrix_var(row, static_cast<int>(v));
    });
    result = result * placed;
  }
  return result;
}

RationalPolynomial tree_operator(const Forest& tree, const RationalPolynomial& f, int columns)
{
  RationalPolynomial g = f;
  for (const auto& e : tree.edges()) {
    RationalPolynomial next;
    for (int j = 0; j < columns; ++j)
      next += g.derivative(matrix_var(e.a, j)).derivative(matrix_var(e.b, j));
    g = std::move(next);
    if (g.is_zero())
      break;
  }
  return g;
}

RationalPolynomial forest_derivative(const Forest& forest, const RationalPolynomial& f)
{
  RationalPolynomial g = f;
  for (const auto& e : forest.edges()) {
    g = g.derivative(symmetric_var(e.a, e.b));
    if (g.is_zero())
      break;
  }
  return g;
}

RationalPolynomial substitute_weight_matrix(const RationalPolynomial& f, const SymbolicWeightMatrix& wt)
{
  return f.substitute([&wt](Var v) {
    int i = row_of(v);
    int j = col_of(v);
    if (i >= wt.size() || j >= wt.size())
      throw std::invalid_argument("polynomial uses Q[" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                  "] outside Sym_" + std::to_string(wt.size()));
    return wt.entry_polynomial(i, j);
  });
}

Rational evaluate_symmetric(const RationalPolynomial& f, const RationalMatrix& a)
{
  return f.evaluate([&a](Var v) -> Rational {
    auto i = static_cast<std::size_t>(row_of(v));
    auto j = static_cast<std::size_t>(col_of(v));
    if (i >= a.size() || j >= a.size())
      throw std::invalid_argument("polynomial variable outside the matrix");
    return a[i][j];
  });
}

int column_count(const std::vector<RationalPolynomial>& fs)
{
  int n = 1;
  for (const auto& f : fs)
    for (const auto& [m, c] : f.terms())
      for (const auto& fac : m.factors())
        n = std::max(n, static_cast<int>(fac.var) + 1);
  return n;
}

Rational gaussian_joint_cumulant(const std::vector<RationalPolynomial>& fs)
{
  const int k = static_cast<int>(fs.size());
  if (k == 0)
    throw std::invalid_argument("joint cumulant of an empty family");
  const RationalPolynomial f = tensor_product(fs);
  const SetPartition top = SetPartition::coarsest(k);
  Rational total = 0;
  for (const auto& phi : partitions(k)) {
    // Law of [Phi]^(1/2) Z: rows in one block share a single standard Gaussian vector.
    RationalPolynomial copies = f.rename([&phi](Var v) { return matrix_var(phi.block_of(row_of(v)), col_of(v)); });
    total += Rational(moebius(phi, top)) * standard_gaussian_expectation(copies).constant_term();
  }
  return total;
}

Rational malliavin_rhs(const std::vector<RationalPolynomial>& fs)
{
  const int k = static_cast<int>(fs.size());
  if (k == 0)
    throw std::invalid_argument("malliavin_rhs of an empty family");
  const int columns = column_count(fs);
  const RationalPolynomial f = tensor_product(fs);
  Rational total = 0;
  for_each_spanning_tree(k, [&](const Forest& tree) {
    RationalPolynomial g = tree_operator(tree, f, columns);
    if (g.is_zero())
      return;
    SymbolicWeightMatrix wt(tree);
    // Entries of sqrt(wt) Z have covariance delta_jj' wt(i,i').
    RationalPolynomial tokens = wick_expectation(g, [&wt](Var u, Var v) -> RationalPolynomial {
      if (col_of(u) != col_of(v))
        return {};
      return wt.entry_polynomial(row_of(u), row_of(v));
    });
    total += expectation_over_weights(tree, tokens);
  });
  return total;
}

IdentityCheck malliavin_check(const std::vector<RationalPolynomial>& fs)
{
  IdentityCheck c;
  c.lhs = gaussian_joint_cumulant(fs);
  c.rhs = malliavin_rhs(fs);
  c.holds = c.lhs == c.rhs;
  return c;
}

namespace {

void check_symmetric_support(const RationalPolynomial& f, int k)
{
  for (const auto& [m, c] : f.terms())
    for (const auto& fac : m.factors())
      if (row_of(fac.var) >= k || col_of(fac.var) >= k)
        throw std::invalid_argument("polynomial uses " + variable_name(fac.var, VariableSpace::Symmetric) +
                                    " outside Sym_" + std::to_string(k));
}

} // namespace

IdentityCheck bkar_check(const RationalPolynomial& f, int k)
{
  check_symmetric_support(f, k);
  IdentityCheck c;
  c.lhs = f.coefficient_sum();
  c.rhs = 0;
  for (const auto& forest : forests(k)) {
    RationalPolynomial d = forest_derivative(forest, f);
    if (d.is_zero())
      continue;
    c.rhs += expectation_over_weights(forest, substitute_weight_matrix(d, SymbolicWeightMatrix(forest)));
  }
  c.holds = c.lhs == c.rhs;
  return c;
}

IdentityCheck connected_bkar_check(const RationalPolynomial& f, int k)
{
  check_symmetric_support(f, k);
  IdentityCheck c;
  c.lhs = 0;
  const SetPartition top = SetPartition::coarsest(k);
  for (const auto& pi : partitions(k))
    c.lhs += Rational(moebius(pi, top)) * evaluate_symmetric(f, partition_matrix(pi));
  c.rhs = 0;
  for_each_spanning_tree(k, [&](const Forest& tree) {
    RationalPolynomial d = forest_derivative(tree, f);
    if (!d.is_zero())
      c.rhs += expectation_over_weights(tree, substitute_weight_matrix(d, SymbolicWeightMatrix(tree)));
  });
  c.holds = c.lhs == c.rhs;
  return c;
}

namespace {

// Variable ids for the interpolation pipeline.
constexpr Var first_copy = 0;        // zeta^(1)_j -> j
constexpr Var second_copy = 1u << 12;  // zeta^(2)_j -> second_copy + j
constexpr Var t_var = 1u << 20;
constexpr Var s_var = t_var + 1;     // s = sqrt(1 - t^2)

Rational interpolation_integral(const RationalPolynomial& f, const RationalPolynomial& g, int columns)
{
  RationalPolynomial integrand;
  for (int j = 0; j < columns; ++j) {
    RationalPolynomial df = f.derivative(vector_var(j));
    RationalPolynomial dg = g.derivative(vector_var(j));
    if (df.is_zero() || dg.is_zero())
      continue;
    RationalPolynomial dg_mixed = dg.substitute([](Var v) {
      return RationalPolynomial::variable(t_var) * RationalPolynomial::variable(first_copy + v) +
             RationalPolynomial::variable(s_var) * RationalPolynomial::variable(second_copy + v);
    });
    integrand += df * dg_mixed;
  }
  RationalPolynomial in_t =
      standard_gaussian_expectation(integrand, [](Var v) { return v != t_var && v != s_var; });
  Rational total = 0;
  for (const auto& [m, c] : in_t.terms()) {
    unsigned te = m.exponent(t_var);
    unsigned se = m.exponent(s_var);
    if (se % 2 != 0)
      throw std::logic_error("odd power of sqrt(1-t^2) survived the Gaussian expectation");
    // t^te (1 - t^2)^(se/2), integrated over [0,1] term by term.
    const unsigned half = se / 2;
    Integer binom = 1;
    for (unsigned r = 0; r <= half; ++r) {
      if (r > 0)
        binom = binom * (half - r + 1) / r;
      Rational piece = Rational(binom) / (te + 2 * r + 1);
      if (r % 2 == 0)
        total += c * piece;
      else
        total -= c * piece;
    }
  }
  return total;
}

} // namespace

CovarianceIdentityCheck covariance_identity_check(const RationalPolynomial& f, const RationalPolynomial& g)
{
  CovarianceIdentityCheck c;
  const int columns = column_count({f, g});
  auto mean = [](const RationalPolynomial& p) { return standard_gaussian_expectation(p).constant_term(); };
  c.covariance = mean(f * g) - mean(f) * mean(g);
  c.tree_formula = malliavin_rhs({f, g});
  c.interpolation = interpolation_integral(f, g, columns);
  c.holds = c.covariance == c.tree_formula && c.covariance == c.interpolation;
  return c;
}

} // namespace arbor
