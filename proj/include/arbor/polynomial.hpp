#ifndef ARBOR_POLYNOMIAL_HPP
#define ARBOR_POLYNOMIAL_HPP

#include "arbor/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace arbor {

// Variables are opaque 32-bit ids; each module packs its own index tuples into them.
using Var = std::uint32_t;

struct Factor
{
  Var var;
  unsigned exp;
  auto operator<=>(const Factor&) const = default;
};

// Commutative monomial, factors sorted by variable id with nonzero exponents.
class Monomial
{
public:
  Monomial() = default;

  static Monomial of(Var v, unsigned exp = 1)
  {
    Monomial m;
    if (exp > 0)
      m.factors_.push_back({v, exp});
    return m;
  }

  // Builds from arbitrary (var, exp) pairs; repeated variables are merged.
  static Monomial from_factors(std::vector<Factor> factors)
  {
    std::sort(factors.begin(), factors.end());
    Monomial m;
    for (const auto& f : factors) {
      if (f.exp == 0)
        continue;
      if (!m.factors_.empty() && m.factors_.back().var == f.var)
        m.factors_.back().exp += f.exp;
      else
        m.factors_.push_back(f);
    }
    return m;
  }

  std::span<const Factor> factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }

  unsigned degree() const
  {
    unsigned d = 0;
    for (const auto& f : factors_)
      d += f.exp;
    return d;
  }

  unsigned exponent(Var v) const
  {
    for (const auto& f : factors_)
      if (f.var == v)
        return f.exp;
    return 0;
  }

  Monomial operator*(const Monomial& other) const
  {
    Monomial r;
    r.factors_.reserve(factors_.size() + other.factors_.size());
    auto a = factors_.begin();
    auto b = other.factors_.begin();
    while (a != factors_.end() && b != other.factors_.end()) {
      if (a->var < b->var)
        r.factors_.push_back(*a++);
      else if (b->var < a->var)
        r.factors_.push_back(*b++);
      else {
        r.factors_.push_back({a->var, a->exp + b->exp});
        ++a;
        ++b;
      }
    }
    r.factors_.insert(r.factors_.end(), a, factors_.end());
    r.factors_.insert(r.factors_.end(), b, other.factors_.end());
    return r;
  }

  // Lowers the exponent of v by one; returns the old exponent (0 means the derivative vanishes).
  unsigned differentiate(Var v)
  {
    for (auto it = factors_.begin(); it != factors_.end(); ++it) {
      if (it->var != v)
        continue;
      unsigned e = it->exp;
      if (--it->exp == 0)
        factors_.erase(it);
      return e;
    }
    return 0;
  }

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

private:
  std::vector<Factor> factors_;
};

template<typename C>
class Polynomial
{
public:
  using Coefficient = C;
  using TermMap = std::map<Monomial, C>;

  Polynomial() = default;
  Polynomial(C constant) { add_term(Monomial{}, std::move(constant)); }
  Polynomial(long constant) : Polynomial(C(constant)) {}

  static Polynomial variable(Var v, unsigned exp = 1)
  {
    Polynomial p;
    p.add_term(Monomial::of(v, exp), C(1));
    return p;
  }

  static Polynomial term(const Monomial& m, C coef)
  {
    Polynomial p;
    p.add_term(m, std::move(coef));
    return p;
  }

  void add_term(const Monomial& m, const C& coef)
  {
    if (coef == C{})
      return;
    auto [it, inserted] = terms_.try_emplace(m, coef);
    if (!inserted) {
      it->second += coef;
      if (it->second == C{})
        terms_.erase(it);
    }
  }

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const
  {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
  }

  C constant_term() const
  {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? C{} : it->second;
  }

  unsigned total_degree() const
  {
    unsigned d = 0;
    for (const auto& [m, c] : terms_)
      d = std::max(d, m.degree());
    return d;
  }

  // Sum of all coefficients, i.e. the value at the all-ones point.
  C coefficient_sum() const
  {
    C s{};
    for (const auto& [m, c] : terms_)
      s += c;
    return s;
  }

  Polynomial& operator+=(const Polynomial& o)
  {
    for (const auto& [m, c] : o.terms_)
      add_term(m, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o)
  {
    for (const auto& [m, c] : o.terms_)
      add_term(m, -c);
    return *this;
  }

  Polynomial& operator*=(const C& s)
  {
    if (s == C{}) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_)
      c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const C& s) { return a *= s; }
  friend Polynomial operator*(const C& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
  {
    Polynomial r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_)
        r.add_term(ma * mb, ca * cb);
    return r;
  }

  Polynomial operator-() const
  {
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_)
      c = -c;
    return r;
  }

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

  Polynomial derivative(Var v) const
  {
    Polynomial r;
    for (const auto& [m, c] : terms_) {
      Monomial d = m;
      unsigned e = d.differentiate(v);
      if (e != 0)
        r.add_term(d, c * C(static_cast<long>(e)));
    }
    return r;
  }

  // Replaces every variable by the polynomial returned from `image(var)`.
  template<typename F>
  Polynomial substitute(F&& image) const
  {
    std::map<Var, std::vector<Polynomial>> powers;
    auto power = [&](Var v, unsigned e) -> const Polynomial& {
      auto& cache = powers[v];
      if (cache.empty()) {
        cache.emplace_back(C(1));
        cache.push_back(image(v));
      }
      while (cache.size() <= e)
        cache.push_back(cache.back() * cache[1]);
      return cache[e];
    };
    Polynomial r;
    for (const auto& [m, c] : terms_) {
      Polynomial t(c);
      for (const auto& f : m.factors()) {
        t = t * power(f.var, f.exp);
        if (t.is_zero())
          break;
      }
      r += t;
    }
    return r;
  }

  // Maps each variable to a new variable id; merging of collided variables is handled.
  template<typename F>
  Polynomial rename(F&& new_var) const
  {
    Polynomial r;
    for (const auto& [m, c] : terms_) {
      std::vector<Factor> fs;
      for (const auto& f : m.factors())
        fs.push_back({new_var(f.var), f.exp});
      r.add_term(Monomial::from_factors(std::move(fs)), c);
    }
    return r;
  }

  template<typename F>
  C evaluate(F&& value) const
  {
    C s{};
    for (const auto& [m, c] : terms_) {
      C t = c;
      for (const auto& f : m.factors()) {
        C v = value(f.var);
        for (unsigned i = 0; i < f.exp; ++i)
          t *= v;
      }
      s += t;
    }
    return s;
  }

  std::string to_string(const std::function<std::string(Var)>& name,
                        const std::function<std::string(const C&)>& coef) const
  {
    if (terms_.empty())
      return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first)
        os << " + ";
      first = false;
      std::string cs = coef(c);
      const bool bare = !m.factors().empty() && (cs == "1" || cs == "-1");
      if (bare)
        cs.pop_back();
      os << cs;
      bool space = !bare;
      for (const auto& f : m.factors()) {
        if (space)
          os << ' ';
        space = true;
        os << name(f.var);
        if (f.exp != 1)
          os << '^' << f.exp;
      }
    }
    return os.str();
  }

private:
  TermMap terms_;
};

using RationalPolynomial = Polynomial<Rational>;

} // namespace arbor

#endif
