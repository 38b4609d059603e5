#include "arbor/rational.hpp"

#include <stdexcept>

namespace arbor {

Integer factorial(unsigned n)
{
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer matching_count(unsigned n)
{
  if (n % 2 != 0)
    return 0;
  Integer r = 1;
  for (unsigned m = n; m >= 2; m -= 2)
    r *= m - 1;
  return r;
}

Integer catalan(unsigned m)
{
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), 2 * m, m);
  return r / (m + 1);
}

Rational pow(const Rational& base, unsigned exp)
{
  Rational r = 1;
  for (unsigned i = 0; i < exp; ++i)
    r *= base;
  return r;
}

Rational parse_rational(const std::string& text)
{
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0)
    throw std::invalid_argument("not a rational number: '" + text + "'");
  if (r.get_den() == 0)
    throw std::invalid_argument("zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

} // namespace arbor
