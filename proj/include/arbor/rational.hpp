#ifndef ARBOR_RATIONAL_HPP
#define ARBOR_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace arbor {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1)
{
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

Integer factorial(unsigned n);

// (n-1)!! for even n, i.e. the number of perfect matchings of n points; 0 for odd n.
Integer matching_count(unsigned n);

Integer catalan(unsigned m);

Rational pow(const Rational& base, unsigned exp);

// Parses "p", "p/q", "-p/q" and decimal integers.
Rational parse_rational(const std::string& text);

} // namespace arbor

#endif
