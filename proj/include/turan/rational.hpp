#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace turan {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "p", or a finite decimal such as "0.3" or "-1.25" into a
/// canonical rational. Throws std::invalid_argument on malformed input or a
/// zero denominator.
Rational parse_rational(std::string_view text);

/// num/den in canonical form. mpq_class(num, den) alone leaves common
/// factors in place, and GMP arithmetic on such values is undefined.
inline Rational ratio(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Canonical "p/q" form ("p" when q == 1).
std::string to_string(const Rational& value);

/// Exact value of a finite double (every double is a dyadic rational).
Rational exact_from_double(double value);

double to_double(const Rational& value);

/// Bit length of the larger of numerator and denominator.
std::size_t bit_size(const Rational& value);

/// floor(value) as an Integer.
Integer floor_of(const Rational& value);

/// Reduces value into [-1/2, 1/2) modulo 1.
Rational reduce_mod_one(const Rational& value);

/// Same reduction for an inexact coordinate.
double reduce_mod_one(double value);

Integer lcm(const Integer& a, const Integer& b);

}  // namespace turan
