// Exact rational scalars (GMP mpq) and their string form "p/q" or "p".
#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace saffine {

/// Arbitrary-precision rational; always canonical (lowest terms, q > 0).
using Rational = mpq_class;

/// Parses "p", "p/q", "+p/q" or "-p/q" with decimal digits only. Rejects
/// zero denominators, decimal points and exponents with InputError.
Rational parse_rational(std::string_view text);

/// Parses a comma separated list of rationals; blanks around entries ignored.
std::vector<Rational> parse_rational_list(std::string_view text);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational abs_value(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// q^k for k >= 0.
Rational power(const Rational& q, unsigned k);

/// Binomial coefficient C(n, k) as an exact integer rational.
Rational binomial(unsigned n, unsigned k);

}  // namespace saffine
