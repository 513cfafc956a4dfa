#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace specklab {

using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;

/// Parses "p", "p/q" or a finite decimal such as "-0.25". Throws
/// std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" form; integers are written without a denominator.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// Scales a rational vector by a positive factor so that all entries are
/// integers with gcd 1. The zero vector is returned unchanged.
std::vector<Integer> primitive_integer_vector(const RationalVector& v);

Integer binomial(unsigned long n, unsigned long k);

}  // namespace specklab
