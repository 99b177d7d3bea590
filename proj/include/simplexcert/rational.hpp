#pragma once

#include <gmpxx.h>

#include <string>

namespace simplexcert {

// All core arithmetic is exact: rationals are GMP mpq values in canonical
// form, integers are unbounded. No floating point enters any certificate.
using Rational = mpq_class;
using Integer = mpz_class;

int sign(const Rational& x);
Rational abs(const Rational& x);
bool is_integer(const Rational& x);

Rational pow_rational(const Rational& base, unsigned long exp);
Integer pow_integer(const Integer& base, unsigned long exp);
Integer factorial(unsigned long k);
Integer binomial(unsigned long n, unsigned long k);

// Parses "p", "-p" or "p/q". Throws std::invalid_argument on anything else.
Rational parse_rational(const std::string& token);

// Canonical "p" or "p/q" text, the inverse of parse_rational.
std::string to_string(const Rational& x);

enum class Round { Down, Up, Nearest };

// log2 of a positive rational as an exact rational within 2^-20 of the true
// value, rounded in the requested direction (Down never overestimates, Up
// never underestimates). Throws std::domain_error for x <= 0.
Rational log2_rational(const Rational& x, Round dir);

// Fixed-point decimal rendering, rounding toward minus infinity at the last
// digit. Deterministic across platforms; used for log2 values in reports.
std::string format_fixed(const Rational& x, int decimals);

// Exact rational denoted by a fixed-point literal like "-269.886662";
// integers and "p/q" are accepted too. Inverse of format_fixed.
Rational parse_decimal(const std::string& text);

}  // namespace simplexcert
