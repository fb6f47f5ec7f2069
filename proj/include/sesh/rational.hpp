#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace sesh {

// Exact scalars. GMP supplies the bignum arithmetic; everything downstream
// (kernels, multiplicities, brackets) is built on these two types and stays
// exact end to end.
using Integer = mpz_class;
using Rational = mpq_class;

// Canonicalized rational from machine integers.
Rational rat(long num, long den = 1);

// Parses "p", "-p/q" etc. Whitespace around the number is accepted.
std::optional<Rational> rat_parse(const std::string& s);

// "p/q" with q omitted when it is 1. Inverse of rat_parse.
std::string rat_str(const Rational& q);

inline bool rat_is_integer(const Rational& q) {
    return mpz_cmp_ui(q.get_den().get_mpz_t(), 1) == 0;
}

// Requires rat_is_integer and a value that fits in long.
long rat_to_long(const Rational& q);

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// lcm of the denominators of a vector; 1 for an empty vector.
Integer common_denominator(const std::vector<Rational>& v);

} // namespace sesh
