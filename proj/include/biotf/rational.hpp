#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace biotf {

// Exact rational scalar. GMP keeps it arbitrary precision; mpq_class values
// are always stored canonicalized (coprime, positive denominator).
using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p", "p/q" and a leading minus sign.
Rational rational_from_string(const std::string& text);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline int sign(const Rational& q) { return sgn(q); }

// gcd on rationals: gcd(a/b, c/d) = gcd(a,c)/lcm(b,d). Result is >= 0 and
// zero only when both inputs are zero. Dividing a set of rationals by their
// gcd leaves a set whose gcd is 1, which is what content stripping needs.
Rational rational_gcd(const Rational& a, const Rational& b);

Rational rational_pow(const Rational& base, unsigned exp);

inline double to_double(const Rational& q) { return q.get_d(); }

// Renders as "p" or "p/q" (q > 1), minus sign on the numerator.
std::string to_string(const Rational& q);

}  // namespace biotf
