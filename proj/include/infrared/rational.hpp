#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ir {

using Integer = mpz_class;
using Rational = mpq_class;
using VecQ = std::vector<Rational>;

// Accepts "p", "p/q", and optionally signed forms; throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// Canonical "p/q" (or "p" when q == 1).
std::string to_string(const Rational& q);
std::string to_string(const VecQ& v);

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(const Integer& z) { return sgn(z); }

// Smallest positive multiple making all entries integral.
Integer common_denominator(const VecQ& v);

// Scales v to a primitive integer vector with the same direction.
VecQ primitive(const VecQ& v);

Rational dot(const VecQ& a, const VecQ& b);

Rational factorial(unsigned n);

} // namespace ir
