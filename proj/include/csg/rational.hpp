#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace csg {

using Rational = mpq_class;

// Accepts "p/q", integers and finite decimals ("0.6"), all parsed exactly.
// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

// Round-to-nearest decimal rendering with `digits` places after the point.
std::string to_decimal(const Rational& r, unsigned digits = 20);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

}  // namespace csg
