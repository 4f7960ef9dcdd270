#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace padic {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational in canonical (reduced, positive denominator) form.
using Rational = boost::multiprecision::cpp_rational;

// Measures are plain exact rationals; the alias documents intent.
using MeasureValue = Rational;

BigInt pow_big(std::uint64_t base, std::uint64_t exponent);

// base^exponent as a rational; negative exponents give reciprocals.
Rational pow_rational(std::uint64_t base, std::int64_t exponent);

// "num/den" (always with a denominator, "0/1" for zero).
std::string fraction_string(const Rational& value);

// Decimal approximation rounded to 12 significant digits.
std::string decimal_string(const Rational& value);

Rational parse_fraction(const std::string& text);

}  // namespace padic
