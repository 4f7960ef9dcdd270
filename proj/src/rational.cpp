#include "padic/rational.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "padic/errors.hpp"

namespace padic {

BigInt pow_big(std::uint64_t base, std::uint64_t exponent) {
    return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exponent));
}

Rational pow_rational(std::uint64_t base, std::int64_t exponent) {
    require(base != 0, "pow_rational: zero base");
    if (exponent >= 0) return Rational(pow_big(base, static_cast<std::uint64_t>(exponent)));
    return Rational(BigInt(1), pow_big(base, static_cast<std::uint64_t>(-exponent)));
}

std::string fraction_string(const Rational& value) {
    return numerator(value).str() + "/" + denominator(value).str();
}

std::string decimal_string(const Rational& value) {
    using Decimal = boost::multiprecision::cpp_dec_float_50;
    const Decimal approx = Decimal(numerator(value)) / Decimal(denominator(value));
    return approx.str(12, std::ios_base::fmtflags(0));
}

Rational parse_fraction(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw ParseError("malformed fraction", 0, text);
    }
}

}  // namespace padic
