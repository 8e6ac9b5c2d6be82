#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace elab {

// Exact arbitrary-precision rational. Every weight in the library is one of
// these; there is no floating point anywhere, so equality of measures and
// kernels is decidable and exact.
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(num, den);
}

// Parses "3/4", "-1/2", "2". Returns nullopt on malformed input.
inline std::optional<Rational> parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(boost::multiprecision::cpp_int(s));
        }
        boost::multiprecision::cpp_int num(s.substr(0, slash));
        boost::multiprecision::cpp_int den(s.substr(slash + 1));
        if (den == 0) return std::nullopt;
        return Rational(num, den);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline std::string rational_str(const Rational& q) {
    return q.str();
}

} // namespace elab
