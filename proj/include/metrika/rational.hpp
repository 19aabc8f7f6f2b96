#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

#include "metrika/error.hpp"

namespace metrika {

// Exact arithmetic backbone. Arbitrary precision keeps triangle scans and
// grid refinements free of overflow at any desk scale.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline long double to_long_double(const Rational& q) { return q.convert_to<long double>(); }

/// Floor toward -inf (cpp_int division truncates toward zero).
inline BigInt rational_floor(const Rational& q) {
    BigInt n = numerator(q), d = denominator(q);
    BigInt t = n / d;
    if (n < 0 && t * d != n) --t;
    return t;
}

inline BigInt rational_ceil(const Rational& q) {
    BigInt n = numerator(q), d = denominator(q);
    BigInt t = n / d;
    if (n > 0 && t * d != n) ++t;
    return t;
}

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

/// Exact square root when q is the square of a rational, nullopt otherwise.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    if (q == 0) return Rational(0);
    BigInt n = numerator(q), d = denominator(q);
    BigInt rn = boost::multiprecision::sqrt(n);
    if (rn * rn != n) return std::nullopt;
    BigInt rd = boost::multiprecision::sqrt(d);
    if (rd * rd != d) return std::nullopt;
    return Rational(rn, rd);
}

/// Renders "p" for integers, "p/q" otherwise.
inline std::string format_rational(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += '/';
        s += denominator(q).str();
    }
    return s;
}

namespace detail {

inline BigInt parse_bigint(std::string_view s) {
    if (s.empty()) raise(ErrorCode::ParseError, "empty integer literal");
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) raise(ErrorCode::ParseError, "sign without digits");
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9')
            raise(ErrorCode::ParseError, "bad digit in integer literal: " + std::string(s));
    return BigInt(std::string(s));
}

}  // namespace detail

/// Parses "p", "p/q", or a finite decimal "d.ddd" (decimals are exact
/// rationals, not floats).
inline Rational parse_rational(std::string_view s) {
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt n = detail::parse_bigint(s.substr(0, slash));
        BigInt d = detail::parse_bigint(s.substr(slash + 1));
        if (d == 0) raise(ErrorCode::ParseError, "zero denominator: " + std::string(s));
        return Rational(n, d);
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view head = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        if (frac.empty()) return Rational(detail::parse_bigint(head));
        bool neg = !head.empty() && head[0] == '-';
        BigInt whole = head.empty() || head == "-" || head == "+"
                           ? BigInt(0)
                           : detail::parse_bigint(head);
        BigInt fn = detail::parse_bigint(frac);
        if (fn < 0) raise(ErrorCode::ParseError, "bad fraction digits: " + std::string(s));
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        Rational mag = Rational(boost::multiprecision::abs(whole)) + Rational(fn, scale);
        return neg ? -mag : mag;
    }
    return Rational(detail::parse_bigint(s));
}

}  // namespace metrika
