#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "metrika/error.hpp"
#include "metrika/rational.hpp"

namespace metrika {

inline constexpr double kDefaultAbsTol = 1e-9;

enum class IrrationalBase { Sqrt2, Pi };
enum class Rationality { Rational, Irrational, Unknown };

inline long double base_value(IrrationalBase b) {
    return b == IrrationalBase::Sqrt2 ? 1.41421356237309504880168872420969808L
                                      : 3.14159265358979323846264338327950288L;
}

inline const char* base_name(IrrationalBase b) {
    return b == IrrationalBase::Sqrt2 ? "sqrt2" : "pi";
}

/// A point of [0,inf) (or a signed residual of such points): an exact
/// rational, an exact rational multiple of sqrt(2) or pi, or an approximate
/// double with an absolute tolerance. Every value carries a rationality tag;
/// for the exact kinds the tag is implied, for approximate values it may be
/// supplied by the caller when membership in Q is known a priori.
class Scalar {
public:
    enum class Kind { Exact, Multiple, Approx };

    Scalar() : Scalar(exact(0)) {}

    static Scalar exact(Rational q) {
        Scalar s;
        s.kind_ = Kind::Exact;
        s.q_ = std::move(q);
        s.rationality_ = Rationality::Rational;
        return s;
    }
    static Scalar exact(long v) { return exact(Rational(v)); }

    static Scalar multiple(Rational coeff, IrrationalBase base) {
        if (coeff == 0) return exact(0);
        Scalar s;
        s.kind_ = Kind::Multiple;
        s.q_ = std::move(coeff);
        s.base_ = base;
        s.rationality_ = Rationality::Irrational;
        return s;
    }
    static Scalar sqrt2(Rational coeff = Rational(1)) {
        return multiple(std::move(coeff), IrrationalBase::Sqrt2);
    }
    static Scalar pi(Rational coeff = Rational(1)) {
        return multiple(std::move(coeff), IrrationalBase::Pi);
    }

    static Scalar approx(double v, double abs_tol = kDefaultAbsTol,
                         Rationality r = Rationality::Unknown) {
        if (abs_tol < 0) raise(ErrorCode::DomainError, "negative tolerance");
        Scalar s;
        s.kind_ = Kind::Approx;
        s.value_ = v;
        s.tol_ = abs_tol;
        s.rationality_ = r;
        return s;
    }

    Kind kind() const { return kind_; }
    Rationality rationality() const { return rationality_; }
    bool is_exact() const { return kind_ != Kind::Approx; }
    bool is_exact_rational() const { return kind_ == Kind::Exact; }

    const Rational& rational() const {
        if (kind_ != Kind::Exact) raise(ErrorCode::DomainError, "not an exact rational");
        return q_;
    }
    const Rational& coefficient() const { return q_; }
    IrrationalBase base() const { return base_; }

    double value() const { return static_cast<double>(ld_value()); }
    long double ld_value() const {
        switch (kind_) {
            case Kind::Exact: return to_long_double(q_);
            case Kind::Multiple: return to_long_double(q_) * base_value(base_);
            case Kind::Approx: return value_;
        }
        return 0;
    }
    double tolerance() const { return kind_ == Kind::Approx ? tol_ : 0.0; }

    bool is_zero() const {
        if (kind_ == Kind::Exact) return q_ == 0;
        if (kind_ == Kind::Multiple) return false;  // zero coeff normalized away
        return std::abs(value_) <= std::max(tol_, 1e-12);
    }

    bool negative() const { return sign() < 0; }

    int sign() const {
        switch (kind_) {
            case Kind::Exact: return q_ == 0 ? 0 : (q_ < 0 ? -1 : 1);
            case Kind::Multiple: return q_ < 0 ? -1 : 1;
            case Kind::Approx: return is_zero() ? 0 : (value_ < 0 ? -1 : 1);
        }
        return 0;
    }

    std::string to_string() const {
        switch (kind_) {
            case Kind::Exact: return format_rational(q_);
            case Kind::Multiple:
                if (q_ == 1) return base_name(base_);
                return numerator(q_).str() + "*" + base_name(base_) + "/" +
                       denominator(q_).str();
            case Kind::Approx: {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", value_);
                return buf;
            }
        }
        return "";
    }

private:
    Kind kind_ = Kind::Exact;
    Rational q_ = Rational(0);                     // value or coefficient
    IrrationalBase base_ = IrrationalBase::Sqrt2;  // valid for Multiple
    double value_ = 0.0;                           // valid for Approx
    double tol_ = 0.0;                             // valid for Approx
    Rationality rationality_ = Rationality::Rational;
};

namespace detail {

// p/q vs c*sqrt(2): decide by sign, then compare squares exactly.
inline int compare_rational_sqrt2(const Rational& r, const Rational& c) {
    int sr = r == 0 ? 0 : (r < 0 ? -1 : 1);
    int sc = c == 0 ? 0 : (c < 0 ? -1 : 1);
    if (sr != sc) return sr < sc ? -1 : 1;
    if (sr == 0) return 0;
    Rational lhs = r * r, rhs = 2 * c * c;
    int mag = lhs == rhs ? 0 : (lhs < rhs ? -1 : 1);
    return sr > 0 ? mag : -mag;
}

}  // namespace detail

/// Three-way compare of central values: exact whenever the pair admits it
/// (rational/rational, rational/sqrt2-multiple, same-base multiples),
/// extended precision otherwise. Tolerances are not consulted here; slack
/// policies live at the call sites that need them.
inline int compare(const Scalar& a, const Scalar& b) {
    using K = Scalar::Kind;
    if (a.kind() == K::Exact && b.kind() == K::Exact) {
        const Rational &x = a.rational(), &y = b.rational();
        return x == y ? 0 : (x < y ? -1 : 1);
    }
    if (a.kind() == K::Multiple && b.kind() == K::Multiple && a.base() == b.base()) {
        const Rational &x = a.coefficient(), &y = b.coefficient();
        return x == y ? 0 : (x < y ? -1 : 1);
    }
    if (a.kind() == K::Exact && b.kind() == K::Multiple &&
        b.base() == IrrationalBase::Sqrt2)
        return detail::compare_rational_sqrt2(a.rational(), b.coefficient());
    if (a.kind() == K::Multiple && b.kind() == K::Exact &&
        a.base() == IrrationalBase::Sqrt2)
        return -detail::compare_rational_sqrt2(b.rational(), a.coefficient());
    long double x = a.ld_value(), y = b.ld_value();
    if (x == y) {
        // Distinct exact kinds can never be equal (pi is transcendental);
        // break the tie away from a false equality.
        if (a.is_exact() && b.is_exact() &&
            !(a.kind() == b.kind() &&
              (a.kind() != K::Multiple || a.base() == b.base())))
            return a.kind() == K::Multiple ? 1 : -1;
        return 0;
    }
    return x < y ? -1 : 1;
}

inline bool scalar_less(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }
inline bool scalar_eq(const Scalar& a, const Scalar& b) { return compare(a, b) == 0; }

namespace detail {

inline Rationality sum_rationality(const Scalar& a, const Scalar& b) {
    // Closed over {rationals, c*sqrt2, c*pi}: rational+irrational and
    // sqrt2+pi mixes are irrational (algebraic/transcendental split).
    if (a.is_zero()) return b.rationality();
    if (b.is_zero()) return a.rationality();
    if (a.rationality() == Rationality::Unknown || b.rationality() == Rationality::Unknown)
        return Rationality::Unknown;
    if (a.rationality() == Rationality::Rational && b.rationality() == Rationality::Rational)
        return Rationality::Rational;
    if (a.rationality() == Rationality::Rational || b.rationality() == Rationality::Rational)
        return Rationality::Irrational;
    if (a.is_exact() && b.is_exact()) return Rationality::Irrational;
    return Rationality::Unknown;  // irrational + irrational of unknown provenance
}

inline double rounding_slack(long double v) {
    return static_cast<double>(std::fabs(v)) * 4e-16 + 1e-300;
}

}  // namespace detail

inline Scalar scalar_add(const Scalar& a, const Scalar& b) {
    using K = Scalar::Kind;
    if (a.kind() == K::Exact && b.kind() == K::Exact)
        return Scalar::exact(a.rational() + b.rational());
    if (a.kind() == K::Multiple && b.kind() == K::Multiple && a.base() == b.base())
        return Scalar::multiple(a.coefficient() + b.coefficient(), a.base());
    if (a.kind() == K::Exact && a.rational() == 0) return b;
    if (b.kind() == K::Exact && b.rational() == 0) return a;
    long double v = a.ld_value() + b.ld_value();
    double tol = a.tolerance() + b.tolerance() + detail::rounding_slack(v);
    return Scalar::approx(static_cast<double>(v), tol, detail::sum_rationality(a, b));
}

inline Scalar scalar_neg(const Scalar& a) {
    switch (a.kind()) {
        case Scalar::Kind::Exact: return Scalar::exact(-a.rational());
        case Scalar::Kind::Multiple: return Scalar::multiple(-a.coefficient(), a.base());
        case Scalar::Kind::Approx:
            return Scalar::approx(-a.value(), a.tolerance(), a.rationality());
    }
    return a;
}

inline Scalar scalar_sub(const Scalar& a, const Scalar& b) {
    return scalar_add(a, scalar_neg(b));
}

inline Scalar scalar_scale(const Rational& c, const Scalar& a) {
    switch (a.kind()) {
        case Scalar::Kind::Exact: return Scalar::exact(c * a.rational());
        case Scalar::Kind::Multiple: return Scalar::multiple(c * a.coefficient(), a.base());
        case Scalar::Kind::Approx: {
            if (c == 0) return Scalar::exact(0);
            double f = std::abs(to_double(c));
            return Scalar::approx(to_double(c) * a.value(), f * a.tolerance(),
                                  a.rationality());
        }
    }
    return a;
}

inline Scalar scalar_mul(const Scalar& a, const Scalar& b) {
    using K = Scalar::Kind;
    if (a.kind() == K::Exact && b.kind() == K::Exact)
        return Scalar::exact(a.rational() * b.rational());
    if (a.kind() == K::Exact) return scalar_scale(a.rational(), b);
    if (b.kind() == K::Exact) return scalar_scale(b.rational(), a);
    if (a.kind() == K::Multiple && b.kind() == K::Multiple &&
        a.base() == IrrationalBase::Sqrt2 && b.base() == IrrationalBase::Sqrt2)
        return Scalar::exact(2 * a.coefficient() * b.coefficient());
    long double v = a.ld_value() * b.ld_value();
    double tol = std::abs((double)a.ld_value()) * b.tolerance() +
                 std::abs((double)b.ld_value()) * a.tolerance() +
                 detail::rounding_slack(v);
    return Scalar::approx(static_cast<double>(v), tol);
}

/// Multiplicative inverse; closed for rationals and sqrt2 multiples
/// (1/(c*sqrt2) = sqrt2/(2c)).
inline Scalar scalar_inverse(const Scalar& a) {
    using K = Scalar::Kind;
    if (a.is_zero()) raise(ErrorCode::DomainError, "division by zero");
    if (a.kind() == K::Exact) return Scalar::exact(Rational(1) / a.rational());
    if (a.kind() == K::Multiple && a.base() == IrrationalBase::Sqrt2)
        return Scalar::multiple(Rational(1) / (2 * a.coefficient()), IrrationalBase::Sqrt2);
    long double v = 1.0L / a.ld_value();
    double tol = a.tolerance() * static_cast<double>(v * v) + detail::rounding_slack(v);
    return Scalar::approx(static_cast<double>(v), std::abs(tol),
                          a.kind() == K::Multiple ? Rationality::Irrational
                                                  : Rationality::Unknown);
}

inline Scalar scalar_div(const Scalar& a, const Scalar& b) {
    return scalar_mul(a, scalar_inverse(b));
}

inline Scalar scalar_abs(const Scalar& a) { return a.negative() ? scalar_neg(a) : a; }

inline const Scalar& scalar_max(const Scalar& a, const Scalar& b) {
    return compare(a, b) < 0 ? b : a;
}
inline const Scalar& scalar_min(const Scalar& a, const Scalar& b) {
    return compare(a, b) < 0 ? a : b;
}

/// a <= b with the project-wide slack policy: exact comparison when both
/// sides are exact, absolute slack otherwise.
inline bool scalar_le_slack(const Scalar& a, const Scalar& b,
                            double slack = kDefaultAbsTol) {
    if (a.is_exact() && b.is_exact()) return compare(a, b) <= 0;
    return a.ld_value() <= b.ld_value() + slack + a.tolerance() + b.tolerance();
}

/// Parses "p", "p/q", "d.ddd", "pi", "sqrt2", "p*pi/q", "p*sqrt2/q".
inline Scalar parse_scalar(std::string_view s) {
    if (s.empty()) raise(ErrorCode::ParseError, "empty scalar literal");
    if (s == "pi") return Scalar::pi();
    if (s == "sqrt2") return Scalar::sqrt2();
    if (s == "-pi") return Scalar::pi(Rational(-1));
    if (s == "-sqrt2") return Scalar::sqrt2(Rational(-1));
    if (auto star = s.find('*'); star != std::string_view::npos) {
        BigInt num = detail::parse_bigint(s.substr(0, star));
        std::string_view rest = s.substr(star + 1);
        auto slash = rest.find('/');
        std::string_view name = slash == std::string_view::npos ? rest : rest.substr(0, slash);
        BigInt den = 1;
        if (slash != std::string_view::npos) den = detail::parse_bigint(rest.substr(slash + 1));
        if (den == 0) raise(ErrorCode::ParseError, "zero denominator: " + std::string(s));
        if (name == "pi") return Scalar::pi(Rational(num, den));
        if (name == "sqrt2") return Scalar::sqrt2(Rational(num, den));
        raise(ErrorCode::ParseError, "unknown constant: " + std::string(name));
    }
    return Scalar::exact(parse_rational(s));
}

}  // namespace metrika
