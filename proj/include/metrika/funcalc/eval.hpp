#pragma once

#include <cmath>

#include "metrika/error.hpp"
#include "metrika/funcalc/function_spec.hpp"
#include "metrika/scalar.hpp"

namespace metrika::funcalc {

namespace detail {

inline Scalar approx_of(long double v, double tol, Rationality r = Rationality::Unknown) {
    return Scalar::approx(static_cast<double>(v),
                          tol + metrika::detail::rounding_slack(v), r);
}

inline Scalar eval_affine(const Rational& a, const Rational& b, const Scalar& x) {
    return scalar_add(scalar_scale(a, x), Scalar::exact(b));
}

/// a*sqrt(x - s) + b, exact when x - s is a perfect rational square.
inline Scalar eval_scaled_sqrt(const Rational& a, const Rational& s, const Rational& b,
                               const Scalar& x) {
    Scalar t = scalar_sub(x, Scalar::exact(s));
    if (t.is_exact_rational()) {
        const Rational& q = t.rational();
        if (q < 0) raise(ErrorCode::DomainError, "sqrt of a negative argument");
        if (auto root = exact_sqrt(q)) return Scalar::exact(a * *root + b);
    }
    long double tv = t.ld_value();
    if (tv < 0) {
        if (tv < -(t.tolerance() + 1e-12))
            raise(ErrorCode::DomainError, "sqrt of a negative argument");
        tv = 0;
    }
    long double root = std::sqrt(tv);
    double dtol = root > 1e-150 ? t.tolerance() / (2.0 * static_cast<double>(root))
                                : std::sqrt(t.tolerance());
    long double v = to_long_double(a) * root + to_long_double(b);
    return Scalar::approx(static_cast<double>(v),
                          std::abs(to_double(a)) * dtol + metrika::detail::rounding_slack(v));
}

inline Scalar eval_piece(const PieceFormula& f, const Scalar& x) {
    switch (f.type) {
        case PieceFormula::Type::Affine: return eval_affine(f.a, f.b, x);
        case PieceFormula::Type::ScaledSqrt: return eval_scaled_sqrt(f.a, f.shift, f.b, x);
        case PieceFormula::Type::Constant: return Scalar::exact(f.b);
    }
    return Scalar::exact(0);
}

inline Scalar eval_power(const Rational& p, const Scalar& x) {
    if (p == 1) return x;
    if (x.is_exact_rational() && is_integer(p) && p > 0 && numerator(p) < 64) {
        Rational out(1);
        const Rational& base = x.rational();
        for (BigInt i = 0; i < numerator(p); ++i) out *= base;
        return Scalar::exact(out);
    }
    long double v = std::pow(x.ld_value(), to_long_double(p));
    double dp = to_double(p);
    double slope = x.ld_value() > 0
                       ? dp * static_cast<double>(std::pow(x.ld_value(), to_long_double(p) - 1))
                       : 0.0;
    return approx_of(v, std::abs(slope) * x.tolerance());
}

inline BigInt floor_of_ld(long double v) {
    if (std::fabs(v) > 9e15) raise(ErrorCode::NumericalOverflow, "floor beyond integer range");
    return BigInt(static_cast<long long>(std::floor(v)));
}

inline Scalar eval_ceiling(const Scalar& x) {
    if (x.is_exact_rational()) return Scalar::exact(Rational(rational_ceil(x.rational())));
    // Irrational and approximate inputs: ceiling of the central value. A
    // multiple of sqrt2 or pi is never an integer, so the branch is stable.
    long double v = x.ld_value();
    BigInt fl = floor_of_ld(v);
    if (static_cast<long double>(fl.convert_to<long long>()) == v && x.kind() == Scalar::Kind::Approx)
        return Scalar::exact(Rational(fl));
    return Scalar::exact(Rational(fl + 1));
}

inline Scalar eval_floor_sqrt(const Scalar& x) {
    if (x.is_exact_rational()) {
        BigInt n = rational_floor(x.rational());
        Rational frac = x.rational() - Rational(n);
        if (auto root = exact_sqrt(frac)) return Scalar::exact(Rational(n) + *root);
        long double v = static_cast<long double>(n.convert_to<long long>()) +
                        std::sqrt(to_long_double(frac));
        return approx_of(v, 0.0, Rationality::Unknown);
    }
    long double v = x.ld_value();
    BigInt n = floor_of_ld(v);
    long double frac = v - static_cast<long double>(n.convert_to<long long>());
    if (frac < 0) frac = 0;
    long double root = std::sqrt(frac);
    double dtol = root > 1e-150 ? x.tolerance() / (2.0 * static_cast<double>(root))
                                : std::sqrt(x.tolerance());
    return approx_of(static_cast<long double>(n.convert_to<long long>()) + root, dtol);
}

inline Scalar eval_x_plus_abs_sin(const Scalar& x) {
    if (x.kind() == Scalar::Kind::Multiple && x.base() == IrrationalBase::Pi &&
        is_integer(x.coefficient()))
        return x;  // sin vanishes exactly at integer multiples of pi
    long double v = x.ld_value();
    long double out = v + std::fabs(std::sin(v));
    // Nonzero rational x: sin(x) is irrational, so x + |sin x| is too.
    Rationality r = x.rationality() == Rationality::Rational && !x.is_zero()
                        ? Rationality::Irrational
                        : Rationality::Unknown;
    return approx_of(out, 2.0 * x.tolerance(), r);
}

inline Scalar eval_tight_fixset(const FunctionSpec& spec, const Scalar& x) {
    const Rational& u = spec.param("u");
    const auto& members = spec.point_set();
    if (x.is_exact_rational()) {
        const Rational& q = x.rational();
        if (std::binary_search(members.begin(), members.end(), q)) return x;
        if (q == u && !std::binary_search(members.begin(), members.end(), u))
            return Scalar::exact(2 * u);
        return Scalar::exact(u);
    }
    // Irrational values are never members of the rational set A; approximate
    // values resolve by exact membership only.
    return Scalar::exact(u);
}

}  // namespace detail

/// Evaluates f at x >= 0. Output is exact whenever the active branch and the
/// input admit exact arithmetic; otherwise approximate with a propagated
/// absolute tolerance. Rationality-sensitive entries (kirk_f, example5_g,
/// example5_h) reject inputs whose rationality tag is unknown.
inline Scalar eval(const FunctionSpec& spec, const Scalar& x_in) {
    Scalar x = x_in;
    if (x.kind() == Scalar::Kind::Approx && x.value() < 0 && x.value() >= -x.tolerance())
        x = Scalar::approx(0.0, x.tolerance(), x.rationality());
    if (x.sign() < 0)
        raise(ErrorCode::DomainError, "argument below 0: " + x.to_string());
    if (spec.rationality_sensitive() && x.rationality() == Rationality::Unknown)
        raise(ErrorCode::RationalityRequired,
              spec.name() + " needs a rationality tag on " + x.to_string());

    if (spec.kind() == FunctionSpec::Kind::Piecewise) {
        for (const auto& p : spec.pieces()) {
            if (!p.hi || compare(x, Scalar::exact(*p.hi)) < 0)
                return detail::eval_piece(p.formula, x);
        }
        raise(ErrorCode::DomainError, "no piece covers " + x.to_string());
    }

    auto le = [&](long v) { return compare(x, Scalar::exact(Rational(v))) <= 0; };
    switch (spec.catalog_id()) {
        case CatalogId::Identity: return x;
        case CatalogId::Half: return scalar_scale(Rational(1, 2), x);
        case CatalogId::Power: return detail::eval_power(spec.param("p"), x);
        case CatalogId::SqrtAx:
            return detail::eval_scaled_sqrt(Rational(1), Rational(0), Rational(0),
                                            scalar_scale(spec.param("a"), x));
        case CatalogId::Clamp: {
            const Rational& a = spec.param("a");
            if (compare(x, Scalar::exact(a)) <= 0) return x;
            return scalar_scale(Rational(1, 2), scalar_add(x, Scalar::exact(a)));
        }
        case CatalogId::KirkF:
            if (x.is_zero()) return Scalar::exact(0);
            return Scalar::exact(x.rationality() == Rationality::Rational ? 1 : 2);
        case CatalogId::KirkG: return le(1) ? x : Scalar::exact(1);
        case CatalogId::KirkH: {
            if (le(1)) return x;
            if (le(10)) return Scalar::exact(1);
            if (compare(x, Scalar::exact(Rational(11))) < 0)
                return scalar_add(x, Scalar::exact(Rational(-9)));
            return Scalar::exact(2);
        }
        case CatalogId::FAb: {
            const Rational &a = spec.param("a"), &b = spec.param("b");
            if (compare(x, Scalar::exact(b)) <= 0) return scalar_scale(a, x);
            return Scalar::exact(a * b);
        }
        case CatalogId::Ceiling: return detail::eval_ceiling(x);
        case CatalogId::Example5G:
            if (x.is_zero()) return Scalar::exact(0);
            return x.rationality() == Rationality::Rational ? Scalar::exact(1)
                                                            : Scalar::sqrt2();
        case CatalogId::Example5H: {
            if (x.is_zero()) return Scalar::exact(0);
            if (compare(x, Scalar::exact(Rational(1))) < 0) return Scalar::exact(1);
            if (le(2))
                return x.rationality() == Rationality::Rational ? x : Scalar::exact(2);
            return Scalar::exact(2);
        }
        case CatalogId::FloorSqrt: return detail::eval_floor_sqrt(x);
        case CatalogId::XPlusAbsSin:
            if (x.is_zero() && x.is_exact()) return Scalar::exact(0);
            return detail::eval_x_plus_abs_sin(x);
        case CatalogId::TightFixset: return detail::eval_tight_fixset(spec, x);
    }
    raise(ErrorCode::ParseError, "unhandled catalog entry");
}

inline Scalar eval(const FunctionSpec& spec, const Rational& x) {
    return eval(spec, Scalar::exact(x));
}

/// Fast double-precision evaluation for dense pair scans. The rationality
/// hint stands in for the tag of the exact value that `x` approximates;
/// callers scanning rational grids pass Rational. Marginal comparisons must
/// be re-checked through eval().
inline double eval_f64(const FunctionSpec& spec, double x, Rationality hint) {
    if (spec.rationality_sensitive() && hint == Rationality::Unknown)
        raise(ErrorCode::RationalityRequired, spec.name() + " needs a rationality hint");
    if (x < 0) raise(ErrorCode::DomainError, "argument below 0");

    if (spec.kind() == FunctionSpec::Kind::Piecewise) {
        for (const auto& p : spec.pieces()) {
            if (!p.hi || x < to_double(*p.hi)) {
                const auto& f = p.formula;
                switch (f.type) {
                    case PieceFormula::Type::Affine:
                        return to_double(f.a) * x + to_double(f.b);
                    case PieceFormula::Type::ScaledSqrt:
                        return to_double(f.a) * std::sqrt(std::max(0.0, x - to_double(f.shift))) +
                               to_double(f.b);
                    case PieceFormula::Type::Constant: return to_double(f.b);
                }
            }
        }
        return 0;
    }

    switch (spec.catalog_id()) {
        case CatalogId::Identity: return x;
        case CatalogId::Half: return x / 2;
        case CatalogId::Power: return std::pow(x, to_double(spec.param("p")));
        case CatalogId::SqrtAx: return std::sqrt(to_double(spec.param("a")) * x);
        case CatalogId::Clamp: {
            double a = to_double(spec.param("a"));
            return x <= a ? x : (x + a) / 2;
        }
        case CatalogId::KirkF:
            if (x == 0) return 0;
            return hint == Rationality::Rational ? 1 : 2;
        case CatalogId::KirkG: return x <= 1 ? x : 1;
        case CatalogId::KirkH:
            if (x <= 1) return x;
            if (x <= 10) return 1;
            if (x < 11) return x - 9;
            return 2;
        case CatalogId::FAb: {
            double a = to_double(spec.param("a")), b = to_double(spec.param("b"));
            return x <= b ? a * x : a * b;
        }
        case CatalogId::Ceiling: return std::ceil(x);
        case CatalogId::Example5G:
            if (x == 0) return 0;
            return hint == Rationality::Rational ? 1.0
                                                 : static_cast<double>(base_value(IrrationalBase::Sqrt2));
        case CatalogId::Example5H:
            if (x == 0) return 0;
            if (x < 1) return 1;
            if (x <= 2) return hint == Rationality::Rational ? x : 2;
            return 2;
        case CatalogId::FloorSqrt: {
            double fl = std::floor(x);
            return fl + std::sqrt(x - fl);
        }
        case CatalogId::XPlusAbsSin: return x + std::abs(std::sin(x));
        case CatalogId::TightFixset: {
            // Faithful on grid points whose doubles are collision-free;
            // marginal pairs are re-checked exactly by the scan machinery.
            if (x == 0) return 0;
            double u = to_double(spec.param("u"));
            bool u_member = false;
            for (const auto& a : spec.point_set()) {
                double av = to_double(a);
                if (av == x) return av;
                if (av == u) u_member = true;
            }
            if (x == u && !u_member) return 2 * u;
            return u;
        }
    }
    return 0;
}

}  // namespace metrika::funcalc
