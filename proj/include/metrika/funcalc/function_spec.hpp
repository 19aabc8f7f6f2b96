#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "metrika/error.hpp"
#include "metrika/rational.hpp"
#include "metrika/scalar.hpp"

namespace metrika::funcalc {

// Built-in function catalog. Every entry maps [0,inf) to [0,inf).
enum class CatalogId {
    Identity,     // x
    Half,         // x/2
    Power,        // x^p
    SqrtAx,       // sqrt(a*x)
    Clamp,        // x on [0,a], (x+a)/2 beyond
    KirkF,        // 0 at 0, 1 on positive rationals, 2 on irrationals
    KirkG,        // x on [0,1], 1 beyond
    KirkH,        // x on [0,1], 1 on [1,10], x-9 on (10,11), 2 from 11
    FAb,          // a*x on [0,b], a*b beyond
    Ceiling,      // smallest integer >= x
    Example5G,    // 0 at 0, 1 on rationals, sqrt2 on irrationals
    Example5H,    // 0 at 0, 1 on (0,1), x on Q-cap-[1,2], 2 elsewhere
    FloorSqrt,    // floor(x) + sqrt(x - floor(x))
    XPlusAbsSin,  // x + |sin x|
    TightFixset,  // 0 at 0, x on A, u elsewhere (2u at u when u not in A)
};

struct PieceFormula {
    enum class Type { Affine, ScaledSqrt, Constant };
    Type type = Type::Constant;
    Rational a = Rational(0);      // slope / sqrt scale
    Rational shift = Rational(0);  // sqrt argument shift s
    Rational b = Rational(0);      // offset / constant value

    static PieceFormula affine(Rational slope, Rational offset) {
        PieceFormula f;
        f.type = Type::Affine;
        f.a = std::move(slope);
        f.b = std::move(offset);
        return f;
    }
    static PieceFormula scaled_sqrt(Rational scale, Rational s, Rational offset) {
        PieceFormula f;
        f.type = Type::ScaledSqrt;
        f.a = std::move(scale);
        f.shift = std::move(s);
        f.b = std::move(offset);
        return f;
    }
    static PieceFormula constant(Rational value) {
        PieceFormula f;
        f.type = Type::Constant;
        f.b = std::move(value);
        return f;
    }
};

/// Half-open piece [lo, hi); hi absent on the final piece, which extends to
/// infinity.
struct Piece {
    Rational lo;
    std::optional<Rational> hi;
    PieceFormula formula;
};

namespace detail {

struct CatalogInfo {
    CatalogId id;
    const char* name;
    std::vector<const char*> params;
    bool rationality_sensitive;
    std::vector<const char*> declared;
};

inline const std::vector<CatalogInfo>& catalog_table() {
    static const std::vector<CatalogInfo> table = {
        {CatalogId::Identity, "identity", {}, false,
         {"amenable", "strictly-increasing", "concave", "subadditive", "metric-transform"}},
        {CatalogId::Half, "half", {}, false,
         {"amenable", "strictly-increasing", "concave", "subadditive", "metric-transform"}},
        {CatalogId::Power, "power", {"p"}, false, {"amenable", "strictly-increasing"}},
        {CatalogId::SqrtAx, "sqrt_ax", {"a"}, false,
         {"amenable", "strictly-increasing", "concave", "subadditive", "metric-transform"}},
        {CatalogId::Clamp, "clamp", {"a"}, false,
         {"amenable", "strictly-increasing", "concave", "subadditive", "metric-transform"}},
        {CatalogId::KirkF, "kirk_f", {}, true, {"amenable", "tightly-bounded"}},
        {CatalogId::KirkG, "kirk_g", {}, false,
         {"amenable", "increasing", "concave", "subadditive"}},
        {CatalogId::KirkH, "kirk_h", {}, false, {"amenable", "increasing", "subadditive"}},
        {CatalogId::FAb, "f_ab", {"a", "b"}, false,
         {"amenable", "increasing", "concave", "subadditive"}},
        {CatalogId::Ceiling, "ceiling", {}, false, {"amenable", "increasing", "subadditive"}},
        {CatalogId::Example5G, "example5_g", {}, true, {"amenable", "tightly-bounded"}},
        {CatalogId::Example5H, "example5_h", {}, true, {"amenable", "tightly-bounded"}},
        {CatalogId::FloorSqrt, "floor_sqrt", {}, false,
         {"amenable", "strictly-increasing", "subadditive", "periodic-residual"}},
        {CatalogId::XPlusAbsSin, "x_plus_abs_sin", {}, false,
         {"amenable", "increasing", "subadditive", "periodic-residual"}},
        {CatalogId::TightFixset, "tight_fixset", {"u"}, false,
         {"amenable", "tightly-bounded"}},
    };
    return table;
}

inline const CatalogInfo& catalog_info(CatalogId id) {
    for (const auto& e : catalog_table())
        if (e.id == id) return e;
    raise(ErrorCode::ParseError, "unknown catalog id");
}

inline const CatalogInfo* catalog_info_by_name(const std::string& name) {
    for (const auto& e : catalog_table())
        if (name == e.name) return &e;
    return nullptr;
}

}  // namespace detail

class FunctionSpec {
public:
    enum class Kind { Catalog, Piecewise };

    static FunctionSpec catalog(const std::string& name,
                                const std::map<std::string, Rational>& params = {}) {
        const auto* info = detail::catalog_info_by_name(name);
        if (!info) raise(ErrorCode::ParseError, "unknown catalog function: " + name);
        FunctionSpec f;
        f.kind_ = Kind::Catalog;
        f.id_ = info->id;
        f.params_ = params;
        f.validate_catalog();
        return f;
    }

    static FunctionSpec piecewise(std::vector<Piece> pieces,
                                  std::vector<std::string> declared = {}) {
        FunctionSpec f;
        f.kind_ = Kind::Piecewise;
        f.pieces_ = std::move(pieces);
        f.declared_ = std::move(declared);
        f.validate_pieces();
        return f;
    }

    // Common shorthands.
    static FunctionSpec identity() { return catalog("identity"); }
    static FunctionSpec half() { return catalog("half"); }
    static FunctionSpec power(Rational p) { return catalog("power", {{"p", std::move(p)}}); }
    static FunctionSpec sqrt_ax(Rational a) { return catalog("sqrt_ax", {{"a", std::move(a)}}); }
    static FunctionSpec clamp(Rational a) { return catalog("clamp", {{"a", std::move(a)}}); }
    static FunctionSpec f_ab(Rational a, Rational b) {
        return catalog("f_ab", {{"a", std::move(a)}, {"b", std::move(b)}});
    }

    Kind kind() const { return kind_; }
    CatalogId catalog_id() const { return id_; }
    bool is_catalog(CatalogId id) const { return kind_ == Kind::Catalog && id_ == id; }

    std::string name() const {
        return kind_ == Kind::Catalog ? detail::catalog_info(id_).name : "piecewise";
    }

    const std::map<std::string, Rational>& params() const { return params_; }
    const Rational& param(const std::string& key) const {
        auto it = params_.find(key);
        if (it == params_.end())
            raise(ErrorCode::ParseError, "missing parameter '" + key + "' for " + name());
        return it->second;
    }

    /// Sorted member set A of a tight_fixset entry.
    const std::vector<Rational>& point_set() const { return set_a_; }

    const std::vector<Piece>& pieces() const { return pieces_; }

    bool rationality_sensitive() const {
        return kind_ == Kind::Catalog && detail::catalog_info(id_).rationality_sensitive;
    }

    const std::vector<std::string>& declared_properties() const { return declared_; }
    bool declares(std::string_view prop) const {
        return std::find(declared_.begin(), declared_.end(), prop) != declared_.end();
    }

    /// Discontinuities and formula joints inside [lo, hi]; exact rationals
    /// only (pi-multiple joints of x+|sin x| have no rational representation).
    std::vector<Rational> breakpoints(const Rational& lo, const Rational& hi) const {
        std::vector<Rational> out;
        auto add = [&](const Rational& q) {
            if (q >= lo && q <= hi) out.push_back(q);
        };
        if (kind_ == Kind::Piecewise) {
            for (const auto& p : pieces_) add(p.lo);
        } else {
            switch (id_) {
                case CatalogId::Clamp: add(param("a")); break;
                case CatalogId::KirkG: add(Rational(1)); break;
                case CatalogId::KirkH:
                    add(Rational(1));
                    add(Rational(10));
                    add(Rational(11));
                    break;
                case CatalogId::FAb: add(param("b")); break;
                case CatalogId::Ceiling:
                case CatalogId::FloorSqrt: {
                    for (BigInt n = rational_ceil(lo); Rational(n) <= hi; ++n)
                        if (n >= 0) out.push_back(Rational(n));
                    break;
                }
                case CatalogId::Example5H:
                    add(Rational(1));
                    add(Rational(2));
                    break;
                case CatalogId::TightFixset:
                    add(param("u"));
                    for (const auto& a : set_a_) add(a);
                    break;
                default: break;
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    void validate_catalog() {
        const auto& info = detail::catalog_info(id_);
        for (const char* key : info.params) param(key);  // presence
        declared_.assign(info.declared.begin(), info.declared.end());
        switch (id_) {
            case CatalogId::Power:
                if (param("p") <= 0) raise(ErrorCode::DomainError, "power: p must be positive");
                break;
            case CatalogId::SqrtAx:
                if (param("a") <= 0) raise(ErrorCode::DomainError, "sqrt_ax: a must be positive");
                break;
            case CatalogId::Clamp:
                if (param("a") <= 0) raise(ErrorCode::DomainError, "clamp: a must be positive");
                break;
            case CatalogId::FAb:
                if (param("a") < 1) raise(ErrorCode::DomainError, "f_ab: requires a >= 1");
                if (param("b") <= 0) raise(ErrorCode::DomainError, "f_ab: requires b > 0");
                break;
            case CatalogId::TightFixset: {
                const Rational& u = param("u");
                if (u <= 0) raise(ErrorCode::InvalidBounds, "tight_fixset: u must be positive");
                set_a_.clear();
                for (const auto& [key, value] : params_) {
                    if (key.size() < 2 || key[0] != 'a' ||
                        key.find_first_not_of("0123456789", 1) != std::string::npos)
                        continue;  // members arrive as a0, a1, ...
                    set_a_.push_back(value);
                }
                for (const auto& a : set_a_)
                    if (a < u || a > 2 * u)
                        raise(ErrorCode::InvalidBounds,
                              "tight_fixset: members must lie in [u, 2u]");
                std::sort(set_a_.begin(), set_a_.end());
                set_a_.erase(std::unique(set_a_.begin(), set_a_.end()), set_a_.end());
                break;
            }
            default: break;
        }
    }

    void validate_pieces() {
        if (pieces_.empty())
            raise(ErrorCode::ParseError, "piecewise spec needs at least one piece");
        if (pieces_.front().lo != 0)
            raise(ErrorCode::ParseError, "pieces must start at 0");
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const Piece& p = pieces_[i];
            bool last = i + 1 == pieces_.size();
            if (last != !p.hi.has_value())
                raise(ErrorCode::ParseError,
                      "exactly the final piece must be unbounded above");
            if (p.hi && *p.hi <= p.lo)
                raise(ErrorCode::ParseError, "piece interval is empty or reversed");
            if (!last && pieces_[i + 1].lo != *p.hi)
                raise(ErrorCode::ParseError, "pieces must tile [0,inf) without gaps");
            if (p.formula.type == PieceFormula::Type::ScaledSqrt && p.formula.shift > p.lo)
                raise(ErrorCode::DomainError,
                      "sqrt shift exceeds piece start; argument would go negative");
        }
    }

    Kind kind_ = Kind::Catalog;
    CatalogId id_ = CatalogId::Identity;
    std::map<std::string, Rational> params_;
    std::vector<Rational> set_a_;
    std::vector<Piece> pieces_;
    std::vector<std::string> declared_;
};

/// The construction behind "any finite A in [u,2u], together with 0, is a
/// fixed point set": f(0)=0, f(x)=x on A, f(u)=2u when u is not in A, and
/// f(x)=u everywhere else. The result is amenable and tightly bounded.
inline FunctionSpec build_tight_bounded_fixset_function(const std::vector<Rational>& a_set,
                                                        const Rational& u) {
    if (u <= 0) raise(ErrorCode::InvalidBounds, "tight_fixset builder: u must be positive");
    std::map<std::string, Rational> params;
    params["u"] = u;
    std::size_t i = 0;
    for (const auto& a : a_set) {
        if (a < u || a > 2 * u)
            raise(ErrorCode::InvalidBounds, "tight_fixset builder: A must lie in [u, 2u]");
        params["a" + std::to_string(i++)] = a;
    }
    return FunctionSpec::catalog("tight_fixset", params);
}

}  // namespace metrika::funcalc
