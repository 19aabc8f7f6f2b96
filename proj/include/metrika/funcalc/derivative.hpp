#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "metrika/funcalc/eval.hpp"
#include "metrika/funcalc/grid.hpp"

namespace metrika::funcalc {

/// One-sided derivative at 0 versus the least global Lipschitz-from-zero
/// bound (the infimum of {k : f(x) <= kx for all x}). For metric-preserving
/// f the two coincide; for amenable concave specs the grid sup is sharp and
/// the agreement flag is asserted by the test suites.
struct DerivativeAtZeroReport {
    std::optional<Scalar> estimate;       // nullopt encodes +infinity
    std::vector<std::pair<Scalar, Scalar>> sample_ratios;  // (y, f(y)/y), y decreasing
    std::optional<Scalar> inf_kf_estimate;                 // nullopt encodes +infinity
    bool agreement = false;
    bool concavity_declared = false;

    bool infinite() const { return !estimate.has_value(); }
};

inline constexpr double kRatioOverflow = 1e12;

/// Ratios f(y)/y along y = 2^-i. The reported sequence stops at `depth`;
/// the divergence scan continues past it (up to i = 200) while the ratios
/// keep growing geometrically, since a slow divergence like 1/sqrt(y) needs
/// about twice the default depth to cross the overflow threshold.
inline DerivativeAtZeroReport estimate_derivative_at_zero(const FunctionSpec& spec,
                                                          std::size_t depth = 40,
                                                          double agreement_tol = 1e-6) {
    constexpr std::size_t kHardCap = 200;
    DerivativeAtZeroReport rep;
    rep.concavity_declared = spec.declares("concave");

    Scalar f0 = eval(spec, Scalar::exact(0));
    if (!f0.is_zero())
        raise(ErrorCode::NonAmenable, "f(0) is nonzero; the ratio f(y)/y is meaningless");

    std::vector<Scalar> ratios;
    bool diverged = false;
    for (std::size_t i = 0; i <= kHardCap; ++i) {
        Rational y(BigInt(1), BigInt(1) << i);
        Scalar fy = eval(spec, Scalar::exact(y));
        if (!std::isfinite(fy.value()))
            raise(ErrorCode::NumericalOverflow, "f overflowed along the probe sequence");
        if (fy.sign() <= 0)
            raise(ErrorCode::NonAmenable, "f vanishes at a positive probe point");
        Scalar ratio = scalar_div(fy, Scalar::exact(y));
        if (ratio.value() > kRatioOverflow) {
            diverged = true;
            if (i <= depth) rep.sample_ratios.emplace_back(Scalar::exact(y), ratio);
            break;
        }
        ratios.push_back(ratio);
        if (i <= depth) rep.sample_ratios.emplace_back(Scalar::exact(y), ratio);
        if (i >= depth && ratios.size() >= 2) {
            double prev = ratios[ratios.size() - 2].value();
            if (ratio.value() <= prev * 1.05) break;  // flattened out: finite limit
        }
    }

    if (!diverged && !ratios.empty()) {
        std::size_t idx = std::min(depth, ratios.size() - 1);
        rep.estimate = ratios[idx];
    }

    // sup f(x)/x over the probe sequence plus a wide positive grid.
    Scalar sup = Scalar::exact(0);
    bool sup_infinite = diverged;
    if (!sup_infinite) {
        for (const auto& r : ratios)
            if (compare(r, sup) > 0) sup = r;
        ProbeGrid wide = positive_part(default_probe_grid(spec));
        for (const auto& x : wide) {
            Scalar ratio = scalar_div(eval(spec, x), x);
            if (ratio.value() > kRatioOverflow) {
                sup_infinite = true;
                break;
            }
            if (compare(ratio, sup) > 0) sup = ratio;
        }
    }
    if (!sup_infinite) rep.inf_kf_estimate = sup;

    if (rep.infinite() && !rep.inf_kf_estimate.has_value())
        rep.agreement = true;
    else if (!rep.infinite() && rep.inf_kf_estimate.has_value()) {
        Scalar gap = scalar_abs(scalar_sub(*rep.estimate, *rep.inf_kf_estimate));
        rep.agreement = static_cast<double>(gap.ld_value()) <= agreement_tol;
    }
    return rep;
}

}  // namespace metrika::funcalc
