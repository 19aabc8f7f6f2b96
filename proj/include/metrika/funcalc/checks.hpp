#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "metrika/funcalc/eval.hpp"
#include "metrika/funcalc/grid.hpp"
#include "metrika/verdict.hpp"

namespace metrika::funcalc {

namespace detail {

// Prepared grid data for the quadratic scans. Pair predicates run in double
// first; any pair within the fast margin of the boundary, or whose derived
// point lands near a discontinuity, is re-checked with exact arithmetic.
// Fails verdicts are always confirmed exactly before being reported.
struct ScanData {
    ProbeGrid x;
    std::vector<Scalar> f;
    std::vector<double> xd, fd;
    std::vector<Rationality> tag;
    std::vector<double> breakpoints;

    static constexpr double kFastMargin = 1e-6;

    ScanData(const FunctionSpec& spec, const ProbeGrid& grid_in) : spec_(&spec) {
        x = grid_in;
        sort_unique(x);
        f.reserve(x.size());
        for (const auto& p : x) f.push_back(eval(spec, p));
        xd.reserve(x.size());
        fd.reserve(x.size());
        tag.reserve(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            xd.push_back(x[i].value());
            fd.push_back(f[i].value());
            tag.push_back(x[i].rationality());
        }
        double hi = x.empty() ? 0.0 : xd.back();
        long window = static_cast<long>(hi * 2 + 4);  // pair sums reach 2*max
        for (const Rational& b : spec.breakpoints(Rational(0), Rational(window)))
            breakpoints.push_back(to_double(b));
        std::sort(breakpoints.begin(), breakpoints.end());
    }

    bool near_breakpoint(double v) const {
        auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), v - kFastMargin);
        return it != breakpoints.end() && *it <= v + kFastMargin;
    }

    double f64_at(double v, Rationality r) const { return eval_f64(*spec_, v, r); }
    Scalar exact_at(const Scalar& v) const { return eval(*spec_, v); }

private:
    const FunctionSpec* spec_;
};

inline Counterexample make_ce(std::initializer_list<Scalar> inputs,
                              std::initializer_list<Scalar> values, std::string detail) {
    Counterexample ce;
    ce.inputs.assign(inputs);
    ce.values.assign(values);
    ce.detail = std::move(detail);
    return ce;
}

}  // namespace detail

/// f(0) = 0 and f vanishes nowhere else on the grid.
inline PropertyVerdict check_amenable(const FunctionSpec& spec, const ProbeGrid& grid) {
    if (grid.empty()) raise(ErrorCode::DomainError, "empty probe grid");
    for (const auto& p : grid)
        if (p.sign() < 0) raise(ErrorCode::DomainError, "probe grid below 0");
    Scalar f0 = eval(spec, Scalar::exact(0));
    if (!f0.is_zero())
        return PropertyVerdict::fail(
            detail::make_ce({Scalar::exact(0)}, {f0}, "f(0) is nonzero"));
    for (const auto& p : grid) {
        if (p.sign() <= 0) continue;
        Scalar v = eval(spec, p);
        if (v.is_zero())
            return PropertyVerdict::fail(detail::make_ce({p}, {v}, "f vanishes at a positive point"));
    }
    return PropertyVerdict::sampled_holds(certificate_for(grid));
}

/// Nondecreasing (or strictly increasing) along the sorted grid.
inline PropertyVerdict check_monotone(const FunctionSpec& spec, const ProbeGrid& grid_in,
                                      bool strict, double tol = kDefaultAbsTol) {
    ProbeGrid grid = grid_in;
    sort_unique(grid);
    if (grid.size() < 2) return PropertyVerdict::sampled_holds(certificate_for(grid), true);
    Scalar prev = eval(spec, grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        Scalar cur = eval(spec, grid[i]);
        bool ok;
        if (prev.is_exact() && cur.is_exact())
            ok = strict ? compare(prev, cur) < 0 : compare(prev, cur) <= 0;
        else
            ok = strict ? prev.ld_value() < cur.ld_value() + (prev.tolerance() + cur.tolerance() + tol)
                        : prev.ld_value() <= cur.ld_value() + prev.tolerance() + cur.tolerance() + tol;
        if (strict && ok && prev.is_exact() && cur.is_exact() && compare(prev, cur) == 0)
            ok = false;
        if (!ok)
            return PropertyVerdict::fail(detail::make_ce(
                {grid[i - 1], grid[i]}, {prev, cur},
                strict ? "adjacent pair not strictly increasing" : "adjacent pair decreasing"));
        prev = cur;
    }
    return PropertyVerdict::sampled_holds(certificate_for(grid));
}

/// Midpoint concavity f((x+y)/2) >= (f(x)+f(y))/2 over all grid pairs.
inline PropertyVerdict check_concave(const FunctionSpec& spec, const ProbeGrid& grid,
                                     double tol = kDefaultAbsTol) {
    if (grid.size() < 3) raise(ErrorCode::DomainError, "concavity probe needs >= 3 points");
    detail::ScanData s(spec, grid);
    const double margin = detail::ScanData::kFastMargin;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        for (std::size_t j = i + 1; j < s.x.size(); ++j) {
            double md = (s.xd[i] + s.xd[j]) / 2;
            if (!s.near_breakpoint(md)) {
                Rationality r = metrika::detail::sum_rationality(s.x[i], s.x[j]);
                double fm = s.f64_at(md, r);
                double rhs = (s.fd[i] + s.fd[j]) / 2;
                if (fm >= rhs + margin) continue;  // clear pass
            }
            Scalar mid = scalar_scale(Rational(1, 2), scalar_add(s.x[i], s.x[j]));
            Scalar fm = s.exact_at(mid);
            Scalar rhs = scalar_scale(Rational(1, 2), scalar_add(s.f[i], s.f[j]));
            if (!scalar_le_slack(rhs, fm, tol))
                return PropertyVerdict::fail(detail::make_ce(
                    {s.x[i], s.x[j], mid}, {s.f[i], s.f[j], fm},
                    "midpoint value below the chord"));
        }
    }
    return PropertyVerdict::sampled_holds(certificate_for(s.x));
}

/// f(a+b) <= f(a) + f(b) over all grid pairs.
inline PropertyVerdict check_subadditive(const FunctionSpec& spec, const ProbeGrid& grid,
                                         double tol = kDefaultAbsTol) {
    detail::ScanData s(spec, grid);
    const double margin = detail::ScanData::kFastMargin;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        for (std::size_t j = i; j < s.x.size(); ++j) {
            double sum = s.xd[i] + s.xd[j];
            if (!s.near_breakpoint(sum)) {
                Rationality r = metrika::detail::sum_rationality(s.x[i], s.x[j]);
                double fs = s.f64_at(sum, r);
                if (fs <= s.fd[i] + s.fd[j] - margin) continue;  // clear pass
            }
            Scalar sx = scalar_add(s.x[i], s.x[j]);
            Scalar fs = s.exact_at(sx);
            if (!scalar_le_slack(fs, scalar_add(s.f[i], s.f[j]), tol))
                return PropertyVerdict::fail(detail::make_ce(
                    {s.x[i], s.x[j]}, {fs, s.f[i], s.f[j]}, "f(a+b) exceeds f(a)+f(b)"));
        }
    }
    return PropertyVerdict::sampled_holds(certificate_for(s.x));
}

/// Grid range inside [u, 2u] for the witness u = grid minimum. A failing
/// spread (max > 2*min) rules the property out conclusively; Holds is
/// grid-relative like every sampled verdict.
inline PropertyVerdict check_tightly_bounded(const FunctionSpec& spec, const ProbeGrid& grid_in) {
    ProbeGrid grid = positive_part(grid_in);
    if (grid.empty()) raise(ErrorCode::DomainError, "tight-bound probe needs positive points");
    std::size_t imin = 0, imax = 0;
    std::vector<Scalar> vals;
    vals.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        vals.push_back(eval(spec, grid[i]));
        if (compare(vals[i], vals[imin]) < 0) imin = i;
        if (compare(vals[i], vals[imax]) > 0) imax = i;
    }
    const Scalar& m = vals[imin];
    const Scalar& M = vals[imax];
    if (m.sign() <= 0)
        return PropertyVerdict::fail(detail::make_ce({grid[imin]}, {m}, "range touches 0"));
    Scalar twice_m = scalar_scale(Rational(2), m);
    if (!scalar_le_slack(M, twice_m))
        return PropertyVerdict::fail(detail::make_ce(
            {grid[imin], grid[imax]}, {m, M}, "range spread exceeds a factor of 2"));
    PropertyVerdict v = PropertyVerdict::sampled_holds(certificate_for(grid));
    v.witness = m;
    v.witness_name = "u";
    return v;
}

/// f(a) <= 2 f(b) whenever a <= 2b. Failing this rules out metric
/// preservation outright.
inline PropertyVerdict check_doubling(const FunctionSpec& spec, const ProbeGrid& grid,
                                      double tol = kDefaultAbsTol) {
    detail::ScanData s(spec, grid);
    const double margin = detail::ScanData::kFastMargin;
    for (std::size_t i = 0; i < s.x.size(); ++i) {      // a
        for (std::size_t j = 0; j < s.x.size(); ++j) {  // b
            if (!(s.xd[i] <= 2 * s.xd[j] + margin)) continue;  // clearly out of scope
            // No derived evaluations here, so the doubles are faithful;
            // skip only clear passes away from the a = 2b boundary.
            if (s.xd[i] < 2 * s.xd[j] - margin && s.fd[i] <= 2 * s.fd[j] - margin) continue;
            bool pair_applies;
            if (s.x[i].is_exact() && s.x[j].is_exact())
                pair_applies = compare(s.x[i], scalar_scale(Rational(2), s.x[j])) <= 0;
            else
                pair_applies = s.xd[i] <= 2 * s.xd[j] + tol;
            if (!pair_applies) continue;
            if (!scalar_le_slack(s.f[i], scalar_scale(Rational(2), s.f[j]), tol))
                return PropertyVerdict::fail(detail::make_ce(
                    {s.x[i], s.x[j]}, {s.f[i], s.f[j]}, "f(a) > 2 f(b) with a <= 2b"));
        }
    }
    return PropertyVerdict::sampled_holds(certificate_for(s.x));
}

/// x -> f(x)/x nonincreasing along the positive sorted grid.
inline PropertyVerdict check_ratio_decreasing(const FunctionSpec& spec,
                                              const ProbeGrid& grid_in,
                                              double tol = kDefaultAbsTol) {
    ProbeGrid grid = positive_part(grid_in);
    sort_unique(grid);
    if (grid.empty()) raise(ErrorCode::DomainError, "ratio probe needs positive points");
    Scalar prev_ratio = scalar_div(eval(spec, grid[0]), grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        Scalar ratio = scalar_div(eval(spec, grid[i]), grid[i]);
        if (!scalar_le_slack(ratio, prev_ratio, tol))
            return PropertyVerdict::fail(detail::make_ce(
                {grid[i - 1], grid[i]}, {prev_ratio, ratio}, "ratio f(x)/x increased"));
        prev_ratio = ratio;
    }
    return PropertyVerdict::sampled_holds(certificate_for(grid));
}

/// Composite report for the periodic-residual route: f(x) = x + g(x) with g
/// periodic is metric-preserving exactly when f is increasing and
/// subadditive.
struct PokornyReport {
    PropertyVerdict periodicity;
    PropertyVerdict monotone;
    PropertyVerdict subadditive;
    Status metric_preserving = Status::Unknown;

    PropertyVerdict overall() const {
        if (periodicity.fails()) return periodicity;
        if (!periodicity.holds()) return PropertyVerdict::unknown("periodicity unresolved");
        PropertyVerdict v = periodicity;
        v.basis = BasisKind::SufficientCondition;
        v.basis_detail = "periodic-residual";
        v.status = metric_preserving;
        if (metric_preserving == Status::Fails) {
            v.counterexample =
                monotone.fails() ? monotone.counterexample : subadditive.counterexample;
        }
        return v;
    }
};

/// Verifies f(x) - x is periodic with the given period on the grid, then
/// classifies metric preservation through the increasing+subadditive
/// equivalence. The period may be symbolic (pi for x + |sin x|).
inline PokornyReport check_pokorny_form(const FunctionSpec& spec, const Scalar& period,
                                        const ProbeGrid& grid_in,
                                        double tol = kDefaultAbsTol) {
    if (period.sign() <= 0) raise(ErrorCode::DomainError, "period must be positive");
    PokornyReport rep;
    ProbeGrid grid = grid_in;
    sort_unique(grid);
    if (grid.empty()) raise(ErrorCode::DomainError, "empty probe grid");

    bool violation = false;
    Counterexample ce;
    const Scalar& hi = grid.back();
    std::size_t checked = 0;
    for (const auto& p : grid) {
        Scalar shifted = scalar_add(p, period);
        if (compare(shifted, hi) > 0) break;
        Scalar g0 = scalar_sub(eval(spec, p), p);
        Scalar g1 = scalar_sub(eval(spec, shifted), shifted);
        Scalar diff = scalar_abs(scalar_sub(g1, g0));
        ++checked;
        if (!scalar_le_slack(diff, Scalar::exact(0), tol)) {
            violation = true;
            ce = detail::make_ce({p, shifted}, {g0, g1}, "residual not periodic");
            break;
        }
    }
    if (checked == 0) raise(ErrorCode::DomainError, "grid shorter than one period");
    rep.periodicity = violation
                          ? PropertyVerdict::fail(std::move(ce))
                          : PropertyVerdict::sampled_holds(certificate_for(grid));
    if (rep.periodicity.holds()) {
        rep.monotone = check_monotone(spec, grid, /*strict=*/false, tol);
        rep.subadditive = check_subadditive(spec, grid, tol);
        if (rep.monotone.holds() && rep.subadditive.holds())
            rep.metric_preserving = Status::Holds;
        else if (rep.monotone.fails() || rep.subadditive.fails())
            rep.metric_preserving = Status::Fails;
    }
    return rep;
}

/// f(0) = 0, strictly increasing, and concave on the grid.
inline PropertyVerdict check_metric_transform(const FunctionSpec& spec, const ProbeGrid& grid,
                                              double tol = kDefaultAbsTol) {
    Scalar f0 = eval(spec, Scalar::exact(0));
    if (!f0.is_zero()) {
        PropertyVerdict v = PropertyVerdict::fail(
            detail::make_ce({Scalar::exact(0)}, {f0}, "f(0) is nonzero"));
        v.basis_detail = "origin";
        return v;
    }
    PropertyVerdict mono = check_monotone(spec, grid, /*strict=*/true, tol);
    if (!mono.holds()) {
        mono.basis_detail = "strict-monotonicity";
        return mono;
    }
    PropertyVerdict conc = check_concave(spec, grid, tol);
    if (!conc.holds()) {
        conc.basis_detail = "concavity";
        return conc;
    }
    return PropertyVerdict::sampled_holds(certificate_for(grid));
}

/// Classification against the sufficient conditions for metric preservation
/// (amenable+concave, amenable+subadditive+increasing, amenable+tightly
/// bounded) and the two necessary conditions (amenability, doubling).
inline PropertyVerdict classify_metric_preserving(const FunctionSpec& spec,
                                                  const ProbeGrid& grid,
                                                  double tol = kDefaultAbsTol) {
    PropertyVerdict amen = check_amenable(spec, grid);
    if (amen.fails()) {
        amen.basis_detail = "amenability-necessary";
        return amen;
    }
    PropertyVerdict doubling = check_doubling(spec, grid, tol);
    if (doubling.fails()) {
        doubling.basis_detail = "doubling-necessary";
        return doubling;
    }
    if (amen.holds()) {
        PropertyVerdict conc = check_concave(spec, grid, tol);
        if (conc.holds()) {
            PropertyVerdict v = PropertyVerdict::via("amenable+concave");
            v.certificate = certificate_for(grid);
            return v;
        }
        PropertyVerdict mono = check_monotone(spec, grid, /*strict=*/false, tol);
        PropertyVerdict sub = check_subadditive(spec, grid, tol);
        if (mono.holds() && sub.holds()) {
            PropertyVerdict v = PropertyVerdict::via("amenable+subadditive+increasing");
            v.certificate = certificate_for(grid);
            return v;
        }
        PropertyVerdict tight = check_tightly_bounded(spec, positive_part(grid));
        if (tight.holds()) {
            PropertyVerdict v = PropertyVerdict::via("amenable+tightly-bounded");
            v.certificate = certificate_for(grid);
            v.witness = tight.witness;
            v.witness_name = tight.witness_name;
            return v;
        }
    }
    return PropertyVerdict::unknown("no sufficient condition established on this grid");
}

}  // namespace metrika::funcalc
