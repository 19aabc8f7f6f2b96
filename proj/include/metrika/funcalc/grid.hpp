#pragma once

#include <algorithm>
#include <vector>

#include "metrika/funcalc/function_spec.hpp"
#include "metrika/scalar.hpp"

namespace metrika::funcalc {

using ProbeGrid = std::vector<Scalar>;

inline void sort_unique(ProbeGrid& grid) {
    std::sort(grid.begin(), grid.end(), scalar_less);
    grid.erase(std::unique(grid.begin(), grid.end(), scalar_eq), grid.end());
}

inline ProbeGrid uniform_grid(const Rational& lo, const Rational& hi, const Rational& step) {
    ProbeGrid g;
    for (Rational x = lo; x <= hi; x += step) g.push_back(Scalar::exact(x));
    return g;
}

/// Default probe grid: sixteenths up to 100, powers of two up to 1024, and
/// every rational breakpoint of the spec nudged by 1/1024 on both sides.
/// Breakpoints are where the catalog's counterexamples live.
inline ProbeGrid default_probe_grid(const FunctionSpec& spec) {
    ProbeGrid g;
    g.reserve(1700);
    for (long j = 0; j <= 1600; ++j) g.push_back(Scalar::exact(Rational(j, 16)));
    for (long i = 0; i <= 10; ++i) g.push_back(Scalar::exact(Rational(1L << i)));
    const Rational nudge(1, 1024);
    for (const Rational& b : spec.breakpoints(Rational(0), Rational(104))) {
        g.push_back(Scalar::exact(b));
        if (b > nudge) g.push_back(Scalar::exact(b - nudge));
        g.push_back(Scalar::exact(b + nudge));
    }
    sort_unique(g);
    return g;
}

/// Coarser grid for the quadratic pair scans of test suites.
inline ProbeGrid coarse_probe_grid(const FunctionSpec& spec, long denom = 4,
                                   long max_x = 24) {
    ProbeGrid g;
    for (long j = 0; j <= max_x * denom; ++j) g.push_back(Scalar::exact(Rational(j, denom)));
    const Rational nudge(1, 1024);
    for (const Rational& b : spec.breakpoints(Rational(0), Rational(max_x))) {
        g.push_back(Scalar::exact(b));
        if (b > nudge) g.push_back(Scalar::exact(b - nudge));
        g.push_back(Scalar::exact(b + nudge));
    }
    sort_unique(g);
    return g;
}

inline ProbeGrid positive_part(const ProbeGrid& grid) {
    ProbeGrid g;
    for (const auto& x : grid)
        if (x.sign() > 0) g.push_back(x);
    return g;
}

}  // namespace metrika::funcalc
