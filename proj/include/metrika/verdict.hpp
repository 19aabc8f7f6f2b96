#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metrika/scalar.hpp"

namespace metrika {

enum class Status { Holds, Fails, Unknown };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::Holds: return "Holds";
        case Status::Fails: return "Fails";
        case Status::Unknown: return "Unknown";
    }
    return "?";
}

/// What a Holds verdict actually asserts: the sampled window, never all of
/// [0,inf).
struct GridCertificate {
    Scalar window_lo;
    Scalar window_hi;
    std::size_t sample_count = 0;
};

/// A failing input tuple together with the evaluated values, so the
/// violation can be re-checked by direct evaluation.
struct Counterexample {
    std::vector<Scalar> inputs;
    std::vector<Scalar> values;
    std::string detail;
};

enum class BasisKind { Sampled, SufficientCondition, Declared };

struct PropertyVerdict {
    Status status = Status::Unknown;
    BasisKind basis = BasisKind::Sampled;
    std::string basis_detail;  // named sufficient condition or declaration source
    std::optional<GridCertificate> certificate;
    std::optional<Counterexample> counterexample;
    std::optional<Scalar> witness;  // e.g. the u of a tight bound, a margin
    std::string witness_name;
    bool vacuous = false;

    bool holds() const { return status == Status::Holds; }
    bool fails() const { return status == Status::Fails; }

    static PropertyVerdict sampled_holds(GridCertificate cert, bool vac = false) {
        PropertyVerdict v;
        v.status = Status::Holds;
        v.basis = BasisKind::Sampled;
        v.certificate = std::move(cert);
        v.vacuous = vac;
        return v;
    }

    static PropertyVerdict fail(Counterexample ce) {
        PropertyVerdict v;
        v.status = Status::Fails;
        v.basis = BasisKind::Sampled;
        v.counterexample = std::move(ce);
        return v;
    }

    static PropertyVerdict via(std::string condition_name) {
        PropertyVerdict v;
        v.status = Status::Holds;
        v.basis = BasisKind::SufficientCondition;
        v.basis_detail = std::move(condition_name);
        return v;
    }

    static PropertyVerdict unknown(std::string why = {}) {
        PropertyVerdict v;
        v.status = Status::Unknown;
        v.basis_detail = std::move(why);
        return v;
    }
};

inline GridCertificate certificate_for(const std::vector<Scalar>& grid) {
    GridCertificate c;
    if (!grid.empty()) {
        c.window_lo = grid.front();
        c.window_hi = grid.back();
    }
    c.sample_count = grid.size();
    return c;
}

}  // namespace metrika
