#pragma once

#include <stdexcept>
#include <string>

namespace metrika {

enum class ErrorCode {
    DomainError,          // argument outside [0,inf) or a catalog parameter constraint
    RationalityRequired,  // rationality-sensitive function given an untagged value
    NonAmenable,          // derivative probe on a function with f(y)=0 for y>0
    NumericalOverflow,    // iterate or ratio left the representable window
    ShapeError,           // malformed matrix / dimension mismatch
    EmptySubset,          // Hausdorff distance of an empty set
    HypothesisViolated,   // contraction-constant derivation with f'(0) <= k
    InvalidBounds,        // fixed-set builder with A not inside [u,2u]
    AnyStartDiverged,     // multi-start solve where some start failed to converge
    ParseError,           // unreadable scalar / spec / matrix text
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::RationalityRequired: return "RationalityRequired";
        case ErrorCode::NonAmenable: return "NonAmenable";
        case ErrorCode::NumericalOverflow: return "NumericalOverflow";
        case ErrorCode::ShapeError: return "ShapeError";
        case ErrorCode::EmptySubset: return "EmptySubset";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::InvalidBounds: return "InvalidBounds";
        case ErrorCode::AnyStartDiverged: return "AnyStartDiverged";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "UnknownError";
}

}  // namespace metrika
