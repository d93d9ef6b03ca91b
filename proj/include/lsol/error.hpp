#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lsol {

enum class Errc {
    NonPositiveWeight,
    BadExponent,
    BadDomain,
    BadTable,
    OutOfDomain,
    NoBracket,
    NoRoot,
    NonFinite,
    BelowThreshold,
    BracketFailure,
    NotBlownUp,
    NewtonDivergence,
    BadMesh,
    SubcriticalLambda,
    NotOrdered,
    NotSubSuper,
    MeshMismatch,
    LadderStall,
    HypothesisViolation,
    ParseError,
    ValidationError,
    IoError,
    QuadratureFailure,
};

std::string_view errc_name(Errc c) noexcept;

/// Every failure in the library is reported as an Error carrying a code.
/// `field` names the offending input (dotted path for config errors).
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what, std::string field = {})
        : std::runtime_error(what), code_(code), field_(std::move(field)) {}

    Errc code() const noexcept { return code_; }
    const std::string& field() const noexcept { return field_; }

private:
    Errc code_;
    std::string field_;
};

}  // namespace lsol
