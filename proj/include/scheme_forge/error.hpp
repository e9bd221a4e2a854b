#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scheme_forge {

enum class ErrorKind {
    NotSquare,
    Singular,
    Inconsistent,
    BadParameter,
    IrrationalEigenvalue,
    DegenerateSpectrum,
    NonIntegral,
    NegativeKrein,
    VacuousConfig,
    NotVanishing,
    Infeasible,
    NotHemisystem,
    NotFound,
    StructureViolation,
    AxiomFailure,
    NotWellDefined,
    Parse,
};

std::string_view to_string(ErrorKind kind);

// Every mathematical failure in the library is reported through this type.
// `witness` names the offending object (a pair, an entry, a line id) so that
// callers can print a useful diagnostic rather than a bare message.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, std::string witness = {})
        : std::runtime_error(std::string(to_string(kind)) + ": " + what),
          kind_(kind), witness_(std::move(witness)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& witness() const noexcept { return witness_; }

private:
    ErrorKind kind_;
    std::string witness_;
};

} // namespace scheme_forge
