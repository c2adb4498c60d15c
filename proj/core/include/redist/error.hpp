#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace redist {

enum class ErrorCode {
    EmptyAgentSet,
    NegativeNeed,
    ZeroTotalNeed,
    NonFinite,
    LengthMismatch,
    InvalidWeight,
    Unbalanced,
    UnknownAxiom,
    DegenerateProbe,
    NotApplicable,
    NonRepresentable,
    ParseError,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// CLI maps codes to exit statuses.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace redist
