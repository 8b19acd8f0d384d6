#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pivext {

enum class errc {
    not_closed,
    not_associative,
    no_identity,
    no_inverse,
    unsupported_parameter,
    not_normal,
    not_abelian,
    not_a_character,
    invalid_module,
    coefficient_mismatch,
    not_a_cocycle,
    too_large,
    o1_obstructed,
    not_symmetric,
    degenerate,
    not_biadditive,
    schema_error,
    unknown_group,
};

inline constexpr std::string_view to_string(errc code) noexcept
{
    switch (code) {
    case errc::not_closed: return "NotClosed";
    case errc::not_associative: return "NotAssociative";
    case errc::no_identity: return "NoIdentity";
    case errc::no_inverse: return "NoInverse";
    case errc::unsupported_parameter: return "UnsupportedParameter";
    case errc::not_normal: return "NotNormal";
    case errc::not_abelian: return "NotAbelian";
    case errc::not_a_character: return "NotACharacter";
    case errc::invalid_module: return "InvalidModule";
    case errc::coefficient_mismatch: return "CoefficientMismatch";
    case errc::not_a_cocycle: return "NotACocycle";
    case errc::too_large: return "TooLarge";
    case errc::o1_obstructed: return "O1Obstructed";
    case errc::not_symmetric: return "NotSymmetric";
    case errc::degenerate: return "Degenerate";
    case errc::not_biadditive: return "NotBiadditive";
    case errc::schema_error: return "SchemaError";
    case errc::unknown_group: return "UnknownGroup";
    }
    return "Unknown";
}

/// Every failure raised by the library. `code()` identifies the failure class,
/// `what()` carries a human-readable message that names the offending witness.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message)
    {
    }

    errc code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    errc code_;
    std::string detail_;
};

} // namespace pivext
