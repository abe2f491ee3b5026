#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdm {

/// Failure categories surfaced by the library. CLI maps these to exit codes:
/// configuration problems -> 1, numerical failures -> 2.
enum class errc {
    syntax_error,
    unknown_function,
    non_integer_exponent,
    unbound_parameter,
    division_by_zero,
    sqrt_of_negative,
    singular_at_origin,
    degenerate_series,
    non_finite,
    capacity_mismatch,
    unphysical_mass,
    ordering_constraint,
    iteration_overflow,
    parity_not_applicable,
    degenerate_boundary,
    rescale_overflow,
    domain_too_small,
    precondition,
    bad_config,
};

class Error : public std::runtime_error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Error(errc code, const std::string& message, std::size_t position = npos)
        : std::runtime_error(message), code_(code), position_(position) {}

    errc code() const noexcept { return code_; }

    /// Byte offset into the source text for parse errors; npos otherwise.
    std::size_t position() const noexcept { return position_; }

private:
    errc code_;
    std::size_t position_;
};

inline bool is_config_error(const Error& e) {
    switch (e.code()) {
        case errc::syntax_error:
        case errc::unknown_function:
        case errc::non_integer_exponent:
        case errc::unbound_parameter:
        case errc::ordering_constraint:
        case errc::bad_config:
            return true;
        default:
            return false;
    }
}

}  // namespace pdm
