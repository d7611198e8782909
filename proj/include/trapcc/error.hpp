#pragma once

#include <stdexcept>
#include <string>

namespace trapcc {

// Failure categories surfaced by the library. Mirrored one-to-one by the
// TRAPCC_ERR_* codes of the C API.
enum class errc {
    invalid_distance,
    parallelogram_degenerate,
    not_a_trapezoid,
    degenerate_configuration,
    embedding_inconsistent,
    degenerate_denominator,
    singular_ratio,
    not_realizable,
    no_sign_change,
    infeasible_geometry,
    multiple_roots,
    no_convergence,
    converged_outside_omega,
    no_positive_masses,
    parse_error,
    config_error,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

} // namespace trapcc
