#pragma once

#include <stdexcept>
#include <string>

namespace deltalab {

/// Base class for all recoverable deltalab errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_interval final : error {
    using error::error;
};

/// Adaptive quadrature ran out of subdivisions before meeting tolerance.
struct non_convergence final : error {
    using error::error;
};

struct grid_too_coarse final : error {
    using error::error;
};

struct insufficient_points final : error {
    using error::error;
};

struct non_positive_data final : error {
    using error::error;
};

struct index_out_of_range final : error {
    using error::error;
};

struct invalid_width final : error {
    using error::error;
};

struct unsupported_family final : error {
    using error::error;
};

struct no_dark_band_found final : error {
    using error::error;
};

struct insufficient_checkpoints final : error {
    using error::error;
};

/// Scenario configuration problem (bad key, bad value, broken precondition).
struct config_error final : error {
    using error::error;
};

} // namespace deltalab
