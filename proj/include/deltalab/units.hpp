#pragma once

#include <numbers>

namespace deltalab {

/// Dimensional context shared by all physics modules. Defaults give the
/// dimensionless convention hbar = m = 1 used throughout the test suite.
struct PhysicalUnits {
    double hbar = 1.0;
    double mass = 1.0;

    double planck_h() const { return 2.0 * std::numbers::pi * hbar; }
    bool valid() const { return hbar > 0.0 && mass > 0.0; }
};

} // namespace deltalab
