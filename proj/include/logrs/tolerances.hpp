#pragma once

namespace logrs {

/// Numerical tolerances shared across the library. All lengths are in units
/// of the chart coordinate w.
struct Tolerances {
    double branch = 1e-9; // minimum distance of a surface point to a branch position
    double slit = 1e-9;   // a point closer than this to a slit ray counts as on it
    double dist = 1e-9;   // metric comparisons
    double root = 1e-12;  // residual target for polynomial root finding
};

} // namespace logrs
