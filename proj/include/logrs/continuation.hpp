#pragma once

#include "logrs/surface.hpp"

#include <utility>
#include <vector>

namespace logrs {

/// Piecewise-linear path in the chart plane.
struct Polyline {
    std::vector<Complex> vertices;
};

/// Validates: at least 2 vertices, consecutive vertices separated by more
/// than tol.branch.
Polyline make_polyline(std::vector<Complex> vertices, const Tolerances& tol = {});

struct LiftStep {
    Complex a, b; // chart segment
    int sheet;    // sheet carrying this sub-segment
};

/// The lift of a polyline through the projection: the input path split at
/// slit crossings, each sub-segment tagged with its sheet.
struct LiftedPath {
    SurfacePoint start;
    std::vector<LiftStep> steps;
    SurfacePoint end;
};

/// Lift a planar polyline from a starting surface point. Sheets change
/// exactly at transverse slit crossings (counterclockwise crossing applies
/// the branch monodromy, clockwise its inverse). Errors: hits-ramification
/// when the path passes within tol.branch of a branch position;
/// invalid-argument when the path does not begin at start.w, an interior
/// vertex lies on a slit ray, or a segment runs along a slit.
LiftedPath lift_path(const SheetComplex& s, const SurfacePoint& start,
                     const Polyline& path, const Tolerances& tol = {});

/// Result of winding a small circle around a ramification point until the
/// lift first closes. closed == false means not closed within laps laps.
struct LoopOrder {
    bool closed = false;
    int laps = 0;
};

/// Number of counterclockwise laps of the circle of the given radius around
/// r until the lift closes, starting on a sheet of r's cycle. The disc must
/// be clear of other branch positions and of other branches' slit rays.
LoopOrder loop_order(const SheetComplex& s, const RamificationPoint& r,
                     double radius, int max_laps, const Tolerances& tol = {});

/// Analytic continuation of the inverse branch of p along a chart path:
/// returns the endpoint z with p(z) = last vertex reached by continuing the
/// local inverse with p(z_start) = first vertex. Adaptive predictor-corrector
/// stepping; numeric-failure on step underflow near a critical value.
Complex continue_inverse(const PolynomialSpec& p, const Polyline& w_path,
                         Complex z_start, const Tolerances& tol = {});

namespace detail {

/// One event along a planar segment, in parameter order.
struct SegmentEvent {
    double t = 0.0;
    int branch = -1;
    enum class Kind { crossing, apex } kind = Kind::crossing;
    bool ccw = false;    // crossing orientation
    Complex where;       // chart location of the event
};

struct LiftOptions {
    /// Metric mode: passing over a branch position on a sheet the branch
    /// fixes is allowed; on a moved sheet the segment is reported blocked
    /// instead of throwing.
    bool allow_apex_pass = false;
    /// Ignore the apex of this branch at the segment start (departure from a
    /// ramification point) ...
    int skip_apex_at_start = -1;
    /// ... or at the segment end (arrival into one).
    int skip_apex_at_end = -1;
};

struct SegmentLift {
    int end_sheet = 0;
    bool blocked = false; // apex hit on a moved sheet (metric mode only)
    int blocking_branch = -1;
    std::vector<SegmentEvent> applied; // crossings actually applied, in order
};

/// Lift a single straight segment. start_ray_side: when the start point lies
/// on branch .first's ray, .second = +1 for the above side, -1 for below.
SegmentLift lift_segment(const SheetComplex& s, Complex a, Complex b, int start_sheet,
                         std::optional<std::pair<int, int>> start_ray_side,
                         const LiftOptions& opt, const Tolerances& tol);

} // namespace detail

} // namespace logrs
