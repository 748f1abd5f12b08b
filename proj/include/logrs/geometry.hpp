#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace logrs {

using Complex = std::complex<double>;

/// A simple planar polygon given by its vertex loop (implicitly closed).
/// Vertices run counterclockwise around the interior; the boundary may touch
/// itself along coincident edges (the zero-width keyhole of a full annulus),
/// so interior tests use the winding number rather than crossing parity.
struct Polygon {
    std::vector<Complex> vertices;

    std::size_t size() const { return vertices.size(); }
    double diameter() const;
};

double cross(Complex a, Complex b);

double point_segment_distance(Complex p, Complex a, Complex b);

int winding_number(const Polygon& poly, Complex p);

/// Distance from p to the polygon boundary.
double boundary_distance(const Polygon& poly, Complex p);

/// Inside by winding and further than tol from the boundary.
bool point_strictly_inside(const Polygon& poly, Complex p, double tol);

/// Inside or within tol of the boundary.
bool point_in_closed_polygon(const Polygon& poly, Complex p, double tol);

/// Some point strictly interior to the polygon, found by probing inward
/// normals of boundary edges. Throws if the polygon is degenerate.
Complex interior_point(const Polygon& poly);

/// Open segment interiors cross transversally.
bool segments_properly_cross(Complex a, Complex b, Complex c, Complex d, double tol);

/// Collinear segments sharing a positive-length overlap; returns the
/// midpoint of the shared part.
std::optional<Complex> segment_overlap_midpoint(Complex a, Complex b, Complex c,
                                                Complex d, double tol);

/// Whether the ray {origin + t*e^{i*angle}, t >= 0} meets the open interior
/// of the polygon. Touching the boundary does not count.
bool ray_crosses_interior(const Polygon& poly, Complex origin, double angle, double tol);

/// Positive-area overlap test. Decided by vertex containment, proper edge
/// crossings and mutual interior-point probes; edge-to-edge touching is not
/// an overlap.
bool polygons_overlap(const Polygon& a, const Polygon& b, double tol);

/// Distance from a point to the ray {origin + t*e^{i*angle}, t >= 0}.
double point_ray_distance(Complex p, Complex origin, double angle);

} // namespace logrs
