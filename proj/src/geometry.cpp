#include "logrs/geometry.hpp"

#include "logrs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace logrs {

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

double Polygon::diameter() const {
    double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
    double lo_y = lo_x, hi_y = hi_x;
    for (Complex v : vertices) {
        lo_x = std::min(lo_x, v.real());
        hi_x = std::max(hi_x, v.real());
        lo_y = std::min(lo_y, v.imag());
        hi_y = std::max(hi_y, v.imag());
    }
    return std::hypot(hi_x - lo_x, hi_y - lo_y);
}

double point_segment_distance(Complex p, Complex a, Complex b) {
    Complex d = b - a;
    double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p - a).real() * d.real() + (p - a).imag() * d.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

int winding_number(const Polygon& poly, Complex p) {
    // Signed angle sum; reliable for points off the boundary.
    double total = 0.0;
    std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        Complex u = poly.vertices[i] - p;
        Complex v = poly.vertices[(i + 1) % n] - p;
        total += std::atan2(cross(u, v), u.real() * v.real() + u.imag() * v.imag());
    }
    return (int)std::lround(total / (2.0 * M_PI));
}

double boundary_distance(const Polygon& poly, Complex p) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i)
        best = std::min(best, point_segment_distance(p, poly.vertices[i], poly.vertices[(i + 1) % n]));
    return best;
}

bool point_strictly_inside(const Polygon& poly, Complex p, double tol) {
    if (boundary_distance(poly, p) <= tol) return false;
    return winding_number(poly, p) != 0;
}

bool point_in_closed_polygon(const Polygon& poly, Complex p, double tol) {
    if (boundary_distance(poly, p) <= tol) return true;
    return winding_number(poly, p) != 0;
}

Complex interior_point(const Polygon& poly) {
    double diam = poly.diameter();
    std::size_t n = poly.size();
    for (double scale : {1e-3, 1e-2, 5e-2, 0.2}) {
        double delta = diam * scale;
        for (std::size_t i = 0; i < n; ++i) {
            Complex a = poly.vertices[i], b = poly.vertices[(i + 1) % n];
            Complex d = b - a;
            double len = std::abs(d);
            if (len < diam * 1e-12) continue;
            Complex inward = Complex(0, 1) * (d / len); // left of the directed edge
            Complex cand = (a + b) / 2.0 + delta * inward;
            if (point_strictly_inside(poly, cand, delta * 0.25)) return cand;
        }
    }
    throw_invalid("polygon has no detectable interior (degenerate piece)");
}

bool segments_properly_cross(Complex a, Complex b, Complex c, Complex d, double tol) {
    double scale = std::max({std::abs(b - a), std::abs(d - c), 1e-300});
    double eps = tol * scale;
    double d1 = cross(b - a, c - a);
    double d2 = cross(b - a, d - a);
    double d3 = cross(d - c, a - c);
    double d4 = cross(d - c, b - c);
    return ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) &&
           ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps));
}

std::optional<Complex> segment_overlap_midpoint(Complex a, Complex b, Complex c,
                                                Complex d, double tol) {
    Complex u = b - a;
    double len = std::abs(u);
    if (len < tol) return std::nullopt;
    Complex dir = u / len;
    // c, d must lie on the line through a, b.
    if (std::abs(cross(dir, c - a)) > tol || std::abs(cross(dir, d - a)) > tol)
        return std::nullopt;
    auto param = [&](Complex p) { return ((p - a) / dir).real(); };
    double s0 = 0.0, s1 = len;
    double t0 = param(c), t1 = param(d);
    if (t0 > t1) std::swap(t0, t1);
    double lo = std::max(s0, t0), hi = std::min(s1, t1);
    if (hi - lo <= tol) return std::nullopt;
    return a + dir * ((lo + hi) / 2.0);
}

bool ray_crosses_interior(const Polygon& poly, Complex origin, double angle, double tol) {
    Complex dir = std::polar(1.0, angle);
    // Collect ray parameters where the ray meets polygon edges, then test the
    // midpoint of every span between consecutive hits.
    std::vector<double> params;
    params.push_back(0.0);
    std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        Complex a = poly.vertices[i], b = poly.vertices[(i + 1) % n];
        Complex ra = (a - origin) / dir, rb = (b - origin) / dir;
        double ya = ra.imag(), yb = rb.imag();
        if (std::abs(ya) <= tol && std::abs(yb) <= tol) {
            // Edge lies along the ray line; its endpoints delimit spans.
            if (ra.real() > 0) params.push_back(ra.real());
            if (rb.real() > 0) params.push_back(rb.real());
            continue;
        }
        if ((ya > 0 && yb > 0) || (ya < 0 && yb < 0)) continue;
        double t = ya / (ya - yb);
        double x = ra.real() + t * (rb.real() - ra.real());
        if (x > 0) params.push_back(x);
    }
    double reach = 0.0;
    for (Complex v : poly.vertices) reach = std::max(reach, std::abs(v - origin));
    params.push_back(reach + 1.0);
    std::sort(params.begin(), params.end());
    for (std::size_t i = 0; i + 1 < params.size(); ++i) {
        double mid = (params[i] + params[i + 1]) / 2.0;
        if (mid <= 0) continue;
        if (point_strictly_inside(poly, origin + mid * dir, tol)) return true;
    }
    return false;
}

bool polygons_overlap(const Polygon& a, const Polygon& b, double tol) {
    for (Complex v : a.vertices)
        if (point_strictly_inside(b, v, tol)) return true;
    for (Complex v : b.vertices)
        if (point_strictly_inside(a, v, tol)) return true;
    std::size_t na = a.size(), nb = b.size();
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            if (segments_properly_cross(a.vertices[i], a.vertices[(i + 1) % na],
                                        b.vertices[j], b.vertices[(j + 1) % nb], tol))
                return true;
    // Identical or nested pieces: vertices sit on the other boundary, so probe
    // an interior point of each.
    try {
        if (point_strictly_inside(b, interior_point(a), tol)) return true;
    } catch (const Error&) {}
    try {
        if (point_strictly_inside(a, interior_point(b), tol)) return true;
    } catch (const Error&) {}
    return false;
}

double point_ray_distance(Complex p, Complex origin, double angle) {
    Complex r = (p - origin) / std::polar(1.0, angle);
    if (r.real() <= 0) return std::abs(p - origin);
    return std::abs(r.imag());
}

} // namespace logrs
