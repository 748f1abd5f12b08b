#include "logrs/metric.hpp"

#include "logrs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

namespace logrs {

double cone_distance(double r1, double r2, double dphi) {
    if (r1 < 0 || r2 < 0 || dphi < 0) throw_invalid("cone_distance needs nonnegative inputs");
    if (dphi <= M_PI) {
        double d2 = r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * std::cos(dphi);
        return std::sqrt(std::max(0.0, d2));
    }
    return r1 + r2;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::optional<std::pair<int, int>> side_state_of(const SheetComplex& s, const SurfacePoint& p,
                                                 const Tolerances& tol) {
    if (!p.slit_side) return std::nullopt;
    for (std::size_t i = 0; i < s.branches().size(); ++i) {
        const auto& b = s.branches()[i];
        if (point_ray_distance(p.w, b.position, b.slit_angle) < tol.slit)
            return std::make_pair((int)i, *p.slit_side == SlitSide::above ? 1 : -1);
    }
    return std::nullopt;
}

// Arrival representation at q.w when the lift of [from -> q.w] ends on
// end_sheet: carries the approach-side flag when q.w is on a slit. A segment
// sliding along the ray keeps the start side; the sign of the rotated
// imaginary part is noise there.
SurfacePoint arrival_point(const SheetComplex& s, Complex from, Complex to, int end_sheet,
                           std::optional<std::pair<int, int>> start_side,
                           const Tolerances& tol) {
    std::optional<SlitSide> flag;
    for (std::size_t bi = 0; bi < s.branches().size(); ++bi) {
        const auto& b = s.branches()[bi];
        if (point_ray_distance(to, b.position, b.slit_angle) < tol.slit) {
            Complex u = std::polar(1.0, b.slit_angle);
            double ya = ((from - b.position) / u).imag();
            int side;
            if (std::abs(ya) <= tol.slit)
                side = (start_side && start_side->first == (int)bi) ? start_side->second : 1;
            else
                side = ya > 0 ? 1 : -1;
            flag = side > 0 ? SlitSide::above : SlitSide::below;
            break;
        }
    }
    return SurfacePoint{end_sheet, to, flag};
}

// Straight-segment edge between two regular points.
bool segment_connects(const SheetComplex& s, const SurfacePoint& p, const SurfacePoint& q,
                      const Tolerances& tol) {
    detail::LiftOptions opt;
    opt.allow_apex_pass = true;
    auto side = side_state_of(s, p, tol);
    auto res = detail::lift_segment(s, p.w, q.w, p.sheet, side, opt, tol);
    if (res.blocked) return false;
    SurfacePoint arr = arrival_point(s, p.w, q.w, res.end_sheet, side, tol);
    return points_identical(s, arr, q, tol);
}

// Straight-segment edge from a regular point into a ramification point.
bool segment_reaches_apex(const SheetComplex& s, const SurfacePoint& p,
                          const RamificationPoint& r, const Tolerances& tol) {
    detail::LiftOptions opt;
    opt.allow_apex_pass = true;
    opt.skip_apex_at_end = r.branch_index;
    auto res = detail::lift_segment(s, p.w, r.w, p.sheet, side_state_of(s, p, tol), opt, tol);
    return !res.blocked && r.contains_sheet(res.end_sheet);
}

// Straight-segment edge between two cone points: some departure sheet of
// r1's cycle must arrive on a sheet of r2's cycle.
bool apexes_connect(const SheetComplex& s, const RamificationPoint& r1,
                    const RamificationPoint& r2, const Tolerances& tol) {
    detail::LiftOptions opt;
    opt.allow_apex_pass = true;
    opt.skip_apex_at_start = r1.branch_index;
    opt.skip_apex_at_end = r2.branch_index;
    auto try_from = [&](const RamificationPoint& a, const RamificationPoint& b,
                        const detail::LiftOptions& o) {
        if (!a.order.is_infinite()) {
            for (int c : a.cycle) {
                auto res = detail::lift_segment(s, a.w, b.w, c, std::nullopt, o, tol);
                if (!res.blocked && b.contains_sheet(res.end_sheet)) return true;
            }
            return false;
        }
        // Infinite orbit: outside every finite cycle's support the crossing
        // word acts as a pure translation, so a bounded residue-class window
        // of departure sheets decides existence.
        int bound = 64;
        for (const auto& br : s.branches()) {
            if (br.monodromy.is_shift()) bound += std::abs(br.monodromy.shift_step());
            else
                for (const auto& cyc : br.monodromy.cycle_list())
                    for (int v : cyc) bound = std::max(bound, 64 + std::abs(v));
        }
        int step = std::abs(a.orbit_step);
        for (int c = a.orbit_residue - (bound / step) * step; c <= a.orbit_residue + bound;
             c += step) {
            auto res = detail::lift_segment(s, a.w, b.w, c, std::nullopt, o, tol);
            if (!res.blocked && b.contains_sheet(res.end_sheet)) return true;
        }
        return false;
    };
    if (!r1.order.is_infinite()) return try_from(r1, r2, opt);
    if (!r2.order.is_infinite()) {
        detail::LiftOptions rev = opt;
        std::swap(rev.skip_apex_at_start, rev.skip_apex_at_end);
        return try_from(r2, r1, rev);
    }
    return try_from(r1, r2, opt);
}

// Closed-form cross-check on single-cone surfaces: the monodromy is one full
// cycle (or a unit shift), so the surface is a flat cone of total angle
// 2*pi*order and the distance has a closed form in absolute angles.
std::optional<double> single_cone_closed_form(const SheetComplex& s, const SurfacePoint& p,
                                              const SurfacePoint& q) {
    if (s.branches().size() != 1) return std::nullopt;
    const auto& b = s.branches().front();
    double theta = b.slit_angle;

    auto angular_index = [&](int sheet) -> std::optional<double> {
        if (b.monodromy.is_shift()) {
            int step = b.monodromy.shift_step();
            if (std::abs(step) != 1) return std::nullopt;
            return (double)(sheet * step);
        }
        const auto& cycles = b.monodromy.cycle_list();
        if (cycles.size() != 1) return std::nullopt;
        if (!s.domain().is_finite() || (int)cycles.front().size() != s.domain().count())
            return std::nullopt;
        auto it = std::find(cycles.front().begin(), cycles.front().end(), sheet);
        if (it == cycles.front().end()) return std::nullopt;
        return (double)(it - cycles.front().begin());
    };

    auto abs_angle = [&](const SurfacePoint& x) -> std::optional<double> {
        auto idx = angular_index(x.sheet);
        if (!idx) return std::nullopt;
        double phi = std::arg(x.w - b.position);
        double local = theta - normalize_angle(theta - phi); // in (theta - 2*pi, theta]
        return local + 2.0 * M_PI * *idx;
    };

    auto ap = abs_angle(p), aq = abs_angle(q);
    if (!ap || !aq) return std::nullopt;
    double dphi = std::abs(*ap - *aq);
    if (s.domain().is_finite()) {
        double total = 2.0 * M_PI * s.domain().count();
        dphi = std::fmod(dphi, total);
        dphi = std::min(dphi, total - dphi);
    }
    return cone_distance(std::abs(p.w - b.position), std::abs(q.w - b.position), dphi);
}

SurfacePoint canonical_below(const SheetComplex& s, SurfacePoint p, const Tolerances& tol) {
    if (!p.slit_side || *p.slit_side == SlitSide::below) return p;
    for (const auto& b : s.branches()) {
        if (point_ray_distance(p.w, b.position, b.slit_angle) < tol.slit) {
            p.sheet = b.monodromy.apply_inverse(p.sheet);
            p.slit_side = SlitSide::below;
            return p;
        }
    }
    return p;
}

} // namespace

DistanceResult distance(const SheetComplex& s, const SurfacePoint& p0,
                        const SurfacePoint& q0, const Tolerances& tol) {
    SurfacePoint p = make_point(s, p0.sheet, p0.w, p0.slit_side, tol);
    SurfacePoint q = make_point(s, q0.sheet, q0.w, q0.slit_side, tol);
    if (points_identical(s, p, q, tol)) return DistanceResult{0.0, {p0}};
    p = canonical_below(s, p, tol);
    q = canonical_below(s, q, tol);

    auto rams = ramification_points(s);
    std::size_t n = 2 + rams.size();
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
    auto add_edge = [&](std::size_t i, std::size_t j, double w) {
        adj[i].push_back({j, w});
        adj[j].push_back({i, w});
    };

    if (std::abs(p.w - q.w) > tol.branch && segment_connects(s, p, q, tol))
        add_edge(0, 1, std::abs(p.w - q.w));
    for (std::size_t k = 0; k < rams.size(); ++k) {
        if (segment_reaches_apex(s, p, rams[k], tol)) add_edge(0, 2 + k, std::abs(p.w - rams[k].w));
        if (segment_reaches_apex(s, q, rams[k], tol)) add_edge(1, 2 + k, std::abs(q.w - rams[k].w));
        for (std::size_t l = k + 1; l < rams.size(); ++l) {
            if (std::abs(rams[k].w - rams[l].w) <= tol.branch) continue; // same position
            if (apexes_connect(s, rams[k], rams[l], tol))
                add_edge(2 + k, 2 + l, std::abs(rams[k].w - rams[l].w));
        }
    }

    std::vector<double> dist(n, kInf);
    std::vector<std::size_t> prev(n, n);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[0] = 0.0;
    heap.push({0.0, 0});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        if (u == 1) break;
        for (auto [v, w] : adj[u]) {
            if (d + w < dist[v]) {
                dist[v] = d + w;
                prev[v] = u;
                heap.push({d + w, v});
            }
        }
    }
    if (!std::isfinite(dist[1]))
        throw_invalid("the two points are not connected on this surface");

    DistanceResult out;
    out.value = dist[1];
    std::vector<std::size_t> chain;
    for (std::size_t u = 1; u != n; u = prev[u]) {
        chain.push_back(u);
        if (u == 0) break;
    }
    std::reverse(chain.begin(), chain.end());
    for (std::size_t u : chain) {
        if (u == 0) out.witness.push_back(p0);
        else if (u == 1) out.witness.push_back(q0);
        else out.witness.push_back(rams[u - 2]);
    }

    if (auto closed = single_cone_closed_form(s, p, q)) {
        double scale = 1.0 + std::abs(p.w) + std::abs(q.w);
        if (std::abs(*closed - out.value) > std::max(tol.dist, 1e-12 * scale)) {
            std::ostringstream os;
            os << "distance cross-check failed: graph " << out.value << " vs closed form "
               << *closed;
            throw_numeric(os.str());
        }
    }
    return out;
}

// --- Compact regions ---

Polygon annulus_sector(Complex center, double ang_lo, double ang_hi, double r_in,
                       double r_out, int arc_segments) {
    Polygon poly;
    for (int k = 0; k <= arc_segments; ++k) {
        double a = ang_lo + (ang_hi - ang_lo) * k / arc_segments;
        poly.vertices.push_back(center + std::polar(r_out, a));
    }
    for (int k = arc_segments; k >= 0; --k) {
        double a = ang_lo + (ang_hi - ang_lo) * k / arc_segments;
        poly.vertices.push_back(center + std::polar(r_in, a));
    }
    return poly;
}

namespace {

// A contact segment lying on a slit ray the sheet is moved by is not surface
// adjacency: the slit separates the two sides there.
bool contact_blocked_by_slit(const SheetComplex& s, int sheet, Complex a, Complex b,
                             const Tolerances& tol) {
    for (const auto& br : s.branches()) {
        if (br.monodromy.fixes(sheet)) continue;
        Complex u = std::polar(1.0, br.slit_angle);
        Complex ra = (a - br.position) / u;
        Complex rb = (b - br.position) / u;
        if (std::abs(ra.imag()) > tol.slit || std::abs(rb.imag()) > tol.slit) continue;
        if (std::max(ra.real(), rb.real()) <= tol.slit) continue; // behind the apex
        return true;
    }
    return false;
}

} // namespace

std::vector<SheetContact> same_sheet_contacts(const SheetComplex& s,
                                              const CompactRegion& region,
                                              const Tolerances& tol) {
    std::vector<SheetContact> out;
    for (std::size_t i = 0; i < region.pieces.size(); ++i) {
        for (std::size_t j = i + 1; j < region.pieces.size(); ++j) {
            if (region.pieces[i].sheet != region.pieces[j].sheet) continue;
            const auto& a = region.pieces[i].polygon;
            const auto& b = region.pieces[j].polygon;
            double scale = std::max(a.diameter(), b.diameter());
            double eps = std::max(tol.slit, 1e-12 * scale);
            std::optional<SheetContact> found;
            for (std::size_t ei = 0; ei < a.size() && !found; ++ei) {
                Complex a0 = a.vertices[ei], a1 = a.vertices[(ei + 1) % a.size()];
                for (std::size_t ej = 0; ej < b.size() && !found; ++ej) {
                    Complex b0 = b.vertices[ej], b1 = b.vertices[(ej + 1) % b.size()];
                    if (!segment_overlap_midpoint(a0, a1, b0, b1, eps)) continue;
                    Complex dir = (a1 - a0) / std::abs(a1 - a0);
                    auto param = [&](Complex p) { return ((p - a0) / dir).real(); };
                    double lo = std::max(0.0, std::min(param(b0), param(b1)));
                    double hi = std::min(std::abs(a1 - a0), std::max(param(b0), param(b1)));
                    Complex ca = a0 + dir * lo, cb = a0 + dir * hi;
                    if (contact_blocked_by_slit(s, region.pieces[i].sheet, ca, cb, tol))
                        continue;
                    found = SheetContact{(int)i, (int)j, ca, cb};
                }
            }
            if (!found && polygons_overlap(a, b, tol.slit)) {
                // Positive-area overlap on one sheet: adjacency with no edge;
                // the degenerate segment marks it for the embedding checker.
                Complex pt = interior_point(a);
                found = SheetContact{(int)i, (int)j, pt, pt};
            }
            if (found) out.push_back(*found);
        }
    }
    return out;
}

CompactRegion make_compact_region(const SheetComplex& s, SurfacePoint basepoint,
                                  std::vector<RegionPiece> pieces,
                                  std::vector<RegionGluing> gluings, const Tolerances& tol) {
    if (pieces.empty()) throw_invalid("compact region needs at least one piece");
    for (const auto& piece : pieces) {
        if (!s.domain().contains(piece.sheet)) throw_invalid("piece sheet outside the domain");
        if (piece.polygon.size() < 3) throw_invalid("piece polygon needs >= 3 vertices");
        for (const auto& b : s.branches()) {
            if (point_strictly_inside(piece.polygon, b.position, tol.branch))
                throw_invalid("piece interior contains a branch position");
            if (ray_crosses_interior(piece.polygon, b.position, b.slit_angle, tol.slit))
                throw_invalid("piece interior crosses a slit ray");
        }
    }
    for (const auto& g : gluings) {
        if (g.piece_from < 0 || g.piece_from >= (int)pieces.size() || g.piece_to < 0 ||
            g.piece_to >= (int)pieces.size())
            throw_invalid("gluing references a piece outside the region");
        if (g.branch < 0 || g.branch >= (int)s.branches().size())
            throw_invalid("gluing references an unknown branch");
        const auto& b = s.branches()[(std::size_t)g.branch];
        if (point_ray_distance(g.edge_a, b.position, b.slit_angle) > tol.slit ||
            point_ray_distance(g.edge_b, b.position, b.slit_angle) > tol.slit)
            throw_invalid("gluing edge does not lie on its branch's slit ray");
        if (b.monodromy.apply(pieces[(std::size_t)g.piece_from].sheet) !=
            pieces[(std::size_t)g.piece_to].sheet)
            throw_invalid("gluing is not realized by the branch monodromy");
    }

    CompactRegion region{basepoint, std::move(pieces), std::move(gluings)};

    int base_piece = -1;
    for (std::size_t i = 0; i < region.pieces.size(); ++i) {
        if (region.pieces[i].sheet != basepoint.sheet) continue;
        if (point_in_closed_polygon(region.pieces[i].polygon, basepoint.w, 10 * tol.slit)) {
            base_piece = (int)i;
            break;
        }
    }
    if (base_piece < 0) throw_invalid("basepoint is not inside any piece");

    std::vector<std::set<int>> adj(region.pieces.size());
    for (const auto& g : region.gluings) {
        adj[(std::size_t)g.piece_from].insert(g.piece_to);
        adj[(std::size_t)g.piece_to].insert(g.piece_from);
    }
    for (const auto& c : same_sheet_contacts(s, region, tol)) {
        adj[(std::size_t)c.i].insert(c.j);
        adj[(std::size_t)c.j].insert(c.i);
    }
    std::vector<bool> seen(region.pieces.size(), false);
    std::vector<int> stack{base_piece};
    seen[(std::size_t)base_piece] = true;
    std::size_t reached = 0;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        ++reached;
        for (int v : adj[(std::size_t)u])
            if (!seen[(std::size_t)v]) {
                seen[(std::size_t)v] = true;
                stack.push_back(v);
            }
    }
    if (reached != region.pieces.size())
        throw_invalid("compact region is disconnected");
    return region;
}

CompactRegion truncated_annulus_region(const SheetComplex& s, int sheet_lo, int sheet_hi,
                                       double eps, double r, const SurfacePoint& basepoint,
                                       const Tolerances& tol) {
    if (s.branches().size() != 1)
        throw_unsupported("truncated annulus regions need a single-branch surface");
    if (!(eps > 0) || !(eps < r)) throw_invalid("need 0 < eps < r");
    if (sheet_lo > sheet_hi) throw_invalid("empty sheet interval");
    const auto& b = s.branches().front();
    double theta = b.slit_angle;

    int count = sheet_hi - sheet_lo + 1;
    bool wrap = false;
    std::vector<int> sheets((std::size_t)count);
    if (s.domain().is_finite()) {
        int n = s.domain().count();
        if (count > n) throw_invalid("sheet interval longer than the domain");
        for (int i = 0; i < count; ++i) sheets[(std::size_t)i] = (((sheet_lo + i) % n) + n) % n;
        wrap = (count == n);
    } else {
        for (int i = 0; i < count; ++i) sheets[(std::size_t)i] = sheet_lo + i;
    }
    for (int i = 0; i + 1 < count; ++i)
        if (b.monodromy.apply(sheets[(std::size_t)i]) != sheets[(std::size_t)i + 1])
            throw_invalid("sheet interval is not consecutively glued (disconnected region)");
    if (wrap && b.monodromy.apply(sheets.back()) != sheets.front())
        throw_invalid("cyclic window is not closed by the monodromy");

    double collar = tol.slit / eps; // angular collar, transverse width >= tol.slit
    std::vector<RegionPiece> pieces;
    std::vector<RegionGluing> gluings;
    for (int i = 0; i < count; ++i) {
        bool glued_above = wrap || i > 0;          // receives from the previous sheet
        bool glued_below = wrap || i + 1 < count;  // exits to the next sheet
        double lo = theta - 2.0 * M_PI + (glued_above ? 0.0 : collar);
        double hi = theta - (glued_below ? 0.0 : collar);
        pieces.push_back({sheets[(std::size_t)i], annulus_sector(b.position, lo, hi, eps, r)});
    }
    Complex ea = b.position + std::polar(eps, theta);
    Complex eb = b.position + std::polar(r, theta);
    for (int i = 0; i + 1 < count; ++i) gluings.push_back({i, i + 1, 0, ea, eb});
    if (wrap && count > 1) gluings.push_back({count - 1, 0, 0, ea, eb});

    return make_compact_region(s, basepoint, std::move(pieces), std::move(gluings), tol);
}

} // namespace logrs
