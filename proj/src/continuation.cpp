#include "logrs/continuation.hpp"

#include "logrs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace logrs {

Polyline make_polyline(std::vector<Complex> vertices, const Tolerances& tol) {
    if (vertices.size() < 2) throw_invalid("polyline needs at least 2 vertices");
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
        if (std::abs(vertices[i + 1] - vertices[i]) <= tol.branch)
            throw_invalid("consecutive polyline vertices coincide");
    return Polyline{std::move(vertices)};
}

namespace detail {

namespace {

struct RawEvent {
    double t;
    int branch;
    SegmentEvent::Kind kind;
    bool ccw;
};

} // namespace

SegmentLift lift_segment(const SheetComplex& s, Complex a, Complex b, int start_sheet,
                         std::optional<std::pair<int, int>> start_ray_side,
                         const LiftOptions& opt, const Tolerances& tol) {
    const double slit_eps = tol.slit;
    const double apex_eps = tol.branch;
    Complex d = b - a;

    std::vector<RawEvent> events;
    for (std::size_t bi = 0; bi < s.branches().size(); ++bi) {
        const auto& br = s.branches()[bi];
        Complex u = std::polar(1.0, br.slit_angle);
        Complex za = (a - br.position) / u;
        Complex zb = (b - br.position) / u;
        double ya = za.imag(), yb = zb.imag();
        double xa = za.real(), xb = zb.real();

        // Passage near the branch position itself.
        double len2 = std::norm(d);
        double t_apex = len2 > 0 ? std::clamp(
            ((br.position - a).real() * d.real() + (br.position - a).imag() * d.imag()) / len2,
            0.0, 1.0) : 0.0;
        bool near_apex = std::abs(a + t_apex * d - br.position) <= apex_eps;
        bool skip_apex = ((int)bi == opt.skip_apex_at_start && t_apex < 0.5) ||
                         ((int)bi == opt.skip_apex_at_end && t_apex >= 0.5);
        if (near_apex && !skip_apex)
            events.push_back({t_apex, (int)bi, SegmentEvent::Kind::apex, false});

        bool start_flagged_here = start_ray_side && start_ray_side->first == (int)bi;

        if (std::abs(ya) <= slit_eps && std::abs(yb) <= slit_eps) {
            // Segment collinear with the ray line.
            if (std::max(xa, xb) <= apex_eps) continue; // entirely behind the apex
            if (start_flagged_here) continue;           // slides along the known side
            if ((int)bi == opt.skip_apex_at_start || (int)bi == opt.skip_apex_at_end)
                continue; // departure/arrival straight along its own slit line
            if (opt.allow_apex_pass) {
                // Only legal if the apex is passed on a sheet the branch
                // fixes; the apex event above decides that. If no apex event
                // registered, the side is unknowable: report blocked.
                if (!near_apex || skip_apex) {
                    SegmentLift out;
                    out.end_sheet = start_sheet;
                    out.blocked = true;
                    out.blocking_branch = (int)bi;
                    return out;
                }
                continue;
            }
            throw_invalid("path segment runs along a slit ray; perturb the path");
        }

        double ya_eff = ya;
        if (std::abs(ya) <= slit_eps) {
            if (xa > apex_eps) {
                if (!start_flagged_here) {
                    // Start point sits on this ray without a side flag; the
                    // caller validates vertices, so this is a start-of-path
                    // condition only.
                    throw_invalid("segment starts on a slit ray without a side flag");
                }
                ya_eff = start_ray_side->second > 0 ? slit_eps * 2 : -slit_eps * 2;
            } else {
                continue; // starts at/behind the apex on the ray line; it leaves immediately
            }
        }
        if (std::abs(yb) <= slit_eps) continue; // arrival onto the ray; no crossing here

        if ((ya_eff > 0) == (yb > 0)) continue;
        double t = ya_eff / (ya_eff - yb);
        double x = xa + t * (xb - xa);
        if (x > apex_eps)
            events.push_back({std::clamp(t, 0.0, 1.0), (int)bi,
                              SegmentEvent::Kind::crossing, ya_eff < 0});
        // |x| <= apex_eps is covered by the apex event; x < 0 misses the slit.
    }

    std::sort(events.begin(), events.end(), [](const RawEvent& x, const RawEvent& y) {
        return x.t < y.t;
    });
    for (std::size_t i = 0; i + 1 < events.size(); ++i) {
        if (events[i].kind == SegmentEvent::Kind::crossing &&
            events[i + 1].kind == SegmentEvent::Kind::crossing &&
            events[i].branch != events[i + 1].branch &&
            events[i + 1].t - events[i].t <= 1e-12)
            throw_invalid("two slits crossed at the same point; perturb the path");
    }

    SegmentLift out;
    int sheet = start_sheet;
    for (const RawEvent& ev : events) {
        if (ev.kind == SegmentEvent::Kind::apex) {
            const auto& m = s.branches()[(std::size_t)ev.branch].monodromy;
            if (m.fixes(sheet)) continue; // regular point over the branch position
            if (!opt.allow_apex_pass) {
                std::ostringstream os;
                os << "path passes within tolerance of the branch position at ("
                   << s.branches()[(std::size_t)ev.branch].position.real() << ", "
                   << s.branches()[(std::size_t)ev.branch].position.imag() << ")";
                throw_ramification(os.str());
            }
            out.end_sheet = sheet;
            out.blocked = true;
            out.blocking_branch = ev.branch;
            return out;
        }
        const auto& m = s.branches()[(std::size_t)ev.branch].monodromy;
        int next = ev.ccw ? m.apply(sheet) : m.apply_inverse(sheet);
        SegmentEvent applied;
        applied.t = ev.t;
        applied.branch = ev.branch;
        applied.kind = ev.kind;
        applied.ccw = ev.ccw;
        applied.where = a + ev.t * d;
        out.applied.push_back(applied);
        sheet = next;
    }
    out.end_sheet = sheet;
    return out;
}

} // namespace detail

namespace {

// Which ray (if any) the point sits on, with the side implied by sign of the
// rotated imaginary part. Returns (branch, side) with side +1 = above.
std::optional<std::pair<int, int>> ray_side_of(const SheetComplex& s, Complex w,
                                               std::optional<SlitSide> flag,
                                               const Tolerances& tol) {
    for (std::size_t i = 0; i < s.branches().size(); ++i) {
        const auto& b = s.branches()[i];
        if (point_ray_distance(w, b.position, b.slit_angle) < tol.slit) {
            if (!flag) return std::nullopt;
            return std::make_pair((int)i, *flag == SlitSide::above ? 1 : -1);
        }
    }
    return std::nullopt;
}

} // namespace

LiftedPath lift_path(const SheetComplex& s, const SurfacePoint& start,
                     const Polyline& path, const Tolerances& tol) {
    SurfacePoint st = make_point(s, start.sheet, start.w, start.slit_side, tol);
    if (path.vertices.size() < 2) throw_invalid("polyline needs at least 2 vertices");
    if (std::abs(st.w - path.vertices.front()) > tol.slit)
        throw_invalid("path does not begin at the start point");

    for (std::size_t j = 0; j < path.vertices.size(); ++j) {
        Complex v = path.vertices[j];
        for (const auto& b : s.branches()) {
            if (std::abs(v - b.position) <= tol.branch)
                throw_ramification("path vertex coincides with a branch position");
            bool on_ray = point_ray_distance(v, b.position, b.slit_angle) < tol.slit;
            if (on_ray && j > 0 && j + 1 < path.vertices.size())
                throw_invalid("interior path vertex lies on a slit ray; perturb the path");
        }
        if (j + 1 < path.vertices.size()) {
            Complex w = path.vertices[j + 1];
            for (const auto& b : s.branches())
                if (point_segment_distance(b.position, v, w) <= tol.branch)
                    throw_ramification("path passes within tolerance of a branch position");
        }
    }

    LiftedPath out;
    out.start = st;
    int sheet = st.sheet;
    auto side_state = ray_side_of(s, st.w, st.slit_side, tol);

    detail::LiftOptions opt; // strict mode
    std::optional<SlitSide> end_flag;
    for (std::size_t j = 0; j + 1 < path.vertices.size(); ++j) {
        Complex a = path.vertices[j], b = path.vertices[j + 1];
        auto res = detail::lift_segment(s, a, b, sheet, side_state, opt, tol);
        Complex prev = a;
        for (const auto& ev : res.applied) {
            if (std::abs(ev.where - prev) > 0)
                out.steps.push_back({prev, ev.where, sheet});
            const auto& m = s.branches()[(std::size_t)ev.branch].monodromy;
            sheet = ev.ccw ? m.apply(sheet) : m.apply_inverse(sheet);
            prev = ev.where;
        }
        if (std::abs(b - prev) > 0 || out.steps.empty())
            out.steps.push_back({prev, b, sheet});

        // Side bookkeeping when the segment terminates on a ray.
        side_state.reset();
        end_flag.reset();
        for (std::size_t bi = 0; bi < s.branches().size(); ++bi) {
            const auto& br = s.branches()[bi];
            if (point_ray_distance(b, br.position, br.slit_angle) < tol.slit) {
                Complex u = std::polar(1.0, br.slit_angle);
                double ya = ((a - br.position) / u).imag();
                int side = ya > 0 ? 1 : -1;
                side_state = std::make_pair((int)bi, side);
                end_flag = side > 0 ? SlitSide::above : SlitSide::below;
                break;
            }
        }
    }
    out.end = make_point(s, sheet, path.vertices.back(), end_flag, tol);
    return out;
}

LoopOrder loop_order(const SheetComplex& s, const RamificationPoint& r,
                     double radius, int max_laps, const Tolerances& tol) {
    if (radius <= 0) throw_invalid("loop radius must be positive");
    if (max_laps < 1) throw_invalid("max_laps must be >= 1");
    if (r.branch_index < 0 || r.branch_index >= (int)s.branches().size())
        throw_invalid("ramification point does not belong to this surface");
    const auto& own = s.branches()[(std::size_t)r.branch_index];
    if (std::abs(own.position - r.w) > tol.slit)
        throw_invalid("ramification point position does not match its branch");
    if (radius <= 8 * tol.branch) throw_invalid("loop radius too small");

    for (std::size_t bi = 0; bi < s.branches().size(); ++bi) {
        if ((int)bi == r.branch_index) continue;
        const auto& other = s.branches()[bi];
        if (std::abs(other.position - r.w) <= radius)
            throw_invalid("loop radius too large: another branch lies inside the disc");
        if (point_ray_distance(r.w, other.position, other.slit_angle) <= radius)
            throw_invalid("loop radius too large: another branch's slit crosses the disc");
    }

    const int m = 16;
    std::vector<Complex> verts((std::size_t)m + 1);
    for (int k = 0; k <= m; ++k) {
        double ang = own.slit_angle + M_PI + (k % m + 0.5) * 2.0 * M_PI / m;
        verts[(std::size_t)k] = r.w + std::polar(radius, ang);
    }
    verts.back() = verts.front();
    Polyline loop{verts};

    int start_sheet = r.order.is_infinite() ? r.orbit_residue : r.cycle.front();
    int sheet = start_sheet;
    for (int lap = 1; lap <= max_laps; ++lap) {
        auto lifted = lift_path(s, SurfacePoint{sheet, verts.front(), {}}, loop, tol);
        sheet = lifted.end.sheet;
        if (sheet == start_sheet) return LoopOrder{true, lap};
    }
    return LoopOrder{false, max_laps};
}

Complex continue_inverse(const PolynomialSpec& p, const Polyline& w_path,
                         Complex z_start, const Tolerances& tol) {
    if (w_path.vertices.size() < 2) throw_invalid("w-path needs at least 2 vertices");
    Complex w0 = w_path.vertices.front();
    double scale0 = 1.0 + std::abs(w0);
    if (std::abs(p.eval(z_start) - w0) > std::max(100 * tol.root, 1e-10) * scale0)
        throw_invalid("z_start is not a preimage of the first path vertex");

    // Critical points and values, for step control and the clearance check.
    auto droots = polynomial_roots(derivative_coefficients(p.coefficients), tol.root);
    double rscale = 1.0;
    for (Complex z : droots) rscale = std::max(rscale, std::abs(z));
    auto crit = cluster_roots(derivative_coefficients(p.coefficients), droots, 6e-3 * rscale);
    std::vector<Complex> crit_pts, crit_vals;
    for (const auto& c : crit) {
        crit_pts.push_back(c.value);
        crit_vals.push_back(p.eval(c.value));
    }

    for (std::size_t j = 0; j + 1 < w_path.vertices.size(); ++j)
        for (Complex v : crit_vals)
            if (point_segment_distance(v, w_path.vertices[j], w_path.vertices[j + 1]) <= tol.branch)
                throw_invalid("w-path passes within tolerance of a critical value");

    auto dist_to = [](Complex z, const std::vector<Complex>& pts) {
        double best = std::numeric_limits<double>::infinity();
        for (Complex c : pts) best = std::min(best, std::abs(z - c));
        return best;
    };

    Complex z = z_start;
    for (std::size_t j = 0; j + 1 < w_path.vertices.size(); ++j) {
        Complex wa = w_path.vertices[j], wb = w_path.vertices[j + 1];
        double seg_len = std::abs(wb - wa);
        double t = 0.0, h = 1.0;
        while (t < 1.0) {
            Complex w_cur = wa + t * (wb - wa);
            double d_cv = dist_to(w_cur, crit_vals);
            double h_cap = std::min(1.0 - t, 0.5 * d_cv / seg_len);
            h = std::min(h, std::max(h_cap, 1e-15));
            if (h < 1e-14) throw_numeric("continuation step underflow near a critical value");
            Complex target = wa + (t + h) * (wb - wa);

            Complex zn = z;
            bool converged = false;
            for (int it = 0; it < 20; ++it) {
                Complex f = p.eval(zn) - target;
                if (std::abs(f) <= tol.root * (1.0 + std::abs(target))) {
                    converged = true;
                    break;
                }
                Complex df = p.eval_derivative(zn);
                if (std::abs(df) < 1e-300) break;
                zn -= f / df;
            }
            double guard = dist_to(z, crit_pts);
            if (converged && std::abs(zn - z) <= 0.8 * guard) {
                z = zn;
                t += h;
                h = std::min(1.0 - t, h * 1.7);
                if (h <= 0.0) break;
            } else {
                h /= 2;
                if (h < 1e-14)
                    throw_numeric("continuation step underflow near a critical value");
            }
        }
    }
    return z;
}

} // namespace logrs
