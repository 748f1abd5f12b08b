#include "logrs/caratheodory.hpp"

#include "logrs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

namespace logrs {

const char* embed_failure_name(EmbedFailure f) {
    switch (f) {
    case EmbedFailure::none: return "none";
    case EmbedFailure::ramification_obstruction: return "ramification-obstruction";
    case EmbedFailure::gluing_mismatch: return "gluing-mismatch";
    case EmbedFailure::injectivity_collision: return "injectivity-collision";
    case EmbedFailure::slit_intersection: return "slit-intersection";
    }
    return "unknown";
}

namespace {

Polygon translated(const Polygon& p, Complex t) {
    Polygon out = p;
    for (Complex& v : out.vertices) v += t;
    return out;
}

// The target branch whose slit ray carries the (translated) edge, if any.
// Fails with slit-intersection semantics when the edge straddles the apex.
struct EdgeOnRay {
    int branch = -1;
    bool straddles_apex = false;
};

EdgeOnRay edge_on_target_ray(const SheetComplex& target, Complex a, Complex b,
                             const Tolerances& tol) {
    for (std::size_t bi = 0; bi < target.branches().size(); ++bi) {
        const auto& br = target.branches()[bi];
        Complex u = std::polar(1.0, br.slit_angle);
        Complex ra = (a - br.position) / u;
        Complex rb = (b - br.position) / u;
        if (std::abs(ra.imag()) > tol.slit || std::abs(rb.imag()) > tol.slit) continue;
        if (ra.real() < -tol.slit && rb.real() < -tol.slit) continue; // behind the apex
        EdgeOnRay out;
        out.branch = (int)bi;
        out.straddles_apex = (std::min(ra.real(), rb.real()) < -tol.slit);
        return out;
    }
    return {};
}

int base_piece_index(const CompactRegion& K, const Tolerances& tol) {
    for (std::size_t i = 0; i < K.pieces.size(); ++i) {
        if (K.pieces[i].sheet != K.basepoint.sheet) continue;
        if (point_in_closed_polygon(K.pieces[i].polygon, K.basepoint.w, 10 * tol.slit))
            return (int)i;
    }
    throw_invalid("region basepoint is not inside any piece");
}

} // namespace

EmbeddingResult embed_check(const SheetComplex& source, const CompactRegion& K,
                            const SheetComplex& target, const SurfacePoint& z_n,
                            const Tolerances& tol) {
    SurfacePoint zn = make_point(target, z_n.sheet, z_n.w, z_n.slit_side, tol);
    EmbeddingResult res;
    res.translation = zn.w - K.basepoint.w;
    const Complex T = res.translation;

    auto fail = [&](EmbedFailure why, const std::string& detail) {
        res.found = false;
        res.failure_reason = why;
        res.detail = detail;
        return res;
    };

    // Translated pieces must be clear of target branch positions and must not
    // be crossed by target slits through their interiors.
    for (std::size_t i = 0; i < K.pieces.size(); ++i) {
        Polygon poly = translated(K.pieces[i].polygon, T);
        for (std::size_t bi = 0; bi < target.branches().size(); ++bi) {
            const auto& br = target.branches()[bi];
            if (point_strictly_inside(poly, br.position, tol.branch) ||
                boundary_distance(poly, br.position) <= tol.branch) {
                std::ostringstream os;
                os << "piece " << i << " meets the branch position of target branch " << bi;
                return fail(EmbedFailure::ramification_obstruction, os.str());
            }
            if (ray_crosses_interior(poly, br.position, br.slit_angle, tol.slit)) {
                std::ostringstream os;
                os << "target slit " << bi << " crosses the interior of piece " << i;
                return fail(EmbedFailure::slit_intersection, os.str());
            }
        }
    }

    // Adjacency with sheet transitions in the target.
    struct Edge {
        int to;
        std::function<int(int)> forward; // target sheet across the edge
    };
    std::vector<std::vector<Edge>> adj(K.pieces.size());

    auto add_pair = [&](int i, int j, std::function<int(int)> fwd, std::function<int(int)> bwd) {
        adj[(std::size_t)i].push_back({j, std::move(fwd)});
        adj[(std::size_t)j].push_back({i, std::move(bwd)});
    };

    for (const auto& g : K.gluings) {
        EdgeOnRay hit = edge_on_target_ray(target, g.edge_a + T, g.edge_b + T, tol);
        if (hit.branch >= 0 && hit.straddles_apex) {
            std::ostringstream os;
            os << "gluing edge between pieces " << g.piece_from << " and " << g.piece_to
               << " straddles the apex of target branch " << hit.branch;
            return fail(EmbedFailure::slit_intersection, os.str());
        }
        if (hit.branch < 0) {
            auto id = [](int s) { return s; };
            add_pair(g.piece_from, g.piece_to, id, id);
        } else {
            const Monodromy& m = target.branches()[(std::size_t)hit.branch].monodromy;
            // The declared orientation is a counterclockwise crossing.
            add_pair(g.piece_from, g.piece_to, [&m](int s) { return m.apply(s); },
                     [&m](int s) { return m.apply_inverse(s); });
        }
    }

    for (const auto& c : same_sheet_contacts(source, K, tol)) {
        if (std::abs(c.b - c.a) <= tol.slit) {
            // Positive-area overlap on one source sheet: forced identity.
            auto id = [](int s) { return s; };
            add_pair(c.i, c.j, id, id);
            continue;
        }
        EdgeOnRay hit = edge_on_target_ray(target, c.a + T, c.b + T, tol);
        if (hit.branch >= 0 && hit.straddles_apex) {
            std::ostringstream os;
            os << "contact edge between pieces " << c.i << " and " << c.j
               << " straddles the apex of target branch " << hit.branch;
            return fail(EmbedFailure::slit_intersection, os.str());
        }
        if (hit.branch < 0) {
            auto id = [](int s) { return s; };
            add_pair(c.i, c.j, id, id);
            continue;
        }
        // Which side of the target ray piece c.i sits on decides the
        // crossing orientation i -> j.
        const auto& br = target.branches()[(std::size_t)hit.branch];
        Complex u = std::polar(1.0, br.slit_angle);
        Complex mid = (c.a + c.b) / 2.0;
        Complex dir = (c.b - c.a) / std::abs(c.b - c.a);
        Complex normal = Complex(0, 1) * dir;
        double len = std::abs(c.b - c.a);
        int side_i = 0;
        for (double delta : {1e-3 * len, 1e-2 * len, 0.1 * len}) {
            bool plus = point_strictly_inside(K.pieces[(std::size_t)c.i].polygon,
                                              mid + delta * normal, delta * 0.25);
            bool minus = point_strictly_inside(K.pieces[(std::size_t)c.i].polygon,
                                               mid - delta * normal, delta * 0.25);
            if (plus != minus) {
                Complex probe = (plus ? mid + delta * normal : mid - delta * normal) + T;
                side_i = ((probe - br.position) / u).imag() > 0 ? 1 : -1;
                break;
            }
        }
        if (side_i == 0) {
            std::ostringstream os;
            os << "cannot orient the contact between pieces " << c.i << " and " << c.j
               << " across target slit " << hit.branch;
            return fail(EmbedFailure::gluing_mismatch, os.str());
        }
        const Monodromy& m = target.branches()[(std::size_t)hit.branch].monodromy;
        if (side_i < 0) // below -> above is the counterclockwise crossing
            add_pair(c.i, c.j, [&m](int s) { return m.apply(s); },
                     [&m](int s) { return m.apply_inverse(s); });
        else
            add_pair(c.i, c.j, [&m](int s) { return m.apply_inverse(s); },
                     [&m](int s) { return m.apply(s); });
    }

    // Breadth-first sheet assignment from the basepoint piece; ties resolved
    // by piece index via the deque order.
    int kb = base_piece_index(K, tol);
    std::map<int, int> assign;
    assign[kb] = zn.sheet;
    std::deque<int> queue{kb};
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (const auto& e : adj[(std::size_t)u]) {
            int s = e.forward(assign[u]);
            auto it = assign.find(e.to);
            if (it == assign.end()) {
                assign[e.to] = s;
                queue.push_back(e.to);
            } else if (it->second != s) {
                std::ostringstream os;
                os << "pieces " << u << " -> " << e.to << " demand target sheet " << s
                   << " but " << it->second << " was already assigned";
                return fail(EmbedFailure::gluing_mismatch, os.str());
            }
        }
    }
    if ((int)assign.size() != (int)K.pieces.size())
        return fail(EmbedFailure::gluing_mismatch, "region is not connected");
    for (auto [piece, sheet] : assign)
        if (!target.domain().contains(sheet)) {
            std::ostringstream os;
            os << "piece " << piece << " would land on sheet " << sheet
               << " outside the target domain";
            return fail(EmbedFailure::gluing_mismatch, os.str());
        }

    // Injectivity across distinct source sheets; consistency within one.
    for (std::size_t i = 0; i < K.pieces.size(); ++i) {
        for (std::size_t j = i + 1; j < K.pieces.size(); ++j) {
            bool same_target = assign[(int)i] == assign[(int)j];
            bool same_source = K.pieces[i].sheet == K.pieces[j].sheet;
            if (same_source == same_target) continue;
            if (!polygons_overlap(K.pieces[i].polygon, K.pieces[j].polygon, tol.slit))
                continue;
            std::ostringstream os;
            if (!same_source) {
                os << "pieces " << i << " (sheet " << K.pieces[i].sheet << ") and " << j
                   << " (sheet " << K.pieces[j].sheet << ") collide on target sheet "
                   << assign[(int)i];
                return fail(EmbedFailure::injectivity_collision, os.str());
            }
            os << "pieces " << i << " and " << j << " share source sheet "
               << K.pieces[i].sheet << " but split onto target sheets " << assign[(int)i]
               << " and " << assign[(int)j];
            return fail(EmbedFailure::gluing_mismatch, os.str());
        }
    }

    res.found = true;
    res.sheet_assignment = assign;
    res.failure_reason = EmbedFailure::none;

    // Isometry spot check: distances from the basepoint transfer.
    int checked = 0;
    for (std::size_t i = 0; i < K.pieces.size() && checked < 6; ++i) {
        Complex rep = interior_point(K.pieces[i].polygon);
        SurfacePoint sp, tp;
        try {
            sp = make_point(source, K.pieces[i].sheet, rep, {}, tol);
            tp = make_point(target, assign[(int)i], rep + T, {}, tol);
        } catch (const Error&) {
            continue; // representative too close to a slit; skip the sample
        }
        double ds = distance(source, K.basepoint, sp, tol).value;
        double dt = distance(target, zn, tp, tol).value;
        double scale = 1.0 + std::abs(rep - K.basepoint.w);
        if (std::abs(ds - dt) > std::max(10 * tol.dist, 1e-9 * scale)) {
            std::ostringstream os;
            os << "embedding accepted structurally but distance to piece " << i
               << " changes: source " << ds << " vs target " << dt;
            throw_numeric(os.str());
        }
        ++checked;
    }
    return res;
}

// --- Families ---

SurfaceFamily nth_root_family(Complex base) {
    SurfaceFamily f;
    f.kind = "nth-root-to-log";
    f.member = [base](int n) {
        if (n < 1) throw_invalid("family index must be >= 1");
        SheetComplex s = (n == 1) ? make_plane() : make_nth_root(n);
        SurfacePoint z = make_point(s, 0, base);
        return std::make_pair(std::move(s), z);
    };
    return f;
}

SurfaceFamily scaled_recentred_family(const SheetComplex& s, const SurfacePoint& z0) {
    SurfaceFamily f;
    f.kind = "scaled-recentred";
    SurfacePoint base = z0;
    SheetComplex surface = s;
    f.member = [surface, base](int n) {
        if (n < 1) throw_invalid("family index must be >= 1");
        Complex lambda((double)n, 0.0);
        Complex shift = -lambda * base.w;
        SheetComplex sn = translate(scale(surface, lambda), shift);
        SurfacePoint zn = transport(base, lambda, shift);
        return std::make_pair(std::move(sn), zn);
    };
    return f;
}

SurfaceFamily constant_family(const SheetComplex& s, const SurfacePoint& z0) {
    SurfaceFamily f;
    f.kind = "constant";
    SheetComplex surface = s;
    SurfacePoint base = z0;
    f.member = [surface, base](int) { return std::make_pair(surface, base); };
    return f;
}

ThresholdResult convergence_threshold(const SheetComplex& source, const CompactRegion& K,
                                      const SurfaceFamily& family, int n_max,
                                      const Tolerances& tol) {
    if (n_max < 1) throw_invalid("n_max must be >= 1");
    ThresholdResult out;
    int largest_failing = 0;
    for (int n = 1; n <= n_max; ++n) {
        auto [surface, zn] = family.member(n);
        EmbeddingResult r = embed_check(source, K, surface, zn, tol);
        out.table.push_back({n, r.found, r.failure_reason});
        if (!r.found) largest_failing = n;
    }
    if (largest_failing == n_max) {
        std::ostringstream os;
        os << "no convergence threshold up to n_max = " << n_max << " (n = " << n_max
           << " still fails)";
        throw ThresholdNotFound(largest_failing, os.str());
    }
    out.threshold = largest_failing + 1;
    return out;
}

CompactRegion canonical_compact(const SheetComplex& s, const SurfacePoint& z0, double r,
                                const std::vector<double>& extra_cut_angles,
                                const Tolerances& tol) {
    SurfacePoint base = make_point(s, z0.sheet, z0.w, z0.slit_side, tol);
    if (s.branches().empty()) {
        Polygon disc;
        for (int k = 0; k < 64; ++k)
            disc.vertices.push_back(base.w + std::polar(r, 2.0 * M_PI * k / 64));
        return make_compact_region(s, base, {{base.sheet, disc}}, {}, tol);
    }
    if (s.branches().size() > 1)
        throw_unsupported("canonical exhaustion needs a surface with at most one branch");

    const auto& b = s.branches().front();
    double theta = b.slit_angle;
    double rho0 = std::abs(base.w - b.position);
    if (r <= rho0) throw_invalid("canonical compact radius must exceed the basepoint distance");
    double eps = rho0 / 2.0;

    // Local cut positions in the band (theta - 2*pi, theta).
    std::vector<double> cuts;
    for (double a : extra_cut_angles) {
        double local = theta - normalize_angle(theta - a);
        if (theta - local < 1e-9 || local - (theta - 2.0 * M_PI) < 1e-9) continue;
        cuts.push_back(local);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double x, double y) { return std::abs(x - y) < 1e-9; }),
               cuts.end());

    std::vector<int> sheets;
    bool wrap = false;
    if (s.domain().is_finite()) {
        int n = s.domain().count();
        int sheet = 0;
        // Follow the monodromy cycle so consecutive entries are glued.
        for (int i = 0; i < n; ++i) {
            sheets.push_back(sheet);
            sheet = b.monodromy.apply(sheet);
        }
        if (sheet != sheets.front())
            throw_unsupported("canonical exhaustion needs a single full monodromy cycle");
        wrap = true;
    } else {
        int m = std::max(1, (int)std::ceil(r / 2.0));
        for (int k = base.sheet - m; k <= base.sheet + m; ++k) sheets.push_back(k);
        if (b.monodromy.is_shift() && std::abs(b.monodromy.shift_step()) != 1)
            throw_unsupported("canonical exhaustion needs a unit shift");
    }

    double collar = tol.slit / eps;
    int per_sheet = (int)cuts.size() + 1;
    std::vector<RegionPiece> pieces;
    std::vector<RegionGluing> gluings;
    for (std::size_t i = 0; i < sheets.size(); ++i) {
        bool glued_above = wrap || i > 0;
        bool glued_below = wrap || i + 1 < sheets.size();
        std::vector<double> bounds;
        bounds.push_back(theta - 2.0 * M_PI + (glued_above ? 0.0 : collar));
        for (double c : cuts) bounds.push_back(c);
        bounds.push_back(theta - (glued_below ? 0.0 : collar));
        for (int kk = 0; kk + 1 < (int)bounds.size(); ++kk)
            pieces.push_back({sheets[i], annulus_sector(b.position, bounds[(std::size_t)kk],
                                                        bounds[(std::size_t)kk + 1], eps, r)});
    }
    Complex ea = b.position + std::polar(eps, theta);
    Complex eb = b.position + std::polar(r, theta);
    auto last_of = [&](std::size_t sheet_idx) { return (int)(sheet_idx * (std::size_t)per_sheet) + per_sheet - 1; };
    auto first_of = [&](std::size_t sheet_idx) { return (int)(sheet_idx * (std::size_t)per_sheet); };
    for (std::size_t i = 0; i + 1 < sheets.size(); ++i)
        gluings.push_back({last_of(i), first_of(i + 1), 0, ea, eb});
    if (wrap && sheets.size() > 1)
        gluings.push_back({last_of(sheets.size() - 1), first_of(0), 0, ea, eb});

    return make_compact_region(s, base, std::move(pieces), std::move(gluings), tol);
}

bool mutual_embedding_test(const SheetComplex& s, const SurfacePoint& z0,
                           const SheetComplex& t, const SurfacePoint& z0_t,
                           const std::vector<double>& radii, const Tolerances& tol) {
    if (radii.empty()) throw_invalid("mutual embedding test needs at least one radius");
    std::vector<double> cuts_from_t, cuts_from_s;
    for (const auto& br : t.branches()) cuts_from_t.push_back(br.slit_angle);
    for (const auto& br : s.branches()) cuts_from_s.push_back(br.slit_angle);
    for (double r : radii) {
        CompactRegion k_s = canonical_compact(s, z0, r, cuts_from_t, tol);
        CompactRegion k_t = canonical_compact(t, z0_t, r, cuts_from_s, tol);
        EmbeddingResult fwd = embed_check(s, k_s, t, z0_t, tol);
        if (!fwd.found) return false;
        EmbeddingResult bwd = embed_check(t, k_t, s, z0, tol);
        if (!bwd.found) return false;
        if (std::abs(fwd.translation + bwd.translation) > tol.dist)
            throw_numeric("mutual embeddings do not use reciprocal translations");
    }
    return true;
}

} // namespace logrs
