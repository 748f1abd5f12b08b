#include "logrs/surface.hpp"

#include "logrs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace logrs {

double normalize_angle(double a) {
    double two_pi = 2.0 * M_PI;
    double r = std::fmod(a, two_pi);
    if (r < 0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
}

// --- SheetDomain ---

SheetDomain SheetDomain::finite(int count) {
    if (count < 1) throw_invalid("sheet count must be >= 1");
    SheetDomain d;
    d.count_ = count;
    return d;
}

SheetDomain SheetDomain::all_integers() { return SheetDomain{}; }

int SheetDomain::count() const {
    if (!count_) throw_invalid("sheet domain is all integers; no finite count");
    return *count_;
}

bool SheetDomain::contains(int sheet) const {
    if (!count_) return true;
    return sheet >= 0 && sheet < *count_;
}

// --- Monodromy ---

Monodromy Monodromy::cycles(std::vector<std::vector<int>> cycles) {
    Monodromy m;
    std::set<int> seen;
    for (auto& cyc : cycles) {
        if (cyc.empty()) throw_invalid("empty cycle");
        for (int s : cyc)
            if (!seen.insert(s).second) throw_invalid("cycles are not disjoint");
        if (cyc.size() < 2) continue; // fixed sheet, drop
        // Canonical rotation: smallest element first.
        auto it = std::min_element(cyc.begin(), cyc.end());
        std::rotate(cyc.begin(), it, cyc.end());
        m.cycles_.push_back(cyc);
    }
    std::sort(m.cycles_.begin(), m.cycles_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (const auto& cyc : m.cycles_) {
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            int from = cyc[i], to = cyc[(i + 1) % cyc.size()];
            m.forward_[from] = to;
            m.inverse_[to] = from;
        }
    }
    return m;
}

Monodromy Monodromy::shift(int step) {
    if (step == 0) throw_invalid("shift step must be nonzero");
    Monodromy m;
    m.shift_ = step;
    return m;
}

int Monodromy::shift_step() const {
    if (!shift_) throw_invalid("monodromy is not a shift");
    return *shift_;
}

int Monodromy::apply(int sheet) const {
    if (shift_) return sheet + *shift_;
    auto it = forward_.find(sheet);
    return it == forward_.end() ? sheet : it->second;
}

int Monodromy::apply_inverse(int sheet) const {
    if (shift_) return sheet - *shift_;
    auto it = inverse_.find(sheet);
    return it == inverse_.end() ? sheet : it->second;
}

void Monodromy::validate(const SheetDomain& domain) const {
    if (shift_) {
        if (domain.is_finite())
            throw_invalid("shift monodromy requires the all-integers sheet domain");
        return;
    }
    for (const auto& cyc : cycles_)
        for (int s : cyc)
            if (!domain.contains(s)) throw_invalid("cycle sheet index outside the domain");
}

bool operator==(const Monodromy& a, const Monodromy& b) {
    return a.shift_ == b.shift_ && a.cycles_ == b.cycles_;
}

// --- SheetComplex ---

SheetComplex::SheetComplex(SheetDomain domain, std::vector<SlitBranch> branches,
                           std::string label, const Tolerances& tol)
    : domain_(domain), branches_(std::move(branches)), label_(std::move(label)) {
    for (auto& b : branches_) {
        b.slit_angle = normalize_angle(b.slit_angle);
        b.monodromy.validate(domain_);
    }
    for (std::size_t i = 0; i < branches_.size(); ++i)
        for (std::size_t j = 0; j < branches_.size(); ++j) {
            if (i == j) continue;
            if (std::abs(branches_[i].position - branches_[j].position) <= tol.branch)
                throw_invalid("branch positions are not pairwise distinct");
            // No branch may sit on (or hair-close to) another branch's slit.
            if (point_ray_distance(branches_[j].position, branches_[i].position,
                                   branches_[i].slit_angle) <= tol.slit)
                throw_invalid("a branch position lies on another branch's slit ray");
        }
}

bool operator==(const SheetComplex& a, const SheetComplex& b) {
    if (!(a.domain_ == b.domain_) || a.label_ != b.label_ ||
        a.branches_.size() != b.branches_.size())
        return false;
    for (std::size_t i = 0; i < a.branches_.size(); ++i) {
        const auto& x = a.branches_[i];
        const auto& y = b.branches_[i];
        if (x.position != y.position || x.slit_angle != y.slit_angle ||
            !(x.monodromy == y.monodromy))
            return false;
    }
    return true;
}

// --- SurfacePoint ---

SurfacePoint make_point(const SheetComplex& s, int sheet, Complex w,
                        std::optional<SlitSide> side, const Tolerances& tol) {
    if (!s.domain().contains(sheet)) throw_invalid("sheet index outside the domain");
    int on_ray = -1;
    for (std::size_t i = 0; i < s.branches().size(); ++i) {
        const auto& b = s.branches()[i];
        if (std::abs(w - b.position) <= tol.branch)
            throw_invalid("point coincides with a branch position");
        if (point_ray_distance(w, b.position, b.slit_angle) < tol.slit) {
            if (on_ray >= 0) throw_invalid("point lies on two slit rays; perturb it");
            on_ray = (int)i;
        }
    }
    if (on_ray >= 0 && !side)
        throw_invalid("point lies on a slit ray; a slit side is required");
    if (on_ray < 0 && side)
        throw_invalid("slit side given but the point is not on any slit ray");
    return SurfacePoint{sheet, w, side};
}

namespace {

// Canonical on-slit representation: the below-side copy. The below side of
// sheet k is glued to the above side of monodromy(k).
SurfacePoint canonical_rep(const SheetComplex& s, SurfacePoint p, const Tolerances& tol) {
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

bool points_identical(const SheetComplex& s, const SurfacePoint& p,
                      const SurfacePoint& q, const Tolerances& tol) {
    if (std::abs(p.w - q.w) > tol.slit) return false;
    SurfacePoint cp = canonical_rep(s, p, tol);
    SurfacePoint cq = canonical_rep(s, q, tol);
    return cp.sheet == cq.sheet;
}

// --- Order ---

Order Order::finite(int n) {
    if (n < 1) throw_invalid("order must be positive");
    Order o;
    o.value_ = n;
    return o;
}

Order Order::infinite() { return Order{}; }

int Order::value() const {
    if (!value_) throw_invalid("order is infinite");
    return *value_;
}

bool RamificationPoint::contains_sheet(int sheet) const {
    if (order.is_infinite()) {
        int m = std::abs(orbit_step);
        return ((sheet - orbit_residue) % m + m) % m == 0;
    }
    return std::find(cycle.begin(), cycle.end(), sheet) != cycle.end();
}

std::vector<RamificationPoint> ramification_points(const SheetComplex& s) {
    std::vector<RamificationPoint> out;
    for (std::size_t i = 0; i < s.branches().size(); ++i) {
        const auto& b = s.branches()[i];
        if (b.monodromy.is_shift()) {
            int step = b.monodromy.shift_step();
            int m = std::abs(step);
            for (int r = 0; r < m; ++r) {
                RamificationPoint p;
                p.branch_index = (int)i;
                p.w = b.position;
                p.order = Order::infinite();
                p.orbit_step = step;
                p.orbit_residue = r;
                out.push_back(std::move(p));
            }
        } else {
            for (const auto& cyc : b.monodromy.cycle_list()) {
                RamificationPoint p;
                p.branch_index = (int)i;
                p.w = b.position;
                p.order = Order::finite((int)cyc.size());
                p.cycle = cyc;
                out.push_back(std::move(p));
            }
        }
    }
    return out;
}

// --- Constructors ---

SheetComplex make_plane() {
    return SheetComplex(SheetDomain::finite(1), {}, "plane");
}

SheetComplex make_nth_root(int n) {
    if (n < 2) throw_invalid("nth-root surface needs n >= 2");
    std::vector<int> cycle((std::size_t)n);
    for (int k = 0; k < n; ++k) cycle[(std::size_t)k] = k;
    SlitBranch b{Complex(0, 0), M_PI, Monodromy::cycles({cycle})};
    std::ostringstream label;
    label << "nth_root(" << n << ")";
    return SheetComplex(SheetDomain::finite(n), {b}, label.str());
}

SheetComplex make_logarithm() {
    SlitBranch b{Complex(0, 0), M_PI, Monodromy::shift(1)};
    return SheetComplex(SheetDomain::all_integers(), {b}, "logarithm");
}

SheetComplex make_polynomial(const PolynomialSpec& p, const Tolerances& tol) {
    return build_polynomial_surface(p, tol).surface;
}

// --- Affine reparametrizations of the projection ---

namespace {

SheetComplex affine_map(const SheetComplex& s, Complex lambda, Complex c) {
    double rot = std::arg(lambda);
    std::vector<SlitBranch> branches = s.branches();
    for (auto& b : branches) {
        b.position = lambda * b.position + c;
        b.slit_angle = normalize_angle(b.slit_angle + rot);
    }
    return SheetComplex(s.domain(), std::move(branches), s.label());
}

} // namespace

SheetComplex scale(const SheetComplex& s, Complex lambda) {
    if (lambda == Complex(0, 0)) throw_invalid("scale factor must be nonzero");
    return affine_map(s, lambda, Complex(0, 0));
}

SheetComplex translate(const SheetComplex& s, Complex c) {
    return affine_map(s, Complex(1, 0), c);
}

SurfacePoint transport(const SurfacePoint& p, Complex lambda, Complex c) {
    return SurfacePoint{p.sheet, lambda * p.w + c, p.slit_side};
}

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::unsupported_input: return "unsupported-input";
    case ErrorKind::numeric_failure: return "numeric-failure";
    case ErrorKind::hits_ramification: return "hits-ramification";
    case ErrorKind::threshold_not_found: return "threshold-not-found";
    }
    return "unknown";
}

} // namespace logrs
