#include "logrs/continuation.hpp"
#include "logrs/errors.hpp"
#include "logrs/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace logrs {

namespace {

struct BranchData {
    Complex value;        // critical value = branch position
    Complex point;        // critical point
    int multiplicity = 0; // as a root of p'
};

double min_ray_clearance(Complex x, const std::vector<BranchData>& branches, double theta,
                         std::size_t skip) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < branches.size(); ++i) {
        if (i == skip) continue;
        best = std::min(best, point_ray_distance(x, branches[i].value, theta));
    }
    return best;
}

} // namespace

PolynomialBuild build_polynomial_surface(const PolynomialSpec& p, const Tolerances& tol) {
    const int d = p.degree();

    // Critical points of p, with multiplicity, via the roots of p'.
    auto dcoeffs = derivative_coefficients(p.coefficients);
    auto droots = polynomial_roots(dcoeffs, tol.root);
    double root_scale = 1.0;
    for (Complex z : droots) root_scale = std::max(root_scale, std::abs(z));
    auto clusters = cluster_roots(dcoeffs, droots, 6e-3 * root_scale);

    std::vector<BranchData> branches;
    for (const auto& c : clusters)
        branches.push_back({p.eval(c.value), c.value, c.multiplicity});
    std::sort(branches.begin(), branches.end(), [](const BranchData& a, const BranchData& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });

    double sep_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < branches.size(); ++i)
        for (std::size_t j = i + 1; j < branches.size(); ++j) {
            double sep = std::abs(branches[i].value - branches[j].value);
            if (sep <= tol.branch)
                throw_unsupported("two critical values coincide; this surface is not supported");
            sep_min = std::min(sep_min, sep);
        }

    // Deterministic regular basepoint: the max-min-distance point of a fixed
    // grid, ties broken lexicographically.
    double grid_scale = 1.0;
    for (const auto& b : branches) grid_scale = std::max(grid_scale, std::abs(b.value));
    Complex w0;
    double best_clear = -1.0;
    for (int iy = -4; iy <= 4; ++iy) {
        for (int ix = -4; ix <= 4; ++ix) {
            Complex cand = grid_scale * Complex(ix * 0.5, iy * 0.5);
            double clear = std::numeric_limits<double>::infinity();
            for (const auto& b : branches) clear = std::min(clear, std::abs(cand - b.value));
            bool better = clear > best_clear + 1e-12 * grid_scale;
            bool tie = std::abs(clear - best_clear) <= 1e-12 * grid_scale;
            bool lex = cand.real() < w0.real() - 1e-12 ||
                       (std::abs(cand.real() - w0.real()) <= 1e-12 && cand.imag() < w0.imag());
            if (better || (tie && lex)) {
                best_clear = std::max(best_clear, clear);
                w0 = cand;
            }
        }
    }

    // One slit direction for every branch, by golden-angle scan: all rays
    // must clear the other critical values and the basepoint.
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    double clearance_target =
        branches.size() > 1 ? std::max(tol.slit, 0.02 * sep_min) : std::max(tol.slit, 0.01 * grid_scale);
    auto scan = [&](double target) -> std::optional<double> {
        for (int k = 1; k <= 360; ++k) {
            double theta = normalize_angle(k * golden);
            bool ok = true;
            for (std::size_t i = 0; i < branches.size() && ok; ++i) {
                if (point_ray_distance(w0, branches[i].value, theta) < target) ok = false;
                for (std::size_t j = 0; j < branches.size() && ok; ++j)
                    if (j != i &&
                        point_ray_distance(branches[j].value, branches[i].value, theta) < target)
                        ok = false;
            }
            if (ok) return theta;
        }
        return std::nullopt;
    };
    auto theta_opt = scan(clearance_target);
    if (!theta_opt) theta_opt = scan(tol.slit * 2);
    if (!theta_opt)
        throw_unsupported("no slit direction clears the critical-value configuration");
    double theta = *theta_opt;

    // Sheets: the d preimages of w0, sorted lexicographically.
    std::vector<Complex> shifted = p.coefficients;
    shifted[0] -= w0;
    auto preimages = polynomial_roots(shifted, tol.root);
    std::sort(preimages.begin(), preimages.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    double pre_sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < preimages.size(); ++i)
        for (std::size_t j = i + 1; j < preimages.size(); ++j)
            pre_sep = std::min(pre_sep, std::abs(preimages[i] - preimages[j]));
    if (!(pre_sep > 0)) throw_numeric("basepoint preimages are not separated");

    // Monodromy of each branch: continue every inverse branch along a loop
    // that reaches the branch through the slit-free far side (all legs are
    // parallel to the slits or far behind their apexes, so the loop's
    // analytic monodromy is exactly the slit generator).
    Complex u = std::polar(1.0, theta);
    auto rot = [&](Complex z) { return z / u; };   // frame where slits point along +x
    auto unrot = [&](Complex z) { return z * u; };

    double lo_x = rot(w0).real(), spread = 1.0;
    for (const auto& b : branches) {
        lo_x = std::min(lo_x, rot(b.value).real());
        spread = std::max(spread, std::abs(b.value - w0));
        for (const auto& c : branches) spread = std::max(spread, std::abs(b.value - c.value));
    }
    double far_left = lo_x - spread - 1.0;

    std::vector<SlitBranch> slit_branches;
    for (std::size_t j = 0; j < branches.size(); ++j) {
        double rho = 0.25 * std::min({std::abs(w0 - branches[j].value),
                                      sep_min,
                                      min_ray_clearance(branches[j].value, branches, theta, j)});
        Complex vj = rot(branches[j].value);

        const int arcs = 64;
        double start_angle = M_PI + M_PI / arcs;
        Complex q = vj + std::polar(rho, start_angle); // just below the backward axis

        std::vector<Complex> loop;
        loop.push_back(rot(w0));
        loop.push_back(Complex(far_left, rot(w0).imag()));
        loop.push_back(Complex(far_left, q.imag()));
        loop.push_back(q);
        for (int k = 1; k <= arcs; ++k)
            loop.push_back(vj + std::polar(rho, start_angle + 2.0 * M_PI * k / arcs));
        loop.push_back(Complex(far_left, q.imag()));
        loop.push_back(Complex(far_left, rot(w0).imag()));
        loop.push_back(rot(w0));
        // Drop duplicate consecutive vertices (heights can coincide).
        std::vector<Complex> verts;
        for (Complex z : loop)
            if (verts.empty() || std::abs(unrot(z) - verts.back()) > tol.branch)
                verts.push_back(unrot(z));
        if (std::abs(verts.back() - w0) > tol.branch) verts.push_back(w0);
        Polyline loop_path = make_polyline(std::move(verts), tol);

        std::vector<int> sigma((std::size_t)d, -1);
        std::vector<bool> hit((std::size_t)d, false);
        for (int k = 0; k < d; ++k) {
            Complex z_end = continue_inverse(p, loop_path, preimages[(std::size_t)k], tol);
            int match = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int m = 0; m < d; ++m) {
                double dist = std::abs(z_end - preimages[(std::size_t)m]);
                if (dist < best) {
                    best = dist;
                    match = m;
                }
            }
            if (match < 0 || best > 0.25 * pre_sep) {
                std::ostringstream os;
                os << "monodromy endpoint did not return to a basepoint preimage (residual "
                   << best << ")";
                throw_numeric(os.str());
            }
            if (hit[(std::size_t)match])
                throw_numeric("monodromy endpoints are not a bijection of the preimages");
            hit[(std::size_t)match] = true;
            sigma[(std::size_t)k] = match;
        }

        // The permutation must be a single cycle of length multiplicity + 1.
        std::vector<std::vector<int>> cycles;
        std::vector<bool> seen((std::size_t)d, false);
        for (int k = 0; k < d; ++k) {
            if (seen[(std::size_t)k] || sigma[(std::size_t)k] == k) continue;
            std::vector<int> cyc;
            int cur = k;
            while (!seen[(std::size_t)cur]) {
                seen[(std::size_t)cur] = true;
                cyc.push_back(cur);
                cur = sigma[(std::size_t)cur];
            }
            cycles.push_back(std::move(cyc));
        }
        if (cycles.size() != 1 ||
            (int)cycles.front().size() != branches[j].multiplicity + 1) {
            std::ostringstream os;
            os << "branch at (" << branches[j].value.real() << ", " << branches[j].value.imag()
               << ") has inconsistent monodromy structure";
            throw_numeric(os.str());
        }
        slit_branches.push_back({branches[j].value, theta, Monodromy::cycles(cycles)});
    }

    int rh = 0;
    for (const auto& b : slit_branches)
        for (const auto& cyc : b.monodromy.cycle_list()) rh += (int)cyc.size() - 1;
    if (rh != d - 1) throw_numeric("ramification orders violate the degree count");

    std::ostringstream label;
    label << "polynomial(degree " << d << ")";
    PolynomialBuild out{
        SheetComplex(SheetDomain::finite(d), std::move(slit_branches), label.str(), tol),
        w0, std::move(preimages), std::move(clusters)};
    return out;
}

} // namespace logrs
