#include "logrs/polynomial.hpp"

#include "logrs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace logrs {

PolynomialSpec::PolynomialSpec(std::vector<Complex> coeffs)
    : coefficients(std::move(coeffs)) {
    if (coefficients.size() < 3) throw_invalid("polynomial needs degree >= 2");
    if (std::abs(coefficients.back()) == 0.0)
        throw_invalid("degenerate leading coefficient");
}

Complex PolynomialSpec::eval(Complex z) const {
    Complex acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

Complex PolynomialSpec::eval_derivative(Complex z) const {
    Complex acc = 0.0;
    for (int k = degree(); k >= 1; --k)
        acc = acc * z + coefficients[(std::size_t)k] * (double)k;
    return acc;
}

std::vector<Complex> derivative_coefficients(const std::vector<Complex>& c) {
    std::vector<Complex> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * (double)k;
    return d;
}

namespace {

Complex horner(const std::vector<Complex>& c, Complex z) {
    Complex acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

} // namespace

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coefficients,
                                      double tol_root) {
    std::vector<Complex> c = coefficients;
    while (c.size() > 1 && std::abs(c.back()) == 0.0) c.pop_back();
    if (c.size() <= 1) throw_invalid("cannot solve a constant polynomial");
    int n = (int)c.size() - 1;
    // Normalize for conditioning; roots are unchanged.
    double cmax = 0.0;
    for (Complex a : c) cmax = std::max(cmax, std::abs(a));
    for (Complex& a : c) a /= cmax;

    if (n == 1) return {-c[0] / c[1]};

    std::vector<Complex> dc = derivative_coefficients(c);

    // Cauchy bound for the root radius.
    double bound = 0.0;
    for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(c[(std::size_t)k] / c.back()));
    double radius = 0.5 + 0.8 * (1.0 + bound);

    std::vector<Complex> z((std::size_t)n);
    for (int i = 0; i < n; ++i)
        z[(std::size_t)i] = std::polar(radius, 2.0 * M_PI * i / n + 0.41);

    const int max_iter = 600;
    double last_move = 0.0;
    for (int iter = 0; iter < max_iter; ++iter) {
        double move = 0.0;
        for (int i = 0; i < n; ++i) {
            Complex zi = z[(std::size_t)i];
            Complex p = horner(c, zi);
            Complex dp = horner(dc, zi);
            Complex newton = (std::abs(dp) > 0.0) ? p / dp : Complex(tol_root, 0);
            Complex sum = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Complex diff = zi - z[(std::size_t)j];
                if (std::abs(diff) < 1e-300) diff = Complex(1e-300, 0);
                sum += 1.0 / diff;
            }
            Complex denom = 1.0 - newton * sum;
            Complex step = (std::abs(denom) > 1e-300) ? newton / denom : newton;
            z[(std::size_t)i] = zi - step;
            move = std::max(move, std::abs(step));
        }
        last_move = move;
        if (move < tol_root) break;
    }

    // Residual check. Multiple roots converge slowly in position but their
    // residuals still vanish fast; accept on residual, not on step size.
    double worst = 0.0;
    for (Complex zi : z) worst = std::max(worst, std::abs(horner(c, zi)));
    double scale = 1.0;
    for (Complex zi : z) scale = std::max(scale, std::pow(std::max(1.0, std::abs(zi)), n));
    if (worst > 1e-6 * scale) {
        std::ostringstream os;
        os << "root finder did not converge: max residual " << worst
           << " (scaled bound " << 1e-6 * scale << ", last step " << last_move << ")";
        throw_numeric(os.str());
    }
    return z;
}

std::vector<ClusteredRoot> cluster_roots(const std::vector<Complex>& coefficients,
                                         const std::vector<Complex>& roots,
                                         double merge_tol) {
    std::size_t n = roots.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(roots[i] - roots[j]) <= merge_tol) parent[find(i)] = find(j);

    std::vector<ClusteredRoot> out;
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = find(i);
        if (seen[r]) continue;
        seen[r] = true;
        Complex centroid = 0.0;
        int mult = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (find(j) == r) {
                centroid += roots[j];
                ++mult;
            }
        centroid /= (double)mult;
        // An m-fold root of p is a simple root of p^{(m-1)}; polish there.
        std::vector<Complex> q = coefficients;
        for (int k = 1; k < mult; ++k) q = derivative_coefficients(q);
        std::vector<Complex> dq = derivative_coefficients(q);
        Complex zc = centroid;
        for (int it = 0; it < 40; ++it) {
            Complex f = horner(q, zc);
            Complex df = horner(dq, zc);
            if (std::abs(df) < 1e-300) break;
            Complex step = f / df;
            zc -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(zc))) break;
        }
        out.push_back({zc, mult});
    }
    std::sort(out.begin(), out.end(), [](const ClusteredRoot& a, const ClusteredRoot& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

} // namespace logrs
