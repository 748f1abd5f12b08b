#include "logrs/uniformization.hpp"

#include "logrs/errors.hpp"

#include <cmath>
#include <sstream>

namespace logrs {

ConformalRadius ConformalRadius::finite(double value) {
    if (!(value > 0)) throw_invalid("conformal radius must be positive");
    ConformalRadius r;
    r.value_ = value;
    return r;
}

ConformalRadius ConformalRadius::infinite() { return ConformalRadius{}; }

double ConformalRadius::value() const {
    if (!value_) throw_invalid("conformal radius is infinite");
    return *value_;
}

ConformalRadius conformal_radius(const std::string& surface_kind) {
    if (surface_kind == "plane" || surface_kind == "nth_root" ||
        surface_kind == "logarithm" || surface_kind == "polynomial")
        return ConformalRadius::infinite();
    throw_unsupported("conformal radius is only known for the closed-form families");
}

Complex cpow_int(Complex base, long exponent) {
    if (exponent < 0) return 1.0 / cpow_int(base, -exponent);
    Complex acc = 1.0, sq = base;
    while (exponent > 0) {
        if (exponent & 1) acc *= sq;
        sq *= sq;
        exponent >>= 1;
    }
    return acc;
}

namespace {

// e^z - 1 without the cancellation for small z.
Complex cexpm1(Complex z) {
    double x = z.real(), y = z.imag();
    double em = std::expm1(x);
    double half = std::sin(y / 2);
    double re = em * std::cos(y) - 2.0 * half * half;
    double im = (em + 1.0) * std::sin(y);
    return {re, im};
}

// log(1 + w) for small |w|, accurate in both parts.
Complex clog1p(Complex w) {
    double x = w.real(), y = w.imag();
    double re = 0.5 * std::log1p(2.0 * x + x * x + y * y);
    double im = std::atan2(y, 1.0 + x);
    return {re, im};
}

} // namespace

ChartMap ChartMapFamily::member(int n) const {
    if (n < 1) throw_invalid("family index must be >= 1");
    std::ostringstream os;
    os << name << "[" << n << "]";
    auto eval = member_eval;
    return ChartMap{os.str(), [eval, n](Complex z) { return eval(n, z); }};
}

ChartMap ChartMapFamily::limit() const {
    if (!limit_eval) throw_invalid("this chart family has no limit map");
    return ChartMap{name + "[limit]", limit_eval};
}

ChartMapFamily nth_root_chart_family(Complex w0) {
    if (w0 == Complex(0, 0)) throw_invalid("nth-root chart base must be nonzero");
    ChartMapFamily f;
    f.kind = ChartFamilyKind::nth_root;
    f.name = "nth-root";
    f.member_eval = [w0](int n, Complex z) {
        // Large n needs the log1p route: forming 1 + z/n directly loses
        // low-order bits of z/n that the nth power then amplifies by n.
        Complex ratio = z / ((double)n * cpow_int(w0, n));
        if (n >= 256 && std::abs(ratio) < 0.5)
            return cpow_int(w0, n) * std::exp((double)n * clog1p(ratio));
        Complex denom = (double)n * cpow_int(w0, n - 1);
        return cpow_int(w0 + z / denom, n);
    };
    if (w0 == Complex(1, 0)) f.limit_eval = [](Complex z) { return std::exp(z); };
    return f;
}

ChartMapFamily scaled_log_chart_family() {
    ChartMapFamily f;
    f.kind = ChartFamilyKind::scaled_log;
    f.name = "scaled-log";
    f.member_eval = [](int n, Complex z) { return (double)n * cexpm1(z / (double)n); };
    f.limit_eval = [](Complex z) { return z; };
    return f;
}

ChartMapFamily polynomial_chart_family(const PolynomialSpec& p, Complex z0) {
    Complex dp = p.eval_derivative(z0);
    if (std::abs(dp) == 0.0)
        throw_invalid("basepoint is a critical point; the chart uniformization needs p'(z0) != 0");
    ChartMapFamily f;
    f.kind = ChartFamilyKind::polynomial;
    f.name = "polynomial";
    auto eval = [p, z0, dp](Complex z) { return p.eval(z0 + z / dp); };
    f.member_eval = [eval](int, Complex z) { return eval(z); };
    f.limit_eval = eval;
    return f;
}

ChartMapFamily plane_chart_family(Complex pi_z0) {
    ChartMapFamily f;
    f.kind = ChartFamilyKind::plane;
    f.name = "plane";
    f.member_eval = [pi_z0](int, Complex z) { return pi_z0 + z; };
    f.limit_eval = [pi_z0](Complex z) { return pi_z0 + z; };
    return f;
}

SupError sup_error_on_disc(const ChartMap& f, const ChartMap& g, double r, int samples) {
    if (samples < 8) throw_invalid("sup_error_on_disc needs at least 8 samples");
    if (!(r > 0)) throw_invalid("disc radius must be positive");
    SupError out;
    out.arg_max = Complex(r, 0);
    for (int k = 0; k < samples; ++k) {
        Complex z = std::polar(r, 2.0 * M_PI * k / samples);
        double err = std::abs(f.eval(z) - g.eval(z));
        if (err > out.value) {
            out.value = err;
            out.arg_max = z;
        }
    }
    return out;
}

ConvergenceReport convergence_report(const ChartMapFamily& family,
                                     const std::vector<double>& radii,
                                     const std::vector<int>& n_list, int samples) {
    if (!family.has_limit()) throw_invalid("convergence report needs a family with a limit");
    ConvergenceReport report;
    ChartMap h = family.limit();
    for (double r : radii) {
        double prior = -1.0;
        for (int n : n_list) {
            SupError e = sup_error_on_disc(family.member(n), h, r, samples);
            report.rows.push_back({r, n, e.value, e.arg_max});
            if (prior >= 0 && e.value > prior + 1e-15) report.monotone_violation = true;
            prior = e.value;
        }
    }
    return report;
}

Complex fd_derivative_at_zero(const std::function<Complex(Complex)>& f, double step) {
    return (f(Complex(step, 0)) - f(Complex(-step, 0))) / (2.0 * step);
}

} // namespace logrs
