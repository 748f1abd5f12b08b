#pragma once

#include "logrs/polynomial.hpp"

#include <functional>
#include <string>
#include <vector>

namespace logrs {

class ConformalRadius {
public:
    static ConformalRadius finite(double value);
    static ConformalRadius infinite();

    bool is_infinite() const { return !value_.has_value(); }
    double value() const;

private:
    std::optional<double> value_;
};

/// Conformal radius of the pointed surfaces this library constructs. Every
/// supported kind ("plane", "nth_root", "logarithm", "polynomial") has a
/// finite completion biholomorphic to the whole plane, so the radius is
/// infinite; anything else is unsupported-input.
ConformalRadius conformal_radius(const std::string& surface_kind);

struct ChartMap {
    std::string name;
    std::function<Complex(Complex)> eval;
};

enum class ChartFamilyKind { nth_root, scaled_log, polynomial, plane };

/// A family of normalized uniformizations written in the chart: the member
/// maps h_n = pi_n . G_n and the limit h = pi . G, all with h(0) equal to the
/// basepoint projection and h'(0) = 1.
struct ChartMapFamily {
    ChartFamilyKind kind = ChartFamilyKind::plane;
    std::string name;
    ChartMap member(int n) const;
    ChartMap limit() const;
    bool has_limit() const { return (bool)limit_eval; }
    ConformalRadius member_radius = ConformalRadius::infinite();
    ConformalRadius limit_radius = ConformalRadius::infinite();

    std::function<Complex(int, Complex)> member_eval;
    std::function<Complex(Complex)> limit_eval;
};

/// h_n(z) = (w0 + z/(n*w0^{n-1}))^n. For w0 = 1 the limit is e^z; other
/// basepoints have no convergent limit and the family carries members only.
ChartMapFamily nth_root_chart_family(Complex w0 = Complex(1, 0));

/// h_n(z) = n*(e^{z/n} - 1), limit the identity.
ChartMapFamily scaled_log_chart_family();

/// Constant family h(z) = p(z0 + z/p'(z0)); invalid when p'(z0) = 0.
ChartMapFamily polynomial_chart_family(const PolynomialSpec& p, Complex z0);

/// h(z) = pi_z0 + z.
ChartMapFamily plane_chart_family(Complex pi_z0);

/// Integer power by repeated squaring (exact operation count, no logs).
Complex cpow_int(Complex base, long exponent);

struct SupError {
    double value = 0.0;
    Complex arg_max;
};

/// sup |f - g| over the closed disc of radius r, evaluated on `samples`
/// equispaced boundary points (both maps are holomorphic, so the boundary
/// maximum is the disc supremum). samples < 8 is invalid-argument.
SupError sup_error_on_disc(const ChartMap& f, const ChartMap& g, double r, int samples);

struct ConvergenceRow {
    double r = 0.0;
    int n = 0;
    double sup_error = 0.0;
    Complex arg_max;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    bool monotone_violation = false; // sup errors failed to decrease in n for some fixed r
};

ConvergenceReport convergence_report(const ChartMapFamily& family,
                                     const std::vector<double>& radii,
                                     const std::vector<int>& n_list, int samples = 4096);

/// Central finite-difference derivative of a chart map at 0.
Complex fd_derivative_at_zero(const std::function<Complex(Complex)>& f, double step = 1e-5);

} // namespace logrs
