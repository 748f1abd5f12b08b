#pragma once

#include "logrs/geometry.hpp"

#include <vector>

namespace logrs {

/// Polynomial of degree >= 2 with complex coefficients, constant term first.
struct PolynomialSpec {
    std::vector<Complex> coefficients;

    explicit PolynomialSpec(std::vector<Complex> coeffs);

    int degree() const { return (int)coefficients.size() - 1; }
    Complex eval(Complex z) const;
    Complex eval_derivative(Complex z) const;
};

std::vector<Complex> derivative_coefficients(const std::vector<Complex>& c);

/// A root of multiplicity >= 1 after clustering nearby numerical roots.
struct ClusteredRoot {
    Complex value;
    int multiplicity;
};

/// All roots of the polynomial (with multiplicity, as a flat list) by the
/// Aberth–Ehrlich iteration. Deterministic initial configuration. Throws
/// numeric-failure with a residual report if the iteration stalls.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coefficients,
                                      double tol_root);

/// Merge roots closer than merge_tol and Newton-polish each cluster centre on
/// the derivative of order (multiplicity - 1), which has a simple root there.
std::vector<ClusteredRoot> cluster_roots(const std::vector<Complex>& coefficients,
                                         const std::vector<Complex>& roots,
                                         double merge_tol);

} // namespace logrs
