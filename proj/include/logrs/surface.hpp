#pragma once

#include "logrs/geometry.hpp"
#include "logrs/polynomial.hpp"
#include "logrs/tolerances.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace logrs {

/// Index set of the sheets: {0, ..., count-1} or all of Z.
class SheetDomain {
public:
    static SheetDomain finite(int count);
    static SheetDomain all_integers();

    bool is_finite() const { return count_.has_value(); }
    int count() const;
    bool contains(int sheet) const;

    friend bool operator==(const SheetDomain&, const SheetDomain&) = default;

private:
    std::optional<int> count_;
};

/// Sheet permutation applied when a path crosses a slit counterclockwise
/// around its branch point. Either a product of disjoint finite cycles
/// (sheets not listed are fixed) or the shift k -> k + step on Z.
class Monodromy {
public:
    static Monodromy cycles(std::vector<std::vector<int>> cycles);
    static Monodromy shift(int step);

    bool is_shift() const { return shift_.has_value(); }
    int shift_step() const;
    const std::vector<std::vector<int>>& cycle_list() const { return cycles_; }

    int apply(int sheet) const;
    int apply_inverse(int sheet) const;
    bool fixes(int sheet) const { return apply(sheet) == sheet; }

    void validate(const SheetDomain& domain) const;

    /// Equality as bijections (cycles are stored in canonical rotation).
    friend bool operator==(const Monodromy& a, const Monodromy& b);

private:
    std::optional<int> shift_;
    std::vector<std::vector<int>> cycles_;
    std::unordered_map<int, int> forward_, inverse_;
};

/// One branch point: its chart position, the direction of the slit ray
/// {position + t*e^{i*slit_angle}, t >= 0}, and the gluing permutation.
struct SlitBranch {
    Complex position;
    double slit_angle = 0.0; // normalized to [0, 2*pi)
    Monodromy monodromy;
};

/// A log-Riemann surface presented as sheets of the slit plane glued along
/// slit rays by monodromy permutations. The chart coordinate of a point is
/// its projection value, so the projection is stored, never computed.
class SheetComplex {
public:
    SheetComplex(SheetDomain domain, std::vector<SlitBranch> branches,
                 std::string label = "", const Tolerances& tol = {});

    const SheetDomain& domain() const { return domain_; }
    const std::vector<SlitBranch>& branches() const { return branches_; }
    const std::string& label() const { return label_; }

    friend bool operator==(const SheetComplex& a, const SheetComplex& b);

private:
    SheetDomain domain_;
    std::vector<SlitBranch> branches_;
    std::string label_;
};

/// Which side of a slit ray an on-slit point belongs to, in the frame where
/// the ray points along the positive real axis: above = positive imaginary
/// side (the side a counterclockwise crossing lands on), below = the other.
enum class SlitSide { above, below };

/// A point of the surface: sheet index plus chart coordinate. slit_side is
/// present exactly when w lies on some slit ray.
struct SurfacePoint {
    int sheet = 0;
    Complex w;
    std::optional<SlitSide> slit_side;
};

/// Validating constructor for SurfacePoint: checks the sheet is in the
/// domain, w clears every branch position, and the slit_side flag is present
/// iff w lies on a slit ray.
SurfacePoint make_point(const SheetComplex& s, int sheet, Complex w,
                        std::optional<SlitSide> side = {}, const Tolerances& tol = {});

/// True when p and q denote the same surface point, accounting for the
/// identification of the two sides of a slit under the monodromy.
bool points_identical(const SheetComplex& s, const SurfacePoint& p,
                      const SurfacePoint& q, const Tolerances& tol = {});

/// Ramification order: a finite covering degree >= 2 or infinite.
class Order {
public:
    static Order finite(int n);
    static Order infinite();

    bool is_infinite() const { return !value_.has_value(); }
    int value() const;

    friend bool operator==(const Order&, const Order&) = default;

private:
    std::optional<int> value_;
};

/// A point of the metric completion over a branch position: one per
/// monodromy cycle of length >= 2, or per shift orbit (infinite order).
struct RamificationPoint {
    int branch_index = 0;
    Complex w;
    Order order = Order::finite(2);
    std::vector<int> cycle; // finite order; canonical rotation
    int orbit_step = 0;     // infinite order: sheet s belongs iff s = residue (mod |step|)
    int orbit_residue = 0;

    bool contains_sheet(int sheet) const;
};

std::vector<RamificationPoint> ramification_points(const SheetComplex& s);

// Constructors for the standard families.
SheetComplex make_plane();
SheetComplex make_nth_root(int n);
SheetComplex make_logarithm();

/// Surface of a degree-d polynomial: one branch per critical value, sheets
/// labeled by the lexicographically sorted preimages of a deterministically
/// chosen regular basepoint, monodromy computed by continuing the d inverse
/// branches around each critical value.
SheetComplex make_polynomial(const PolynomialSpec& p, const Tolerances& tol = {});

/// Diagnostics of the polynomial surface construction, for callers that need
/// the sheet labeling or the basepoint (tests, inverse-branch cross-checks).
struct PolynomialBuild {
    SheetComplex surface;
    Complex basepoint_w;                // regular value whose preimages label sheets
    std::vector<Complex> sheet_points;  // preimage of basepoint_w on sheet k
    std::vector<ClusteredRoot> critical_points;
};
PolynomialBuild build_polynomial_surface(const PolynomialSpec& p, const Tolerances& tol = {});

/// Replace the projection pi by lambda*pi (+ c): branch positions map by
/// w -> lambda*w + c, slit directions rotate by arg(lambda), monodromies are
/// unchanged.
SheetComplex scale(const SheetComplex& s, Complex lambda);
SheetComplex translate(const SheetComplex& s, Complex c);

/// Transport a point's chart coordinate by the same affine map.
SurfacePoint transport(const SurfacePoint& p, Complex lambda, Complex c);

double normalize_angle(double a); // into [0, 2*pi)

} // namespace logrs
