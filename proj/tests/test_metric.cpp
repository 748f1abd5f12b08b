#include "logrs/errors.hpp"
#include "logrs/metric.hpp"
#include "logrs/surface.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace logrs;

namespace {

// Seeded off-slit sample point with sheets drawn from [lo, hi].
SurfacePoint sample_point(std::mt19937& rng, int lo, int hi) {
    std::uniform_real_distribution<double> rad(0.1, 3.0);
    std::uniform_real_distribution<double> ang(-M_PI + 1e-3, M_PI - 1e-3);
    std::uniform_int_distribution<int> sheet(lo, hi);
    return SurfacePoint{sheet(rng), std::polar(rad(rng), ang(rng)), {}};
}

double closed_form(const SheetComplex& s, const SurfacePoint& p, const SurfacePoint& q) {
    // Absolute-angle closed form for single full-cycle cones and the logarithm.
    const auto& b = s.branches().front();
    auto band = [&](const SurfacePoint& x) {
        double phi = std::arg(x.w - b.position);
        double local = b.slit_angle - normalize_angle(b.slit_angle - phi);
        return local + 2.0 * M_PI * x.sheet;
    };
    double dphi = std::abs(band(p) - band(q));
    if (s.domain().is_finite()) {
        double total = 2.0 * M_PI * s.domain().count();
        dphi = std::fmod(dphi, total);
        dphi = std::min(dphi, total - dphi);
    }
    return cone_distance(std::abs(p.w - b.position), std::abs(q.w - b.position), dphi);
}

} // namespace

TEST_CASE("cone distance closed form") {
    CHECK(cone_distance(1, 1, M_PI / 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(cone_distance(1, 1, 2 * M_PI) == doctest::Approx(2.0).epsilon(1e-12));
    // Continuity at the switch between the chord and the through-apex route.
    CHECK(cone_distance(1, 1, M_PI) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cone_distance(1, 1, M_PI - 1e-9) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK_THROWS_AS(cone_distance(-1, 1, 0), Error);
}

TEST_CASE("distance on the cube-root surface") {
    SheetComplex s = make_nth_root(3);
    auto p = make_point(s, 0, Complex(1, 0));
    auto q = make_point(s, 1, Complex(1, 0));
    auto d = distance(s, p, q);
    CHECK(d.value == doctest::Approx(2.0).epsilon(1e-12));
    REQUIRE(d.witness.size() == 3);
    CHECK(std::holds_alternative<RamificationPoint>(d.witness[1]));
    CHECK(std::get<RamificationPoint>(d.witness[1]).order.value() == 3);

    auto q2 = make_point(s, 0, Complex(0, 1));
    auto d2 = distance(s, p, q2);
    CHECK(d2.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(d2.witness.size() == 2); // one straight segment
}

TEST_CASE("distance on the logarithm surface") {
    SheetComplex s = make_logarithm();
    auto p = make_point(s, 0, Complex(1, 0));
    auto q = make_point(s, 5, Complex(1, 0));
    auto d = distance(s, p, q);
    CHECK(d.value == doctest::Approx(2.0).epsilon(1e-12));
    REQUIRE(d.witness.size() == 3);
    CHECK(std::get<RamificationPoint>(d.witness[1]).order.is_infinite());
}

TEST_CASE("distance handles on-slit points") {
    SheetComplex s = make_logarithm();
    auto p = make_point(s, 0, Complex(-2, 0), SlitSide::below);
    auto q = make_point(s, 1, Complex(-3, 0), SlitSide::above); // same point set as (0,-3,below)
    CHECK(distance(s, p, q).value == doctest::Approx(1.0).epsilon(1e-12));
    auto r = make_point(s, 1, Complex(-3, 0), SlitSide::below);
    CHECK(distance(s, p, r).value == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("the two representations of an on-slit point are at distance zero") {
    SheetComplex s = make_logarithm();
    auto below = make_point(s, 0, Complex(-2, 0), SlitSide::below);
    auto above = make_point(s, 1, Complex(-2, 0), SlitSide::above);
    CHECK(distance(s, below, above).value == 0.0);
}

TEST_CASE("distance on a two-branch polynomial surface") {
    SheetComplex s = make_polynomial(PolynomialSpec({{0, 0}, {-3, 0}, {0, 0}, {1, 0}}));
    auto rams = ramification_points(s);
    REQUIRE(rams.size() == 2);

    // Far from both slits a same-sheet segment is a straight geodesic.
    auto p = make_point(s, 0, Complex(0, 5));
    auto q = make_point(s, 0, Complex(1, 5));
    CHECK(distance(s, p, q).value == doctest::Approx(1.0).epsilon(1e-12));

    // Two sheets swapped at a branch, same chart point close to it: the
    // geodesic dives through that order-2 cone point.
    for (const auto& r : rams) {
        int a = r.cycle[0], b = r.cycle[1];
        Complex w = r.w + Complex(0, 0.5);
        auto pa = make_point(s, a, w);
        auto pb = make_point(s, b, w);
        auto d = distance(s, pa, pb);
        CHECK(d.value == doctest::Approx(1.0).epsilon(1e-9));
        REQUIRE(d.witness.size() == 3);
        CHECK(std::get<RamificationPoint>(d.witness[1]).branch_index == r.branch_index);
    }

    // Sanity on sampled pairs: symmetry, triangle, Lipschitz.
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> re(-4.0, 4.0), im(-4.0, 4.0);
    std::uniform_int_distribution<int> sheet(0, 2);
    int done = 0;
    while (done < 20) {
        SurfacePoint a{sheet(rng), Complex(re(rng), im(rng)), {}};
        SurfacePoint b{sheet(rng), Complex(re(rng), im(rng)), {}};
        SurfacePoint c{sheet(rng), Complex(re(rng), im(rng)), {}};
        try {
            double ab = distance(s, a, b).value;
            double ac = distance(s, a, c).value;
            double cb = distance(s, c, b).value;
            CHECK(ab <= ac + cb + 1e-9);
            CHECK(ab >= std::abs(a.w - b.w) - 1e-12);
            CHECK(std::abs(distance(s, b, a).value - ab) < 1e-9);
            ++done;
        } catch (const Error&) {
            continue; // a sample fell on a slit; redraw
        }
    }
}

TEST_CASE("distance equals the cone closed form on seeded pairs") {
    std::mt19937 rng(4242);
    for (int n : {2, 3, 5, 8}) {
        SheetComplex s = make_nth_root(n);
        for (int k = 0; k < 50; ++k) {
            auto p = sample_point(rng, 0, n - 1);
            auto q = sample_point(rng, 0, n - 1);
            double got = distance(s, p, q).value;
            CHECK(std::abs(got - closed_form(s, p, q)) < 1e-9);
        }
    }
    SheetComplex slog = make_logarithm();
    for (int k = 0; k < 50; ++k) {
        auto p = sample_point(rng, -6, 6);
        auto q = sample_point(rng, -6, 6);
        double got = distance(slog, p, q).value;
        CHECK(std::abs(got - closed_form(slog, p, q)) < 1e-9);
    }
}

TEST_CASE("metric axioms and the Lipschitz bound on samples") {
    std::mt19937 rng(7);
    SheetComplex s = make_nth_root(4);
    for (int k = 0; k < 30; ++k) {
        auto a = sample_point(rng, 0, 3);
        auto b = sample_point(rng, 0, 3);
        auto c = sample_point(rng, 0, 3);
        double ab = distance(s, a, b).value;
        double ba = distance(s, b, a).value;
        double ac = distance(s, a, c).value;
        double cb = distance(s, c, b).value;
        CHECK(std::abs(ab - ba) <= 1e-9);
        CHECK(ab <= ac + cb + 1e-9);
        CHECK(ab >= std::abs(a.w - b.w) - 1e-12);
        CHECK(distance(s, a, a).value == 0.0);
    }
}

TEST_CASE("witness geometry is consistent with the reported value") {
    std::mt19937 rng(13);
    SheetComplex s = make_nth_root(3);
    for (int k = 0; k < 20; ++k) {
        auto p = sample_point(rng, 0, 2);
        auto q = sample_point(rng, 0, 2);
        auto d = distance(s, p, q);
        double total = 0.0;
        auto w_of = [](const WitnessNode& n) {
            return std::holds_alternative<SurfacePoint>(n) ? std::get<SurfacePoint>(n).w
                                                           : std::get<RamificationPoint>(n).w;
        };
        for (std::size_t i = 0; i + 1 < d.witness.size(); ++i)
            total += std::abs(w_of(d.witness[i + 1]) - w_of(d.witness[i]));
        CHECK(total == doctest::Approx(d.value).epsilon(1e-12));
    }
}

TEST_CASE("distance against the mesh oracle") {
    SheetComplex s3 = make_nth_root(3);
    oracle::MeshDistance mesh3(s3, 0, 2, 0.02, 3.0, 48, 256);
    auto p = make_point(s3, 0, Complex(1, 0));
    auto q = make_point(s3, 1, Complex(1, 0));
    CHECK(std::abs(mesh3.distance(p, q) - distance(s3, p, q).value) < 1e-3);

    SheetComplex slog = make_logarithm();
    oracle::MeshDistance meshl(slog, -1, 6, 0.02, 3.0, 48, 256);
    auto a = make_point(slog, 0, Complex(1, 0));
    auto b = make_point(slog, 5, Complex(1, 0));
    CHECK(std::abs(meshl.distance(a, b) - distance(slog, a, b).value) < 1e-3);

    // A few random pairs: mesh paths are genuine surface paths, so the mesh
    // can only overestimate, and only by its direction-quantization error.
    std::mt19937 rng(21);
    for (int k = 0; k < 10; ++k) {
        auto x = sample_point(rng, 0, 2);
        auto y = sample_point(rng, 0, 2);
        double exact = distance(s3, x, y).value;
        double approx = mesh3.distance(x, y);
        CHECK(approx >= exact - 1e-9);
        CHECK(approx <= exact * 1.06);
    }
}

TEST_CASE("truncated annulus regions") {
    SheetComplex slog = make_logarithm();
    auto base = make_point(slog, 0, Complex(1, 0));
    CompactRegion k1 = truncated_annulus_region(slog, -1, 1, 0.1, 2.0, base);
    CHECK(k1.pieces.size() == 3); // one piece per sheet
    CHECK(k1.gluings.size() == 2);

    SheetComplex s3 = make_nth_root(3);
    auto base3 = make_point(s3, 0, Complex(1, 0));
    CompactRegion full = truncated_annulus_region(s3, 0, 2, 0.1, 2.0, base3);
    CHECK(full.pieces.size() == 3);
    CHECK(full.gluings.size() == 3); // cyclic: the window closes around the cone

    CHECK_THROWS_AS(truncated_annulus_region(slog, -1, 1, 2.0, 0.1, base), Error);
    CHECK_THROWS_AS(truncated_annulus_region(s3, 0, 3, 0.1, 2.0, base3), Error);
    // Basepoint outside the annulus.
    auto far = make_point(slog, 0, Complex(5, 0));
    CHECK_THROWS_AS(truncated_annulus_region(slog, -1, 1, 0.1, 2.0, far), Error);
    // Basepoint on an uncovered sheet.
    auto other = make_point(slog, 4, Complex(1, 0));
    CHECK_THROWS_AS(truncated_annulus_region(slog, -1, 1, 0.1, 2.0, other), Error);
}

TEST_CASE("explicit compact region validation") {
    SheetComplex s = make_nth_root(2);
    auto base = make_point(s, 0, Complex(1.5, 0));
    Polygon square{{Complex(1, -0.5), Complex(2, -0.5), Complex(2, 0.5), Complex(1, 0.5)}};
    CHECK_NOTHROW(make_compact_region(s, base, {{0, square}}, {}));

    // A piece whose interior contains the branch position.
    Polygon covering{{Complex(-1, -1), Complex(1, -1), Complex(1, 1), Complex(-1, 1)}};
    CHECK_THROWS_AS(make_compact_region(s, base, {{0, covering}}, {}), Error);

    // Disconnected: two far-apart squares with no gluing.
    Polygon far{{Complex(5, -0.5), Complex(6, -0.5), Complex(6, 0.5), Complex(5, 0.5)}};
    CHECK_THROWS_AS(make_compact_region(s, base, {{0, square}, {1, far}}, {}), Error);

    // Same squares on one sheet, sharing an edge: connected.
    Polygon next{{Complex(2, -0.5), Complex(3, -0.5), Complex(3, 0.5), Complex(2, 0.5)}};
    CHECK_NOTHROW(make_compact_region(s, base, {{0, square}, {0, next}}, {}));

    // A declared gluing must sit on the slit and match the monodromy.
    Polygon upper{{Complex(-2, 0), Complex(-1, 0), Complex(-1, 1), Complex(-2, 1)}};
    Polygon lower{{Complex(-2, -1), Complex(-1, -1), Complex(-1, 0), Complex(-2, 0)}};
    auto base_low = make_point(s, 0, Complex(-1.5, -0.5));
    CHECK_NOTHROW(make_compact_region(
        s, base_low, {{0, lower}, {1, upper}},
        {{0, 1, 0, Complex(-2, 0), Complex(-1, 0)}}));
    // Wrong target sheet for the gluing.
    CHECK_THROWS_AS(make_compact_region(s, base_low, {{0, lower}, {0, upper}},
                                        {{0, 1, 0, Complex(-2, 0), Complex(-1, 0)}}),
                    Error);
}

TEST_CASE("same-sheet contact across a slit is not adjacency") {
    // Two squares touching along the slit of the square root from opposite
    // sides are NOT glued to each other (the slit separates them), so the
    // region is disconnected.
    SheetComplex s = make_nth_root(2);
    Polygon upper{{Complex(-2, 0), Complex(-1, 0), Complex(-1, 1), Complex(-2, 1)}};
    Polygon lower{{Complex(-2, -1), Complex(-1, -1), Complex(-1, 0), Complex(-2, 0)}};
    auto base_up = make_point(s, 0, Complex(-1.5, 0.5));
    CHECK_THROWS_AS(make_compact_region(s, base_up, {{0, upper}, {0, lower}}, {}), Error);

    // On the plane there is no slit, so the same two squares are adjacent.
    SheetComplex plane = make_plane();
    auto pbase = make_point(plane, 0, Complex(-1.5, 0.5));
    CHECK_NOTHROW(make_compact_region(plane, pbase, {{0, upper}, {0, lower}}, {}));
}
