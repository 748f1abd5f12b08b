#pragma once

#include "logrs/continuation.hpp"
#include "logrs/surface.hpp"

#include <variant>
#include <vector>

namespace logrs {

/// Geodesic distance on the flat cone between points at radii r1, r2 from
/// the apex with angular separation dphi: the planar chord when dphi <= pi,
/// through the apex otherwise.
double cone_distance(double r1, double r2, double dphi);

/// A geodesic witness node: a regular point or a cone point passed through.
using WitnessNode = std::variant<SurfacePoint, RamificationPoint>;

struct DistanceResult {
    double value = 0.0;
    std::vector<WitnessNode> witness;
};

/// Exact geodesic distance. Geodesics on these surfaces are straight in the
/// chart except at ramification points (every cone angle is >= 4*pi), so the
/// shortest path is found on the graph over {p, q} and the ramification
/// points, with an edge whenever the straight chart segment lifts to a path
/// connecting the two nodes. On single-cone surfaces the result is
/// cross-checked against the closed form.
DistanceResult distance(const SheetComplex& s, const SurfacePoint& p,
                        const SurfacePoint& q, const Tolerances& tol = {});

struct RegionPiece {
    int sheet = 0;
    Polygon polygon;
};

/// Identification of two piece edges along a slit: crossing the branch's
/// slit counterclockwise leaving piece_from enters piece_to through the
/// shared edge [edge_a, edge_b] (which lies on the slit ray).
struct RegionGluing {
    int piece_from = 0;
    int piece_to = 0;
    int branch = 0;
    Complex edge_a, edge_b;
};

/// A compact: finitely many closed per-sheet polygons, glued along declared
/// slit edges, connected, containing its basepoint.
struct CompactRegion {
    SurfacePoint basepoint;
    std::vector<RegionPiece> pieces;
    std::vector<RegionGluing> gluings;
};

/// Validating constructor: piece interiors must avoid branch positions and
/// slit rays, declared gluings must sit on their branch's slit and be
/// realized by its monodromy, and the adjacency graph (gluings plus
/// same-sheet edge contact) must connect all pieces to the basepoint's.
CompactRegion make_compact_region(const SheetComplex& s, SurfacePoint basepoint,
                                  std::vector<RegionPiece> pieces,
                                  std::vector<RegionGluing> gluings,
                                  const Tolerances& tol = {});

/// Canonical compact on a single-branch surface: per sheet in [sheet_lo,
/// sheet_hi], the 64-gon approximation of the annulus eps <= |w - branch| <= r
/// cut along the slit, with a tol.slit collar where no gluing is declared and
/// consecutive sheets glued along the slit edge. Covers the full cone
/// (cyclic, no collars) when the window is the whole finite domain.
CompactRegion truncated_annulus_region(const SheetComplex& s, int sheet_lo, int sheet_hi,
                                       double eps, double r, const SurfacePoint& basepoint,
                                       const Tolerances& tol = {});

/// Annular sector polygon spanning local angles [ang_lo, ang_hi] around
/// center, radii [r_in, r_out], arcs discretized into arc_segments chords.
Polygon annulus_sector(Complex center, double ang_lo, double ang_hi, double r_in,
                       double r_out, int arc_segments = 64);

/// Same-sheet piece adjacency: a shared boundary segment that does not lie
/// on a slit ray the sheet is sensitive to (two pieces touching across a
/// slit are glued to other sheets, not to each other). Used alongside the
/// declared gluings; exposed for the embedding checker.
struct SheetContact {
    int i = 0, j = 0;
    Complex a, b; // shared boundary segment
};
std::vector<SheetContact> same_sheet_contacts(const SheetComplex& s,
                                              const CompactRegion& region,
                                              const Tolerances& tol = {});

} // namespace logrs
