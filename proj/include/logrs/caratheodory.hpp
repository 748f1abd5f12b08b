#pragma once

#include "logrs/metric.hpp"

#include <functional>
#include <map>
#include <string>

namespace logrs {

enum class EmbedFailure {
    none,
    ramification_obstruction,
    gluing_mismatch,
    injectivity_collision,
    slit_intersection,
};

const char* embed_failure_name(EmbedFailure f);

/// Outcome of testing whether a compact region embeds isometrically into a
/// target surface by the chart translation sending the basepoint to z_n.
struct EmbeddingResult {
    bool found = false;
    Complex translation;
    std::map<int, int> sheet_assignment; // piece index -> target sheet
    EmbedFailure failure_reason = EmbedFailure::none;
    std::string detail;
};

/// Translate every piece of K by T = z_n.w - basepoint.w, propagate target
/// sheets from the basepoint piece across gluings and same-sheet contacts,
/// and verify: no piece meets a target branch position or is crossed by a
/// target slit, every transition is consistent, and pieces on one target
/// sheet never overlap across distinct source sheets. On success, sampled
/// pairwise distances are asserted to transfer within tolerance.
EmbeddingResult embed_check(const SheetComplex& source, const CompactRegion& K,
                            const SheetComplex& target, const SurfacePoint& z_n,
                            const Tolerances& tol = {});

/// A pointed family n -> (surface, basepoint), n >= 1.
struct SurfaceFamily {
    std::string kind;
    std::function<std::pair<SheetComplex, SurfacePoint>(int)> member;
};

/// S_n = surface of the nth root (the plane for n = 1) with basepoint over
/// base on sheet 0. The Caratheodory limit is the logarithm surface.
SurfaceFamily nth_root_family(Complex base = Complex(1, 0));

/// pi_n = n*(pi - pi(z0)): the projection scaled by n and recentred so the
/// basepoint projects to 0. Caratheodory limit: the plane through 0.
SurfaceFamily scaled_recentred_family(const SheetComplex& s, const SurfacePoint& z0);

SurfaceFamily constant_family(const SheetComplex& s, const SurfacePoint& z0);

struct ThresholdRow {
    int n = 0;
    bool found = false;
    EmbedFailure reason = EmbedFailure::none;
};

struct ThresholdResult {
    int threshold = 0;
    std::vector<ThresholdRow> table;
};

/// Least N <= n_max such that K embeds into every family member with
/// n in [N, n_max]; throws ThresholdNotFound (reporting the largest failing
/// n) when even n_max fails.
ThresholdResult convergence_threshold(const SheetComplex& source, const CompactRegion& K,
                                      const SurfaceFamily& family, int n_max,
                                      const Tolerances& tol = {});

/// Canonical compact exhaustion member for surfaces with at most one branch:
/// a disc polygon for the plane, otherwise the truncated annulus of outer
/// radius r around the branch, over all sheets (finite domain) or a window
/// growing with r (infinite), cut along the surface's slit direction and any
/// extra_cut_angles. Throws unsupported-input for multi-branch surfaces.
CompactRegion canonical_compact(const SheetComplex& s, const SurfacePoint& z0, double r,
                                const std::vector<double>& extra_cut_angles = {},
                                const Tolerances& tol = {});

/// Witness of limit uniqueness: for every listed radius, the canonical
/// compact of each surface embeds into the other with the reciprocal chart
/// translations.
bool mutual_embedding_test(const SheetComplex& s, const SurfacePoint& z0,
                           const SheetComplex& t, const SurfacePoint& z0_t,
                           const std::vector<double>& radii, const Tolerances& tol = {});

} // namespace logrs
