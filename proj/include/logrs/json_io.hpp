#pragma once

#include "logrs/caratheodory.hpp"
#include "logrs/continuation.hpp"
#include "logrs/metric.hpp"
#include "logrs/surface.hpp"

#include <json.hpp>

namespace logrs {

using Json = nlohmann::json;

// Surfaces. Parsing accepts the constructor shorthands ("plane", "nth_root",
// "logarithm", "polynomial") and the explicit "sheet_complex" form; emission
// always writes the explicit form.
SheetComplex surface_from_json(const Json& j, const Tolerances& tol = {});
Json surface_to_json(const SheetComplex& s);

/// The shorthand kind of a surface description ("sheet_complex" when explicit).
std::string surface_kind(const Json& j);

Complex complex_from_json(const Json& j);
Json complex_to_json(Complex z);

SurfacePoint point_from_json(const SheetComplex& s, const Json& j, const Tolerances& tol = {});
Json point_to_json(const SurfacePoint& p);

Polyline polyline_from_json(const Json& j, const Tolerances& tol = {});

Json lifted_path_to_json(const LiftedPath& path);
Json distance_result_to_json(const DistanceResult& d);
Json ramification_point_to_json(const RamificationPoint& r);

/// Region specs: {"kind":"truncated_annulus","sheets":[lo,hi],"epsilon":e,"r":R}
/// (basepoint supplied separately) or {"kind":"explicit","pieces":[...],
/// "gluings":[...]}.
CompactRegion region_from_json(const SheetComplex& s, const SurfacePoint& basepoint,
                               const Json& j, const Tolerances& tol = {});

Json embedding_result_to_json(const EmbeddingResult& r);

/// Family specs: {"kind":"nth-root-to-log","base":[re,im]?} or
/// {"kind":"scaled-recentred"|"constant","surface":{...},"z0":{...}}.
SurfaceFamily family_from_json(const Json& j, const Tolerances& tol = {});

} // namespace logrs
