#include "logrs/json_io.hpp"

#include "logrs/errors.hpp"

namespace logrs {

namespace {

[[noreturn]] void bad_field(const std::string& where, const std::string& what) {
    throw_invalid("bad input at '" + where + "': " + what);
}

const Json& require(const Json& j, const char* key, const char* where) {
    if (!j.is_object() || !j.contains(key))
        bad_field(where, std::string("missing field '") + key + "'");
    return j.at(key);
}

} // namespace

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw_invalid("complex numbers are [re, im] pairs");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

std::string surface_kind(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw_invalid("surface description needs a string 'kind'");
    return j.at("kind").get<std::string>();
}

SheetComplex surface_from_json(const Json& j, const Tolerances& tol) {
    std::string kind = surface_kind(j);
    if (kind == "plane") return make_plane();
    if (kind == "nth_root") {
        const Json& n = require(j, "n", "nth_root");
        if (!n.is_number_integer()) bad_field("nth_root.n", "needs an integer");
        return make_nth_root(n.get<int>());
    }
    if (kind == "logarithm") return make_logarithm();
    if (kind == "polynomial") {
        const Json& coeffs = require(j, "coefficients", "polynomial");
        if (!coeffs.is_array()) bad_field("polynomial.coefficients", "needs an array");
        std::vector<Complex> c;
        for (const auto& e : coeffs) c.push_back(complex_from_json(e));
        return make_polynomial(PolynomialSpec(std::move(c)), tol);
    }
    if (kind == "sheet_complex") {
        const Json& dom = require(j, "sheet_domain", "sheet_complex");
        SheetDomain domain = SheetDomain::all_integers();
        if (dom.is_string() && dom.get<std::string>() == "all_integers") {
            // keep
        } else if (dom.is_object() && dom.contains("finite")) {
            domain = SheetDomain::finite(dom.at("finite").get<int>());
        } else {
            bad_field("sheet_complex.sheet_domain", "expected {\"finite\":N} or \"all_integers\"");
        }
        std::vector<SlitBranch> branches;
        for (const auto& bj : require(j, "branches", "sheet_complex")) {
            SlitBranch b;
            b.position = complex_from_json(require(bj, "position", "branch"));
            b.slit_angle = require(bj, "slit_angle", "branch").get<double>();
            const Json& mj = require(bj, "monodromy", "branch");
            if (mj.contains("cycles")) {
                std::vector<std::vector<int>> cycles;
                for (const auto& cj : mj.at("cycles"))
                    cycles.push_back(cj.get<std::vector<int>>());
                b.monodromy = Monodromy::cycles(std::move(cycles));
            } else if (mj.contains("shift")) {
                b.monodromy = Monodromy::shift(mj.at("shift").get<int>());
            } else {
                bad_field("branch.monodromy", "expected {\"cycles\":[[..]]} or {\"shift\":k}");
            }
            branches.push_back(std::move(b));
        }
        std::string label = j.value("label", std::string());
        return SheetComplex(domain, std::move(branches), std::move(label), tol);
    }
    throw_invalid("unknown surface kind '" + kind + "'");
}

Json surface_to_json(const SheetComplex& s) {
    Json j;
    j["kind"] = "sheet_complex";
    if (s.domain().is_finite()) j["sheet_domain"] = Json{{"finite", s.domain().count()}};
    else j["sheet_domain"] = "all_integers";
    Json branches = Json::array();
    for (const auto& b : s.branches()) {
        Json bj;
        bj["position"] = complex_to_json(b.position);
        bj["slit_angle"] = b.slit_angle;
        if (b.monodromy.is_shift()) {
            bj["monodromy"] = Json{{"shift", b.monodromy.shift_step()}};
        } else {
            Json cycles = Json::array();
            for (const auto& c : b.monodromy.cycle_list()) cycles.push_back(c);
            bj["monodromy"] = Json{{"cycles", cycles}};
        }
        branches.push_back(std::move(bj));
    }
    j["branches"] = std::move(branches);
    j["label"] = s.label();
    return j;
}

SurfacePoint point_from_json(const SheetComplex& s, const Json& j, const Tolerances& tol) {
    int sheet = require(j, "sheet", "point").get<int>();
    Complex w = complex_from_json(require(j, "w", "point"));
    std::optional<SlitSide> side;
    if (j.contains("slit_side")) {
        std::string v = j.at("slit_side").get<std::string>();
        if (v == "above") side = SlitSide::above;
        else if (v == "below") side = SlitSide::below;
        else bad_field("point.slit_side", "expected \"above\" or \"below\"");
    }
    return make_point(s, sheet, w, side, tol);
}

Json point_to_json(const SurfacePoint& p) {
    Json j;
    j["sheet"] = p.sheet;
    j["w"] = complex_to_json(p.w);
    if (p.slit_side) j["slit_side"] = (*p.slit_side == SlitSide::above) ? "above" : "below";
    return j;
}

Polyline polyline_from_json(const Json& j, const Tolerances& tol) {
    if (!j.is_array()) throw_invalid("a path is an array of [re, im] vertices");
    std::vector<Complex> verts;
    for (const auto& e : j) verts.push_back(complex_from_json(e));
    return make_polyline(std::move(verts), tol);
}

Json lifted_path_to_json(const LiftedPath& path) {
    Json j;
    j["start"] = point_to_json(path.start);
    Json steps = Json::array();
    for (const auto& s : path.steps) {
        Json sj;
        sj["segment"] = Json::array({complex_to_json(s.a), complex_to_json(s.b)});
        sj["sheet"] = s.sheet;
        steps.push_back(std::move(sj));
    }
    j["steps"] = std::move(steps);
    j["end"] = point_to_json(path.end);
    return j;
}

Json ramification_point_to_json(const RamificationPoint& r) {
    Json j;
    j["branch_index"] = r.branch_index;
    j["w"] = complex_to_json(r.w);
    if (r.order.is_infinite()) {
        j["order"] = "infinite";
        j["orbit"] = Json{{"step", r.orbit_step}, {"residue", r.orbit_residue}};
    } else {
        j["order"] = r.order.value();
        j["cycle"] = r.cycle;
    }
    return j;
}

Json distance_result_to_json(const DistanceResult& d) {
    Json j;
    j["value"] = d.value;
    Json witness = Json::array();
    for (const auto& node : d.witness) {
        if (std::holds_alternative<SurfacePoint>(node))
            witness.push_back(Json{{"point", point_to_json(std::get<SurfacePoint>(node))}});
        else
            witness.push_back(Json{
                {"ramification_point",
                 ramification_point_to_json(std::get<RamificationPoint>(node))}});
    }
    j["witness"] = std::move(witness);
    return j;
}

CompactRegion region_from_json(const SheetComplex& s, const SurfacePoint& basepoint,
                               const Json& j, const Tolerances& tol) {
    std::string kind = require(j, "kind", "region").get<std::string>();
    if (kind == "truncated_annulus") {
        const Json& sheets = require(j, "sheets", "truncated_annulus");
        if (!sheets.is_array() || sheets.size() != 2)
            bad_field("region.sheets", "expected [lo, hi]");
        return truncated_annulus_region(s, sheets[0].get<int>(), sheets[1].get<int>(),
                                        require(j, "epsilon", "region").get<double>(),
                                        require(j, "r", "region").get<double>(), basepoint, tol);
    }
    if (kind == "explicit") {
        std::vector<RegionPiece> pieces;
        for (const auto& pj : require(j, "pieces", "region")) {
            RegionPiece piece;
            piece.sheet = require(pj, "sheet", "piece").get<int>();
            for (const auto& vj : require(pj, "polygon", "piece"))
                piece.polygon.vertices.push_back(complex_from_json(vj));
            pieces.push_back(std::move(piece));
        }
        std::vector<RegionGluing> gluings;
        if (j.contains("gluings")) {
            for (const auto& gj : j.at("gluings")) {
                RegionGluing g;
                g.piece_from = require(gj, "from", "gluing").get<int>();
                g.piece_to = require(gj, "to", "gluing").get<int>();
                g.branch = require(gj, "branch", "gluing").get<int>();
                const Json& e = require(gj, "edge", "gluing");
                if (!e.is_array() || e.size() != 2) bad_field("gluing.edge", "expected 2 points");
                g.edge_a = complex_from_json(e[0]);
                g.edge_b = complex_from_json(e[1]);
                gluings.push_back(g);
            }
        }
        return make_compact_region(s, basepoint, std::move(pieces), std::move(gluings), tol);
    }
    throw_invalid("unknown region kind '" + kind + "'");
}

Json embedding_result_to_json(const EmbeddingResult& r) {
    Json j;
    j["found"] = r.found;
    j["translation"] = complex_to_json(r.translation);
    Json assign = Json::object();
    for (auto [piece, sheet] : r.sheet_assignment) assign[std::to_string(piece)] = sheet;
    j["sheet_assignment"] = std::move(assign);
    if (r.found) j["failure_reason"] = nullptr;
    else j["failure_reason"] = embed_failure_name(r.failure_reason);
    j["detail"] = r.detail;
    return j;
}

SurfaceFamily family_from_json(const Json& j, const Tolerances& tol) {
    std::string kind = require(j, "kind", "family").get<std::string>();
    if (kind == "nth-root-to-log") {
        Complex base(1, 0);
        if (j.contains("base")) base = complex_from_json(j.at("base"));
        return nth_root_family(base);
    }
    if (kind == "scaled-recentred" || kind == "constant") {
        SheetComplex s = surface_from_json(require(j, "surface", "family"), tol);
        SurfacePoint z0 = point_from_json(s, require(j, "z0", "family"), tol);
        return kind == "constant" ? constant_family(s, z0) : scaled_recentred_family(s, z0);
    }
    throw_invalid("unknown family kind '" + kind + "'");
}

} // namespace logrs
