#include "logrs/run.hpp"

#include "logrs/errors.hpp"
#include "logrs/json_io.hpp"
#include "logrs/uniformization.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace logrs {

namespace {

std::string fmt10(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

Json load_input(const std::string& in_path, const std::string& inline_json) {
    if (!in_path.empty() && !inline_json.empty())
        throw_invalid("give either --in or --json, not both");
    if (!in_path.empty()) {
        std::ifstream f(in_path);
        if (!f) throw_invalid("cannot open input file '" + in_path + "'");
        Json j;
        try {
            f >> j;
        } catch (const Json::parse_error& e) {
            throw_invalid(std::string("input is not valid JSON: ") + e.what());
        }
        return j;
    }
    if (inline_json.empty()) throw_invalid("an input document is required (--in or --json)");
    try {
        return Json::parse(inline_json);
    } catch (const Json::parse_error& e) {
        throw_invalid(std::string("input is not valid JSON: ") + e.what());
    }
}

struct Options {
    std::string subcommand;
    std::string in_path, inline_json, out_path;
    long seed = 0;
    double tol_dist = -1.0; // <0: default / env
    // euler flags
    std::vector<double> radii;
    std::vector<int> n_list;
    int samples = 4096;
    std::string family_name = "nth-root";
};

Tolerances resolve_tolerances(const Options& opt) {
    Tolerances tol;
    if (const char* env = std::getenv("LOGRS_TOL")) {
        try {
            tol.dist = std::stod(env);
        } catch (...) {
            throw_invalid("LOGRS_TOL is not a number");
        }
    }
    if (opt.tol_dist > 0) tol.dist = opt.tol_dist;
    return tol;
}

std::string run_info(const Options& opt, const Tolerances& tol) {
    Json in = load_input(opt.in_path, opt.inline_json);
    std::string kind = surface_kind(in);
    SheetComplex s = surface_from_json(in, tol);
    Json out;
    out["surface"] = surface_to_json(s);
    out["label"] = s.label();
    if (s.domain().is_finite()) out["degree"] = s.domain().count();
    else out["degree"] = "infinite";
    Json rams = Json::array();
    for (const auto& r : ramification_points(s)) rams.push_back(ramification_point_to_json(r));
    out["ramification_points"] = std::move(rams);
    if (kind != "sheet_complex")
        out["conformal_radius"] = conformal_radius(kind).is_infinite() ? "infinite" : "finite";
    out["seed"] = opt.seed;
    return out.dump(2) + "\n";
}

std::string run_lift(const Options& opt, const Tolerances& tol) {
    Json in = load_input(opt.in_path, opt.inline_json);
    SheetComplex s = surface_from_json(in.at("surface"), tol);
    SurfacePoint start = point_from_json(s, in.at("start"), tol);
    Polyline path = polyline_from_json(in.at("path"), tol);
    LiftedPath lifted = lift_path(s, start, path, tol);
    Json out = lifted_path_to_json(lifted);
    out["seed"] = opt.seed;
    return out.dump(2) + "\n";
}

std::string run_distance(const Options& opt, const Tolerances& tol) {
    Json in = load_input(opt.in_path, opt.inline_json);
    SheetComplex s = surface_from_json(in.at("surface"), tol);
    SurfacePoint p = point_from_json(s, in.at("p"), tol);
    SurfacePoint q = point_from_json(s, in.at("q"), tol);
    Json out = distance_result_to_json(distance(s, p, q, tol));
    out["seed"] = opt.seed;
    return out.dump(2) + "\n";
}

std::string run_embed(const Options& opt, const Tolerances& tol) {
    Json in = load_input(opt.in_path, opt.inline_json);
    SheetComplex source = surface_from_json(in.at("source"), tol);
    SurfacePoint z0 = point_from_json(source, in.at("z0"), tol);
    CompactRegion region = region_from_json(source, z0, in.at("region"), tol);
    SheetComplex target = surface_from_json(in.at("target"), tol);
    SurfacePoint zn = point_from_json(target, in.at("z_n"), tol);
    Json out = embedding_result_to_json(embed_check(source, region, target, zn, tol));
    out["seed"] = opt.seed;
    return out.dump(2) + "\n";
}

std::string run_converge(const Options& opt, const Tolerances& tol) {
    Json in = load_input(opt.in_path, opt.inline_json);
    SheetComplex source = surface_from_json(in.at("source"), tol);
    SurfacePoint z0 = point_from_json(source, in.at("z0"), tol);
    CompactRegion region = region_from_json(source, z0, in.at("region"), tol);
    SurfaceFamily family = family_from_json(in.at("family"), tol);
    int n_max = in.at("n_max").get<int>();
    ThresholdResult res = convergence_threshold(source, region, family, n_max, tol);
    Json out;
    out["threshold"] = res.threshold;
    Json table = Json::array();
    for (const auto& row : res.table) {
        Json rj;
        rj["n"] = row.n;
        rj["found"] = row.found;
        if (!row.found) rj["failure_reason"] = embed_failure_name(row.reason);
        table.push_back(std::move(rj));
    }
    out["table"] = std::move(table);
    out["family"] = family.kind;
    out["seed"] = opt.seed;
    return out.dump(2) + "\n";
}

std::string run_euler(const Options& opt, const Tolerances&) {
    if (opt.radii.empty()) throw_invalid("euler needs --radii");
    if (opt.n_list.empty()) throw_invalid("euler needs --n-list");
    std::vector<std::pair<std::string, ChartMapFamily>> families;
    if (opt.family_name == "nth-root" || opt.family_name == "both")
        families.emplace_back("nth-root", nth_root_chart_family());
    if (opt.family_name == "scaled-log" || opt.family_name == "both")
        families.emplace_back("scaled-log", scaled_log_chart_family());
    if (families.empty())
        throw_invalid("unknown family '" + opt.family_name + "' (nth-root, scaled-log, both)");

    std::ostringstream csv;
    csv << "family,r,n,sup_error,arg_max_re,arg_max_im\n";
    for (const auto& [name, fam] : families) {
        ConvergenceReport rep = convergence_report(fam, opt.radii, opt.n_list, opt.samples);
        for (const auto& row : rep.rows)
            csv << name << ',' << fmt10(row.r) << ',' << row.n << ',' << fmt10(row.sup_error)
                << ',' << fmt10(row.arg_max.real()) << ',' << fmt10(row.arg_max.imag()) << '\n';
    }
    return csv.str();
}

} // namespace

RunResult run_cli(const std::vector<std::string>& args) {
    Options opt;
    CLI::App app{"log-Riemann surfaces as slit-plane sheet complexes"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool with_input) {
        if (with_input) {
            sub->add_option("--in", opt.in_path, "input JSON file");
            sub->add_option("--json", opt.inline_json, "inline input JSON");
        }
        sub->add_option("--out", opt.out_path, "write the document to this path");
        sub->add_option("--seed", opt.seed, "seed recorded in the output");
        sub->add_option("--tol", opt.tol_dist, "override the distance tolerance");
    };

    add_common(app.add_subcommand("info", "describe a surface"), true);
    add_common(app.add_subcommand("lift", "lift a path through the projection"), true);
    add_common(app.add_subcommand("distance", "flat-metric distance between two points"), true);
    add_common(app.add_subcommand("embed", "test a compact region embedding"), true);
    add_common(app.add_subcommand("converge", "convergence threshold of a family"), true);
    CLI::App* euler = app.add_subcommand("euler", "sup-error tables for the chart families");
    add_common(euler, false);
    euler->add_option("--radii", opt.radii, "disc radii")->delimiter(',');
    euler->add_option("--n-list", opt.n_list, "family indices")->delimiter(',');
    euler->add_option("--samples", opt.samples, "boundary samples per circle");
    euler->add_option("--family", opt.family_name, "nth-root, scaled-log, or both");

    std::vector<std::string> argv_copy(args.rbegin(), args.rend());
    try {
        app.parse(argv_copy);
    } catch (const CLI::ParseError& e) {
        // CLI11 would print and exit; report as invalid input instead.
        if (e.get_exit_code() == 0) {
            std::ostringstream help;
            help << app.help();
            return {0, help.str()};
        }
        Json err;
        err["error"] = Json{{"kind", "invalid-argument"}, {"message", e.what()}};
        return {2, err.dump(2) + "\n"};
    }

    opt.subcommand = app.get_subcommands().front()->get_name();

    try {
        Tolerances tol = resolve_tolerances(opt);
        std::string doc;
        if (opt.subcommand == "info") doc = run_info(opt, tol);
        else if (opt.subcommand == "lift") doc = run_lift(opt, tol);
        else if (opt.subcommand == "distance") doc = run_distance(opt, tol);
        else if (opt.subcommand == "embed") doc = run_embed(opt, tol);
        else if (opt.subcommand == "converge") doc = run_converge(opt, tol);
        else if (opt.subcommand == "euler") doc = run_euler(opt, tol);
        else throw_invalid("unknown subcommand");
        return {0, doc, opt.out_path};
    } catch (const ThresholdNotFound& e) {
        Json err;
        err["error"] = Json{{"kind", error_kind_name(e.kind())},
                            {"message", e.what()},
                            {"largest_failing_n", e.largest_failing_n()}};
        return {4, err.dump(2) + "\n"};
    } catch (const Error& e) {
        Json err;
        err["error"] = Json{{"kind", error_kind_name(e.kind())}, {"message", e.what()}};
        int code = 2;
        if (e.kind() == ErrorKind::numeric_failure) code = 3;
        return {code, err.dump(2) + "\n"};
    } catch (const Json::exception& e) {
        Json err;
        err["error"] = Json{{"kind", "invalid-argument"}, {"message", e.what()}};
        return {2, err.dump(2) + "\n"};
    } catch (const std::exception& e) {
        Json err;
        err["error"] = Json{{"kind", "internal"}, {"message", e.what()}};
        return {1, err.dump(2) + "\n"};
    }
}

int run_main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    RunResult res = run_cli(args);
    if (!res.out_path.empty() && res.exit_code == 0) {
        std::ofstream f(res.out_path);
        if (!f) {
            std::cerr << "cannot write to '" << res.out_path << "'\n";
            return 2;
        }
        f << res.output;
    } else {
        std::cout << res.output;
    }
    return res.exit_code;
}

} // namespace logrs
