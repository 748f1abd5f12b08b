// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Usage: logrs_acceptance [--cli /path/to/logrs]

#include "logrs/caratheodory.hpp"
#include "logrs/continuation.hpp"
#include "logrs/errors.hpp"
#include "logrs/metric.hpp"
#include "logrs/run.hpp"
#include "logrs/surface.hpp"
#include "logrs/uniformization.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

using namespace logrs;

namespace {

std::string g_cli_path;

struct Criterion {
    int number;
    std::string title;
    std::function<void(std::ostringstream&)> body; // throws on failure
    double time_limit_s = 0.0;                     // 0: no bound
};

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

std::string run_cli_binary(const std::string& args) {
    if (g_cli_path.empty()) {
        // Fall back to the in-process entry point (same code path as main).
        std::istringstream split(args);
        std::vector<std::string> argv;
        for (std::string tok; split >> tok;) argv.push_back(tok);
        RunResult res = run_cli(argv);
        expect(res.exit_code == 0, "CLI exited with code " + std::to_string(res.exit_code));
        return res.output;
    }
    std::string cmd = g_cli_path + " " + args;
    FILE* pipe = popen(cmd.c_str(), "r");
    expect(pipe != nullptr, "failed to launch the CLI");
    std::string out;
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, got);
    int status = pclose(pipe);
    expect(status == 0, "CLI exited with status " + std::to_string(status));
    return out;
}

SurfacePoint sample_point(std::mt19937& rng, int lo, int hi) {
    std::uniform_real_distribution<double> rad(0.1, 3.0);
    std::uniform_real_distribution<double> ang(-M_PI + 1e-3, M_PI - 1e-3);
    std::uniform_int_distribution<int> sheet(lo, hi);
    return SurfacePoint{sheet(rng), std::polar(rad(rng), ang(rng)), {}};
}

double cone_closed_form(const SheetComplex& s, const SurfacePoint& p, const SurfacePoint& q) {
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

// --- criteria ---

void criterion_euler_table(std::ostringstream& log) {
    std::string csv = run_cli_binary("euler --radii 1 --n-list 10,100,1000");
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    expect(header == "family,r,n,sup_error,arg_max_re,arg_max_im", "unexpected CSV header");
    int rows = 0;
    for (std::string line; std::getline(lines, line);) {
        if (line.empty()) continue;
        std::istringstream cells(line);
        std::string family, r_s, n_s, err_s;
        std::getline(cells, family, ',');
        std::getline(cells, r_s, ',');
        std::getline(cells, n_s, ',');
        std::getline(cells, err_s, ',');
        int n = std::stoi(n_s);
        double reported = std::stod(err_s);
        double closed = std::exp(1.0) - std::pow(1.0 + 1.0 / n, n);
        expect(std::abs(reported - closed) < 1e-9,
               "sup error mismatch at n = " + n_s + ": reported " + err_s);
        ++rows;
    }
    expect(rows == 3, "expected 3 CSV rows");
    log << "3 rows match e - (1+1/n)^n to 1e-9";
}

void criterion_rate(std::ostringstream& log) {
    ChartMapFamily f = nth_root_chart_family();
    for (int n : {100, 1000}) {
        double err = sup_error_on_disc(f.member(n), f.limit(), 1.0, 4096).value;
        double rate = n * err;
        expect(rate >= 1.22 && rate <= 1.50,
               "rate " + std::to_string(rate) + " outside [1.22, 1.50] at n = " +
                   std::to_string(n));
        log << "n=" << n << ": " << rate << "  ";
    }
    log << "(limit e/2 = " << std::exp(1.0) / 2 << ")";
}

void criterion_scaled_family(std::ostringstream& log) {
    ChartMapFamily f = scaled_log_chart_family();
    for (int n : {10, 100}) {
        double err = sup_error_on_disc(f.member(n), f.limit(), 1.0, 4096).value;
        double closed = n * (std::exp(1.0 / n) - 1.0) - 1.0;
        expect(std::abs(err - closed) < 1e-9,
               "scaled-family sup error mismatch at n = " + std::to_string(n));
        log << "n=" << n << ": " << err << "  ";
    }
}

void criterion_loop_order(std::ostringstream& log) {
    for (int n = 2; n <= 12; ++n) {
        SheetComplex s = make_nth_root(n);
        auto r = ramification_points(s).front();
        LoopOrder lo = loop_order(s, r, 0.5, n + 5);
        expect(lo.closed && lo.laps == n,
               "loop order of nth_root(" + std::to_string(n) + ") is not " + std::to_string(n));
    }
    SheetComplex slog = make_logarithm();
    LoopOrder lo = loop_order(slog, ramification_points(slog).front(), 0.5, 50);
    expect(!lo.closed && lo.laps == 50, "logarithm loop closed unexpectedly");
    log << "orders 2..12 exact; logarithm open after 50 laps";
}

void criterion_distance_oracle(std::ostringstream& log) {
    std::mt19937 rng(20240811);
    double worst = 0.0;
    for (int n : {2, 3, 5, 8}) {
        SheetComplex s = make_nth_root(n);
        for (int k = 0; k < 200; ++k) {
            auto p = sample_point(rng, 0, n - 1);
            auto q = sample_point(rng, 0, n - 1);
            worst = std::max(worst,
                             std::abs(distance(s, p, q).value - cone_closed_form(s, p, q)));
        }
    }
    SheetComplex slog = make_logarithm();
    for (int k = 0; k < 200; ++k) {
        auto p = sample_point(rng, -6, 6);
        auto q = sample_point(rng, -6, 6);
        worst = std::max(worst,
                         std::abs(distance(slog, p, q).value - cone_closed_form(slog, p, q)));
    }
    expect(worst < 1e-9, "closed-form disagreement " + std::to_string(worst));

    // Mesh oracle spot checks at ~1e5 nodes.
    SheetComplex s3 = make_nth_root(3);
    oracle::MeshDistance mesh3(s3, 0, 2, 0.02, 3.2, 64, 512);
    auto p3 = make_point(s3, 0, Complex(1, 0));
    auto q3 = make_point(s3, 1, Complex(1, 0));
    double d3 = distance(s3, p3, q3).value;
    expect(std::abs(d3 - 2.0) < 1e-12, "d((0,1),(1,1)) on nth_root(3) is not 2");
    expect(std::abs(mesh3.distance(p3, q3) - d3) < 1e-3, "mesh oracle disagrees on nth_root(3)");

    oracle::MeshDistance meshl(slog, -1, 6, 0.02, 3.2, 24, 512);
    auto pl = make_point(slog, 0, Complex(1, 0));
    auto ql = make_point(slog, 5, Complex(1, 0));
    double dl = distance(slog, pl, ql).value;
    expect(std::abs(dl - 2.0) < 1e-12, "d((0,1),(5,1)) on the logarithm is not 2");
    expect(std::abs(meshl.distance(pl, ql) - dl) < 1e-3, "mesh oracle disagrees on the logarithm");

    log << "1000 pairs, |delta| <= " << worst << "; mesh nodes " << mesh3.node_count() << "/"
        << meshl.node_count();
}

void criterion_lipschitz(std::ostringstream& log) {
    std::mt19937 rng(77);
    int checked = 0;
    auto run_surface = [&](const SheetComplex& s, int lo, int hi) {
        for (int k = 0; k < 500; ++k) {
            auto p = sample_point(rng, lo, hi);
            auto q = sample_point(rng, lo, hi);
            double d = distance(s, p, q).value;
            expect(d >= std::abs(p.w - q.w) - 1e-12, "Lipschitz bound violated");
            ++checked;
        }
    };
    for (int n : {2, 3, 5, 8}) run_surface(make_nth_root(n), 0, n - 1);
    run_surface(make_logarithm(), -6, 6);
    log << checked << " pairs satisfy d >= |dw| - 1e-12";
}

void criterion_polynomial_builder(std::ostringstream& log) {
    SheetComplex cubic = make_polynomial(PolynomialSpec({{0, 0}, {-3, 0}, {0, 0}, {1, 0}}));
    auto rams = ramification_points(cubic);
    expect(rams.size() == 2, "z^3 - 3z does not have two ramification points");
    for (const auto& r : rams) expect(r.order.value() == 2, "order is not 2");
    expect(std::abs(cubic.branches()[0].position - Complex(-2, 0)) < 1e-9 &&
               std::abs(cubic.branches()[1].position - Complex(2, 0)) < 1e-9,
           "critical values are not -2, +2");

    auto infinity_cycle_ok = [](const SheetComplex& s) {
        // Lift a large loop once per start sheet and check one full cycle.
        Complex center = 0.0;
        for (const auto& b : s.branches()) center += b.position;
        center /= (double)s.branches().size();
        double radius = 2.0;
        for (const auto& b : s.branches())
            radius = std::max(radius, 2.5 * std::abs(b.position - center) + 2.0);
        double theta0 = s.branches().front().slit_angle;
        std::vector<Complex> verts;
        for (int k = 0; k <= 64; ++k)
            verts.push_back(center +
                            std::polar(radius, theta0 + M_PI + (k % 64 + 0.37) * M_PI / 32));
        verts.back() = verts.front();
        Polyline loop{verts};
        int n = s.domain().count();
        int cur = 0, steps = 0;
        do {
            cur = lift_path(s, SurfacePoint{cur, verts.front(), {}}, loop).end.sheet;
            ++steps;
        } while (cur != 0 && steps <= n + 1);
        return steps == n;
    };
    expect(infinity_cycle_ok(cubic), "monodromy at infinity of z^3 - 3z is not a 3-cycle");

    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_int_distribution<int> deg(2, 6);
    int accepted = 0, attempts = 0;
    while (accepted < 20 && attempts < 500) {
        ++attempts;
        int d = deg(rng);
        std::vector<Complex> c;
        for (int k = 0; k <= d; ++k) c.push_back(Complex(coeff(rng), coeff(rng)));
        if (std::abs(c.back()) < 0.3) continue;
        SheetComplex s = make_plane();
        try {
            s = make_polynomial(PolynomialSpec(c));
        } catch (const Error&) {
            continue;
        }
        double sep = 1e18;
        for (std::size_t i = 0; i < s.branches().size(); ++i)
            for (std::size_t j = i + 1; j < s.branches().size(); ++j)
                sep = std::min(sep,
                               std::abs(s.branches()[i].position - s.branches()[j].position));
        if (sep < 1e-2) continue;
        ++accepted;
        int total = 0;
        for (const auto& r : ramification_points(s)) total += r.order.value() - 1;
        expect(total == d - 1, "degree count violated on a random polynomial");
        expect(infinity_cycle_ok(s), "monodromy at infinity is not a single cycle");
    }
    expect(accepted == 20, "could not build 20 random polynomial surfaces");
    log << "z^3-3z exact; 20 random surfaces pass the degree and infinity checks";
}

void criterion_thresholds(std::ostringstream& log) {
    SheetComplex slog = make_logarithm();
    auto base = make_point(slog, 0, Complex(1, 0));
    SurfaceFamily family = nth_root_family();
    for (int m : {1, 2, 3}) {
        CompactRegion K = truncated_annulus_region(slog, -m, m, 0.1, 2.0, base);
        ThresholdResult res = convergence_threshold(slog, K, family, 2 * m + 3, {});
        expect(res.threshold == 2 * m + 1,
               "threshold for m = " + std::to_string(m) + " is " +
                   std::to_string(res.threshold));
        bool seen = false;
        for (const auto& row : res.table) {
            if (seen) expect(row.found, "embed results are not monotone in n");
            if (row.found) seen = true;
            auto [surface, zn] = family.member(row.n);
            bool oracle_found =
                oracle::exhaustive_embed_search(slog, K, surface, zn).has_value();
            expect(oracle_found == row.found, "exhaustive oracle disagrees at n = " +
                                                  std::to_string(row.n));
        }
        log << "m=" << m << ": N=" << res.threshold << "  ";
    }
}

void criterion_uniqueness(std::ostringstream& log) {
    SheetComplex slog = make_logarithm();
    auto a = make_point(slog, 0, Complex(1, 0));
    auto b = make_point(slog, 7, Complex(1, 0));
    expect(mutual_embedding_test(slog, a, slog, b, {1.8, 2.5}),
           "relabeled logarithm copies do not mutually embed");

    SheetComplex s3 = make_nth_root(3);
    std::vector<SlitBranch> rotated{{Complex(0, 0), M_PI, Monodromy::cycles({{2, 0, 1}})}};
    SheetComplex s3_rot(SheetDomain::finite(3), rotated, "rotated");
    auto c = make_point(s3, 0, Complex(1, 0));
    auto d = make_point(s3_rot, 2, Complex(1, 0));
    expect(mutual_embedding_test(s3, c, s3_rot, d, {1.7}),
           "rotated-cycle cube roots do not mutually embed");

    SheetComplex s2 = make_nth_root(2);
    auto e = make_point(s2, 0, Complex(1, 0));
    expect(!mutual_embedding_test(s2, e, s3, c, {2.0}),
           "nth_root(2) and nth_root(3) must not mutually embed");
    log << "log relabeling: yes; rotated cycle: yes; 2 vs 3 sheets: no";
}

void criterion_normalization(std::ostringstream& log) {
    ChartMapFamily root = nth_root_chart_family();
    ChartMapFamily scaled = scaled_log_chart_family();
    double worst = 0.0;
    for (int n = 1; n <= 10000; ++n) {
        worst = std::max(worst, std::abs(fd_derivative_at_zero(root.member(n).eval) - 1.0));
        worst = std::max(worst, std::abs(fd_derivative_at_zero(scaled.member(n).eval) - 1.0));
    }
    expect(worst < 1e-8, "finite-difference derivative strays from 1 by " +
                             std::to_string(worst));
    log << "20000 members, max |h'(0) - 1| = " << worst;
}

} // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") g_cli_path = argv[i + 1];

    std::vector<Criterion> criteria{
        {1, "Euler table: sup errors match e - (1+1/n)^n to 1e-9", criterion_euler_table, 1.0},
        {2, "rate n*sup_error(r=1) within [1.22, 1.50]", criterion_rate, 1.0},
        {3, "scaled family sup errors match n(e^{1/n}-1) - 1 to 1e-9", criterion_scaled_family,
         0.0},
        {4, "loop orders: nth_root(2..12) exact, logarithm unbounded", criterion_loop_order, 1.0},
        {5, "distance matches the cone closed form and the mesh oracle",
         criterion_distance_oracle, 30.0},
        {6, "Lipschitz bound d >= |dw| - 1e-12 on 2500 pairs", criterion_lipschitz, 0.0},
        {7, "polynomial builder: degree counts and monodromy at infinity",
         criterion_polynomial_builder, 10.0},
        {8, "convergence thresholds N(K) = 2m+1 with the exhaustive oracle",
         criterion_thresholds, 0.0},
        {9, "mutual embeddings witness limit uniqueness", criterion_uniqueness, 0.0},
        {10, "normalization (pi_n . G_n)'(0) = 1 to 1e-8 up to n = 10^4",
         criterion_normalization, 0.0},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        std::ostringstream log;
        auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            c.body(log);
        } catch (const std::exception& e) {
            error = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
        bool timed_out = c.time_limit_s > 0 && secs > c.time_limit_s;
        bool ok = error.empty() && !timed_out;
        if (!ok) ++failures;
        std::printf("[%s] criterion %2d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", c.number,
                    c.title.c_str(), secs);
        if (!error.empty()) std::printf("        %s\n", error.c_str());
        if (timed_out)
            std::printf("        exceeded the %.0fs budget\n", c.time_limit_s);
        else if (!log.str().empty())
            std::printf("        %s\n", log.str().c_str());
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all 10 criteria passed\n");
    return failures == 0 ? 0 : 1;
}
