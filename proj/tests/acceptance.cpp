// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "snake/casp.hpp"
#include "snake/cli.hpp"
#include "snake/curve_io.hpp"
#include "snake/image_io.hpp"
#include "snake/integral.hpp"
#include "snake/kass.hpp"
#include "snake/prob_snake.hpp"
#include "snake/scene.hpp"
#include "snake/simd/kernels.hpp"

namespace {

using namespace snake;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

char buf[512];

template <typename... A>
std::string fmt(const char* f, A... a) {
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Scene disk_scene() {
    SceneParams p;
    p.width = p.height = 256;
    p.radius = 40;
    p.low = 0;
    p.high = 100;
    p.noise = 5;
    p.seed = 7;
    return make_scene(SceneKind::Disk, p);
}

std::pair<double, double> mean_max_distance(const Curve& c, const GroundTruth& t, std::size_t skip_ends = 0) {
    double s = 0.0, m = 0.0;
    std::size_t n = 0;
    for (std::size_t i = skip_ends; i + skip_ends < c.size(); ++i) {
        const double d = t.distance(c[i]);
        s += d;
        m = std::max(m, d);
        ++n;
    }
    return {s / static_cast<double>(n), m};
}

Outcome window_statistics() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> coord(0, 31), half(0, 6);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const GrayImage img = oracle::random_image(32, 32, rng);
        const IntegralTables t(img);
        for (int w = 0; w < 200; ++w) {
            const int cx = coord(rng), cy = coord(rng), h = half(rng);
            const auto [mean, var] = oracle::window_mean_var(img, cx, cy, h);
            const WindowStats s = t.window_stats(cx, cy, h);
            worst = std::max(worst, std::abs(s.variance - var) / std::max(std::abs(var), 1.0));
            worst = std::max(worst, std::abs(s.mean - mean) / std::max(std::abs(mean), 1.0));
        }
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-9 && secs < 5.0, fmt("max rel err %.2e, %.3f s", worst, secs)};
}

Outcome variance_peak_at_edge() {
    const auto t0 = Clock::now();
    SceneParams p;
    p.width = p.height = 128;
    p.edge_column = 64;
    const Scene s = make_scene(SceneKind::StepEdge, p);
    const IntegralTables tables(s.image);
    PassConfig cfg;
    cfg.depth = 25;
    cfg.window_half = 3;
    int tested = 0;
    double worst = 0.0;
    for (double angle_deg : {0.0, 15.0, 30.0, -20.0, 180.0}) {
        const double a = angle_deg * 3.14159265358979323846 / 180.0;
        const Point n{std::cos(a), std::sin(a)};
        for (double y = 20; y <= 108; y += 11) {
            for (double dx = -20; dx <= 20; dx += 3.5) {
                const Point knot{63.5 + dx, y};
                // Only knots whose search segment crosses the edge.
                const double reach = cfg.depth * std::abs(n.x);
                if (std::abs(dx) + 1.0 > reach) continue;
                const DensityProfile prof = score_profile(tables, knot, n, cfg);
                const int j = select_offset(prof);
                const Point hit = knot + static_cast<double>(j) * n;
                worst = std::max(worst, s.truth.distance(hit));
                ++tested;
            }
        }
    }
    const double secs = seconds_since(t0);
    return {tested > 0 && worst <= 1.0 && secs < 1.0,
            fmt("%d knots, max |argmax - edge| %.3f px, %.3f s", tested, worst, secs)};
}

Outcome closed_fit() {
    const Scene s = disk_scene();
    const Curve init = circle_curve(s.truth.center, 55.0, 14);
    const auto t0 = Clock::now();
    const FitReport r = fit(init, s.image, Schedule::closed_default());
    const double secs = seconds_since(t0);
    const auto [mean, mx] = mean_max_distance(r.curve, s.truth);
    return {mean <= 1.0 && mx <= 2.5 && secs < 1.0,
            fmt("mean %.3f px, max %.3f px, %zu knots, %.4f s", mean, mx, r.curve.size(), secs)};
}

Outcome open_fit() {
    SceneParams p;
    p.width = p.height = 256;
    const Scene s = make_scene(SceneKind::PolylineEdge, p);
    // Sample the true polyline and push each sample 10 px along its normal.
    const Curve dense = resample(s.truth.curve, 20.0);
    const auto ns = normals(dense);
    std::vector<Point> knots;
    for (std::size_t i = 0; i < dense.size(); ++i) {
        Point k = dense[i] + 10.0 * ns[i];
        k.y = std::clamp(k.y, 0.0, 255.0);
        knots.push_back(k);
    }
    const Curve init(knots, false);
    const auto [init_mean, init_max] = mean_max_distance(init, s.truth, 1);
    const auto t0 = Clock::now();
    const FitReport r = fit(init, s.image, Schedule::open_default());
    const double secs = seconds_since(t0);
    const auto [mean, mx] = mean_max_distance(r.curve, s.truth, 1);
    return {mean <= 1.5 && secs < 1.0 && init_mean > 9.0,
            fmt("init mean %.2f px, interior mean %.3f px (max %.3f), %zu knots, %.4f s", init_mean, mean, mx,
                r.curve.size(), secs)};
}

Outcome speed_ordering() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "snakefit_acceptance_bench";
    fs::create_directories(dir);
    const Scene s = disk_scene();
    save_pgm(dir / "disk.pgm", s.image);
    save_curve(dir / "init.json", circle_curve(s.truth.center, 55.0, 14));
    cli::BenchConfig cfg;
    cfg.image = dir / "disk.pgm";
    cfg.init = dir / "init.json";
    cfg.models = {cli::Model::Prob, cli::Model::Kass};
    cfg.reps = 7;
    cfg.out_csv = dir / "bench.csv";
    std::ostringstream out, err;
    const int code = cli::cmd_bench(cfg, out, err);
    if (code != cli::kOk) {
        fs::remove_all(dir);
        return {false, "cmd_bench exit " + std::to_string(code) + ": " + err.str()};
    }
    const cli::BenchReport rep = cli::bench(cfg);
    fs::remove_all(dir);
    const auto& prob = rep.rows.at(0);
    const auto& kass = rep.rows.at(1);
    const double ratio = kass.median_seconds / prob.median_seconds;
    return {ratio >= 10.0 && rep.reps >= 5,
            fmt("prob %.1f us (%zu knots), kass %.1f us (%zu knots, %d it), ratio %.1fx", prob.median_seconds * 1e6,
                prob.knots, kass.median_seconds * 1e6, kass.knots, kass.iterations, ratio)};
}

Outcome regularization_behavior() {
    auto profile = [](double near, double far) {
        DensityProfile p;
        p.depth = 25;
        p.raw.assign(51, 0.0);
        p.raw[p.slot(-3)] = near;
        p.raw[p.slot(20)] = far;
        p.regularized = p.raw;
        return p;
    };
    const DensityProfile tie = profile(1.0, 1.0);
    const DensityProfile far_wins = profile(1.0, 1.2);
    const int tie_reg1 = select_offset(regularize_profile(tie, 1.0));
    const int tie_reg0 = select_offset(regularize_profile(tie, 0.0));
    const int far_reg1 = select_offset(regularize_profile(far_wins, 1.0));
    const int far_reg0 = select_offset(regularize_profile(far_wins, 0.0));
    return {tie_reg1 == -3 && tie_reg0 == -3 && far_reg1 == -3 && far_reg0 == 20,
            fmt("tie: reg1 %d reg0 %d; far larger: reg1 %d reg0 %d", tie_reg1, tie_reg0, far_reg1, far_reg0)};
}

Outcome casp_descent() {
    SceneParams p;
    p.width = p.height = 256;
    p.low = 50;
    p.high = 150;
    p.noise = 10;
    p.radius = 40;
    p.seed = 11;
    const Scene s = make_scene(SceneKind::TwoRegionGaussian, p);
    const Point c = s.truth.center;
    const double half = 28.0;
    const Point corners[] = {{c.x - half, c.y - half}, {c.x + half, c.y - half}, {c.x + half, c.y + half},
                             {c.x - half, c.y + half}};
    std::vector<Point> knots;
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 6; ++i) knots.push_back(corners[k] + (i / 6.0) * (corners[(k + 1) % 4] - corners[k]));
    const Curve init(knots, true);
    CaspParams params;
    params.max_deviation = 5;
    params.iterations = 3000;
    params.regularization = 0.2;
    params.seed = 2024;
    const auto t0 = Clock::now();
    const CaspResult r = casp_optimize(init, s.image, params);
    const double secs = seconds_since(t0);
    bool monotone = true;
    for (std::size_t i = 1; i < r.j_trace.size(); ++i) monotone = monotone && r.j_trace[i] <= r.j_trace[i - 1];
    const double d0 = mean_max_distance(init, s.truth).first;
    const double d1 = mean_max_distance(r.report.curve, s.truth).first;
    return {monotone && r.j_trace.back() < r.j_trace.front() && d1 < d0 && secs < 10.0,
            fmt("J %.1f -> %.1f over %zu accepted, distance %.2f -> %.2f px, %.3f s", r.j_trace.front(),
                r.j_trace.back(), r.accepted, d0, d1, secs)};
}

Outcome kass_sanity() {
    const Scene s = disk_scene();
    KassParams params;  // 0.1, 0.1, 0.5
    const FitReport r = kass_fit(circle_curve(s.truth.center, 50.0, 64), s.image, params);
    const double mean = mean_max_distance(r.curve, s.truth).first;

    const ExternalForce zero(gradient(GrayImage(256, 256, 5.0)));
    Curve c = circle_curve(s.truth.center, 50.0, 32);
    bool shrinking = true;
    for (int i = 0; i < 10; ++i) {
        const double before = c.length();
        c = kass_step(c, params, zero);
        shrinking = shrinking && c.length() < before;
    }
    return {mean <= 2.0 && shrinking,
            fmt("mean %.3f px after %d it, zero-force perimeter %s", mean, r.total_iterations(),
                shrinking ? "strictly decreasing" : "NOT decreasing")};
}

Outcome geometry_invariants() {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> coord(0.0, 200.0), spacing(0.5, 10.0);
    std::uniform_int_distribution<int> count(3, 20);
    double worst_gap = 0.0, worst_off = 0.0;
    bool spacing_ok = true;
    for (int k = 0; k < 100; ++k) {
        std::vector<Point> pts;
        const int n = count(rng);
        while (static_cast<int>(pts.size()) < n) {
            const Point p{coord(rng), coord(rng)};
            if (pts.empty() || distance(pts.back(), p) > 1e-3) pts.push_back(p);
        }
        const bool closed = k % 2 == 0;
        if (closed && distance(pts.front(), pts.back()) <= 1e-3) pts.pop_back();
        const Curve c(pts, closed);
        const double max_spacing = spacing(rng);
        const Curve r = resample(c, max_spacing);
        for (std::size_t i = 0; i < r.segment_count(); ++i) {
            const double gap = distance(r.segment_start(i), r.segment_end(i));
            worst_gap = std::max(worst_gap, gap / max_spacing);
            spacing_ok = spacing_ok && gap <= max_spacing + 1e-9;
        }
        for (const Point& q : r.knots()) worst_off = std::max(worst_off, polyline_distance(c, q));
    }

    const Curve base = circle_curve({50, 50}, 20, 11);
    std::vector<Point> moved = base.knots();
    for (Point& q : moved) q += Point{123.25, -47.5};
    const double prior_a = prior_log_density(base, 2.0);
    const double prior_b = prior_log_density(Curve(moved, true), 2.0);
    const double prior_err = std::abs(prior_a - prior_b);

    int mismatches = 0;
    for (int k = 0; k < 50; ++k) {
        const auto poly = oracle::random_convex_polygon(rng, {32.3, 29.7}, 5.0, 25.0);
        if (poly.size() < 3) continue;
        const RegionMask m = rasterize_region(Curve(poly, true), 64, 64);
        std::size_t expected = 0;
        for (int y = 0; y < 64; ++y)
            for (int x = 0; x < 64; ++x) {
                const bool in = oracle::point_in_polygon(poly, x, y);
                expected += in;
                mismatches += in != static_cast<bool>(m.inside[static_cast<std::size_t>(y) * 64 + x]);
            }
        mismatches += expected != m.inside_count;
    }
    return {spacing_ok && worst_off <= 1e-9 && prior_err <= 1e-9 && mismatches == 0,
            fmt("max gap/spacing %.4f, max off-curve %.1e, prior diff %.1e, raster mismatches %d", worst_gap,
                worst_off, prior_err, mismatches)};
}

Outcome determinism() {
    const Scene s = disk_scene();
    const Curve init = circle_curve(s.truth.center, 55.0, 14);
    cli::ModelParams params;
    params.casp.seed = 99;
    params.casp.iterations = 1000;
    std::string detail;
    bool ok = true;
    for (cli::Model m : {cli::Model::Prob, cli::Model::Kass, cli::Model::Casp}) {
        const Curve start = m == cli::Model::Prob ? init : resample(init, 4.0);
        const std::string a = curve_to_json(cli::run_model(m, start, s.image, params).curve);
        const std::string b = curve_to_json(cli::run_model(m, start, s.image, params).curve);
        const bool same = a == b;
        ok = ok && same;
        detail += cli::model_name(m) + (same ? " identical" : " DIFFERS") + "; ";
    }
    return {ok, detail + "isa " + std::string(simd::isa_name(simd::kernels().isa))};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"window statistics match brute force", window_statistics},
        {"variance peak sits on the edge", variance_peak_at_edge},
        {"closed-curve fit on disk scene", closed_fit},
        {"open-curve fit on polyline scene", open_fit},
        {"prob fit at least 10x faster than kass", speed_ordering},
        {"regularization prefers the near peak", regularization_behavior},
        {"casp criterion descends", casp_descent},
        {"kass baseline sanity", kass_sanity},
        {"geometry invariants", geometry_invariants},
        {"byte-identical repeated runs", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s  %2zu  %-40s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
