#include "snake/prob_snake.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>

#include "snake/errors.hpp"

namespace snake {

void PassConfig::validate() const {
    if (depth < 1) throw ConfigError("search depth must be >= 1");
    if (window_half < 0) throw ConfigError("window half-size must be >= 0");
    if (!(regularization >= 0.0) || !std::isfinite(regularization))
        throw ConfigError("regularization must be finite and >= 0");
    if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
    if (!(epsilon >= 0.0)) throw ConfigError("epsilon must be >= 0");
}

void Schedule::validate() const {
    pass1.validate();
    pass2.validate();
    if (!(resample_max_spacing > 0.0)) throw ConfigError("resample spacing must be > 0");
}

Schedule Schedule::closed_default() {
    Schedule s;
    s.pass1 = {.depth = 25, .window_half = 3, .regularization = 0.0};
    s.resample_max_spacing = 4.0;
    s.pass2 = {.depth = 5, .window_half = 3, .regularization = 1.0};
    return s;
}

Schedule Schedule::open_default() {
    Schedule s;
    s.pass1 = {.depth = 20, .window_half = 3, .regularization = 0.0};
    s.resample_max_spacing = 4.0;
    s.pass2 = {.depth = 5, .window_half = 3, .regularization = 0.0};
    return s;
}

DensityProfile score_profile(const IntegralTables& tables, Point knot, Point normal, const PassConfig& cfg) {
    DensityProfile p;
    p.depth = cfg.depth;
    p.raw.assign(2 * static_cast<std::size_t>(cfg.depth) + 1, 0.0);
    for (int j = -cfg.depth; j <= cfg.depth; ++j) {
        const Point q = knot + static_cast<double>(j) * normal;
        const double px = std::floor(q.x + 0.5);
        const double py = std::floor(q.y + 0.5);
        if (px < 0.0 || py < 0.0 || px >= tables.width() || py >= tables.height()) continue;
        p.raw[p.slot(j)] = tables.window_variance(static_cast<int>(px), static_cast<int>(py), cfg.window_half);
    }
    p.regularized = p.raw;
    return p;
}

double taper_weight(int offset, int depth, double regularization) {
    const double u = static_cast<double>(offset) / static_cast<double>(depth);
    return std::exp(-regularization * u * u);
}

DensityProfile regularize_profile(DensityProfile p, double regularization) {
    if (!(regularization >= 0.0)) throw ConfigError("regularization must be >= 0");
    p.regularized.resize(p.raw.size());
    if (regularization == 0.0) {
        p.regularized = p.raw;
        return p;
    }
    for (std::size_t s = 0; s < p.raw.size(); ++s)
        p.regularized[s] = p.raw[s] * taper_weight(p.offset(s), p.depth, regularization);
    return p;
}

int select_offset(const DensityProfile& p) {
    int best = 0;
    double best_score = p.regularized.empty() ? 0.0 : p.regularized[p.slot(0)];
    // Visit offsets 0, -1, +1, -2, +2, ...; only a strictly larger score wins,
    // which realizes the tie-break order.
    for (int k = 1; k <= p.depth; ++k) {
        for (int j : {-k, k}) {
            const double s = p.regularized[p.slot(j)];
            if (s > best_score) {
                best_score = s;
                best = j;
            }
        }
    }
    return best_score > 0.0 ? best : 0;
}

IterationResult iterate(const Curve& c, const IntegralTables& tables, const PassConfig& cfg) {
    const auto frame = normals(c);
    const std::size_t n = c.size();
    const double xmax = tables.width() - 1;
    const double ymax = tables.height() - 1;

    std::vector<int> offsets(n);
    std::vector<Point> moved(n);
    for (std::size_t i = 0; i < n; ++i) {
        DensityProfile prof = score_profile(tables, c[i], frame[i], cfg);
        prof.knot = i;
        offsets[i] = select_offset(regularize_profile(std::move(prof), cfg.regularization));
        const Point q = c[i] + static_cast<double>(offsets[i]) * frame[i];
        moved[i] = {std::clamp(q.x, 0.0, xmax), std::clamp(q.y, 0.0, ymax)};
    }

    // Undo moves that collapse a segment; reverting everything restores the
    // (valid) input, so this terminates.
    for (bool changed = true; changed;) {
        changed = false;
        const std::size_t segs = c.closed() ? n : n - 1;
        for (std::size_t s = 0; s < segs; ++s) {
            const std::size_t a = s;
            const std::size_t b = (s + 1) % n;
            if (moved[a] != moved[b]) continue;
            for (std::size_t k : {a, b}) {
                if (moved[k] != c[k]) {
                    moved[k] = c[k];
                    offsets[k] = 0;
                    changed = true;
                }
            }
        }
    }

    IterationResult r;
    for (std::size_t i = 0; i < n; ++i) r.max_displacement = std::max(r.max_displacement, distance(moved[i], c[i]));
    r.curve = Curve(std::move(moved), c.closed());
    r.offsets = std::move(offsets);
    return r;
}

std::pair<Curve, PassStats> run_pass(const Curve& c, const IntegralTables& tables, const PassConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    PassStats st;
    st.knots = c.size();
    Curve cur = c;
    while (st.iterations < cfg.max_iterations) {
        auto step = iterate(cur, tables, cfg);
        cur = std::move(step.curve);
        ++st.iterations;
        st.displacements.push_back(step.max_displacement);
        // Rounding in knot + j*n can exceed an integral epsilon by ulps.
        if (step.max_displacement <= cfg.epsilon + 1e-9) {
            st.converged = true;
            break;
        }
    }
    st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {std::move(cur), std::move(st)};
}

FitReport fit(const Curve& c0, const GrayImage& img, const Schedule& schedule) {
    schedule.validate();
    if (!c0.inside(img.width(), img.height())) throw GeometryError("initial curve leaves the image");

    const auto start = std::chrono::steady_clock::now();
    const IntegralTables tables(img);
    const double build = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    FitReport report;
    auto [coarse, s1] = run_pass(c0, tables, schedule.pass1);
    s1.name = "pass1";
    s1.seconds += build;
    const Curve dense = resample(coarse, schedule.resample_max_spacing);
    auto [fine, s2] = run_pass(dense, tables, schedule.pass2);
    s2.name = "pass2";
    report.curve = std::move(fine);
    report.passes = {std::move(s1), std::move(s2)};
    return report;
}

}  // namespace snake
