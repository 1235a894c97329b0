#include "snake/casp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "snake/errors.hpp"
#include "snake/simd/kernels.hpp"

namespace snake {

void CaspParams::validate() const {
    if (!(max_deviation >= 1.0)) throw ConfigError("max_deviation must be >= 1");
    if (iterations < 1) throw ConfigError("iterations must be >= 1");
    if (!(regularization >= 0.0)) throw ConfigError("regularization must be >= 0");
    if (!std::isfinite(k_l)) throw ConfigError("k_l must be finite");
}

double RegionMoments::variance() const {
    if (count == 0) return kVarianceFloor;
    const double n = static_cast<double>(count);
    const double mean = sum / n;
    return std::max(sum_sq / n - mean * mean, kVarianceFloor);
}

double gaussian_entropy(const RegionMoments& region) {
    if (region.count <= 0) throw ModelError("degenerate region");
    return 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * region.variance());
}

RegionStats region_stats(const RegionMask& mask, const GrayImage& img) {
    const auto& k = simd::kernels();
    const auto all = img.pixels();
    RegionStats st;
    const simd::Moments in = k.masked_moments(all.data(), mask.inside.data(), all.size());
    st.inside = {in.count, in.sum, in.sum_sq};
    // Outside moments as totals minus inside keeps both halves consistent.
    double total = 0.0, total_sq = 0.0;
    for (double v : all) {
        total += v;
        total_sq += v * v;
    }
    st.outside = {static_cast<std::int64_t>(all.size()) - in.count, total - in.sum, total_sq - in.sum_sq};
    return st;
}

double criterion(const RegionStats& stats, double deviation_energy, const CaspParams& params) {
    return static_cast<double>(stats.inside.count) * gaussian_entropy(stats.inside) +
           static_cast<double>(stats.outside.count) * gaussian_entropy(stats.outside) + params.k_l +
           params.regularization * deviation_energy;
}

double criterion(const Curve& c, const GrayImage& img, const CaspParams& params) {
    if (!c.closed()) throw GeometryError("casp requires closed curve");
    if (!is_simple(c)) throw GeometryError("curve is self-intersecting");
    const RegionMask mask = rasterize_region(c, img.width(), img.height());
    return criterion(region_stats(mask, img), deviation_energy(c), params);
}

namespace {

double local_deviation(const std::vector<Point>& k, std::size_t i) {
    const std::size_t n = k.size();
    const Point mid = 0.5 * (k[(i + n - 1) % n] + k[(i + 1) % n]);
    const Point d = k[i] - mid;
    return dot(d, d);
}

double deviation_around(const std::vector<Point>& k, std::size_t i) {
    const std::size_t n = k.size();
    return local_deviation(k, (i + n - 1) % n) + local_deviation(k, i) + local_deviation(k, (i + 1) % n);
}

}  // namespace

CaspResult casp_optimize(const Curve& c0, const GrayImage& img, const CaspParams& params,
                         const CaspObserver& on_accept) {
    params.validate();
    if (!c0.closed()) throw ModelError("casp requires closed curve");
    if (!is_simple(c0)) throw ModelError("casp requires a simple (non-self-intersecting) curve");
    if (!c0.inside(img.width(), img.height())) throw GeometryError("initial curve leaves the image");

    const auto start = std::chrono::steady_clock::now();
    const int w = img.width();
    const int h = img.height();

    RegionMask mask = rasterize_region(c0, w, h);
    RegionStats stats = region_stats(mask, img);
    double dev = deviation_energy(c0);
    double j_cur = criterion(stats, dev, params);

    CaspResult res;
    res.j_trace.push_back(j_cur);

    std::vector<Point> knots = c0.knots();
    const std::size_t n = knots.size();
    std::mt19937_64 rng(params.seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_real_distribution<double> jitter(-params.max_deviation, params.max_deviation);

    PassStats st;
    st.name = "casp";
    st.knots = n;
    std::vector<Point> trial = knots;

    for (int it = 0; it < params.iterations; ++it) {
        const std::size_t i = pick(rng);
        const double dx = jitter(rng);
        const double dy = jitter(rng);
        ++st.iterations;
        st.displacements.push_back(0.0);

        const Point old = knots[i];
        const Point cand{old.x + dx, old.y + dy};
        if (cand.x < 0.0 || cand.y < 0.0 || cand.x > w - 1 || cand.y > h - 1) continue;
        const Point prev = knots[(i + n - 1) % n];
        const Point next = knots[(i + 1) % n];
        if (cand == prev || cand == next) continue;

        trial[i] = cand;
        const Curve trial_curve(trial, true);
        if (!is_simple_around(trial_curve, i)) {
            trial[i] = old;
            continue;
        }

        // Pixels that can change side lie in the bounding box of prev, old, cand, next.
        const double bx0 = std::min({prev.x, old.x, cand.x, next.x});
        const double bx1 = std::max({prev.x, old.x, cand.x, next.x});
        const double by0 = std::min({prev.y, old.y, cand.y, next.y});
        const double by1 = std::max({prev.y, old.y, cand.y, next.y});
        const int x0 = std::max(static_cast<int>(std::floor(bx0)), 0);
        const int y0 = std::max(static_cast<int>(std::floor(by0)), 0);
        const int x1 = std::min(static_cast<int>(std::ceil(bx1)) + 1, w);
        const int y1 = std::min(static_cast<int>(std::ceil(by1)) + 1, h);
        const auto local = rasterize_window(trial, x0, y0, x1, y1);

        RegionStats next_stats = stats;
        const int bw = x1 - x0;
        for (int y = y0; y < y1; ++y) {
            for (int x = x0; x < x1; ++x) {
                const std::uint8_t now = local[static_cast<std::size_t>(y - y0) * bw + (x - x0)];
                const std::uint8_t was = mask.inside[static_cast<std::size_t>(y) * w + x];
                if (now == was) continue;
                const double v = img.at(x, y);
                RegionMoments& gain = now ? next_stats.inside : next_stats.outside;
                RegionMoments& lose = now ? next_stats.outside : next_stats.inside;
                ++gain.count;
                gain.sum += v;
                gain.sum_sq += v * v;
                --lose.count;
                lose.sum -= v;
                lose.sum_sq -= v * v;
            }
        }
        if (next_stats.inside.count == 0 || next_stats.outside.count == 0) {
            trial[i] = old;
            continue;
        }

        const double dev_before = deviation_around(knots, i);
        const double dev_after = deviation_around(trial, i);
        const double next_dev = dev - dev_before + dev_after;
        const double j_next = criterion(next_stats, next_dev, params);
        if (!(j_next < j_cur)) {
            trial[i] = old;
            continue;
        }

        for (int y = y0; y < y1; ++y)
            std::copy_n(local.begin() + static_cast<long>(y - y0) * bw, bw,
                        mask.inside.begin() + static_cast<long>(y) * w + x0);
        knots[i] = cand;
        stats = next_stats;
        dev = next_dev;
        j_cur = j_next;
        ++res.accepted;
        res.j_trace.push_back(j_cur);
        st.displacements.back() = distance(old, cand);
        if (on_accept) on_accept(trial_curve, stats);
    }
    st.converged = true;
    st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    res.report.curve = Curve(std::move(knots), true);
    res.report.passes.push_back(std::move(st));
    res.stats = stats;
    return res;
}

FitReport casp_fit(const Curve& c0, const GrayImage& img, const CaspParams& params) {
    return casp_optimize(c0, img, params).report;
}

}  // namespace snake
