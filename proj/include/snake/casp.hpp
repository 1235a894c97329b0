#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "snake/curve.hpp"
#include "snake/fit_report.hpp"
#include "snake/image.hpp"

namespace snake {

struct CaspParams {
    double max_deviation = 5.0;   // proposal half-width in x and y, pixels
    int iterations = 3000;        // proposals evaluated
    double regularization = 0.2;  // weight of the sum of squared midpoint deviations
    double k_l = 0.0;             // constant offset of the criterion
    std::uint64_t seed = 0;

    void validate() const;
};

/// Pixel count and first two moments of one region.
struct RegionMoments {
    std::int64_t count = 0;
    double sum = 0.0;
    double sum_sq = 0.0;

    /// Maximum-likelihood variance, floored at 1e-6.
    double variance() const;
};

struct RegionStats {
    RegionMoments inside;
    RegionMoments outside;
};

inline constexpr double kVarianceFloor = 1e-6;

/// 0.5 * ln(2 pi e var). Throws ModelError("degenerate region") when empty.
double gaussian_entropy(const RegionMoments& region);

RegionStats region_stats(const RegionMask& mask, const GrayImage& img);

/// N_a H_a + N_b H_b + k_l + regularization * sum d_i^2.
double criterion(const RegionStats& stats, double deviation_energy, const CaspParams& params);

/// Throws GeometryError for open or self-intersecting curves.
double criterion(const Curve& c, const GrayImage& img, const CaspParams& params);

struct CaspResult {
    FitReport report;
    std::vector<double> j_trace;  // initial value, then one entry per accepted move
    std::size_t accepted = 0;
    RegionStats stats;            // maintained incrementally
};

/// Called after every accepted move with the new curve and maintained stats.
using CaspObserver = std::function<void(const Curve&, const RegionStats&)>;

/// Seeded random single-knot perturbations, accepted only on strict decrease.
CaspResult casp_optimize(const Curve& c0, const GrayImage& img, const CaspParams& params,
                         const CaspObserver& on_accept = {});

FitReport casp_fit(const Curve& c0, const GrayImage& img, const CaspParams& params);

}  // namespace snake
