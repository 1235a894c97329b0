#pragma once

#include <vector>

#include "snake/curve.hpp"
#include "snake/fit_report.hpp"
#include "snake/image.hpp"
#include "snake/integral.hpp"

namespace snake {

/// One optimization pass of the probabilistic snake.
struct PassConfig {
    int depth = 25;               // search half-extent along the normal, pixels
    int window_half = 3;          // variance window is (2*window_half+1)^2
    double regularization = 0.0;  // taper strength, >= 0
    int max_iterations = 100;
    double epsilon = 0.5;         // stop once no knot moves farther than this

    /// Throws ConfigError on out-of-range fields.
    void validate() const;
};

/// Coarse pass, arc-length resampling, fine pass.
struct Schedule {
    PassConfig pass1;
    double resample_max_spacing = 4.0;
    PassConfig pass2;

    void validate() const;

    /// Closed-curve setting: L=25 then L=5 with regularization 1, window 7.
    static Schedule closed_default();
    /// Open-curve setting: L=20 then L=5, no regularization, window 7.
    static Schedule open_default();
};

/// Sampled edge likelihood along one knot's normal, offsets -depth..+depth.
struct DensityProfile {
    std::size_t knot = 0;
    int depth = 0;
    std::vector<double> raw;          // window variance per candidate
    std::vector<double> regularized;  // raw * taper weight

    std::size_t size() const { return raw.size(); }
    /// Index into raw/regularized for offset j.
    std::size_t slot(int offset) const { return static_cast<std::size_t>(offset + depth); }
    int offset(std::size_t slot) const { return static_cast<int>(slot) - depth; }
};

/// Window variance at knot + j*normal (nearest pixel center) for each j;
/// candidates outside the image score 0. regularized is a copy of raw.
DensityProfile score_profile(const IntegralTables& tables, Point knot, Point normal, const PassConfig& cfg);

/// Taper weight exp(-regularization * (j/depth)^2).
double taper_weight(int offset, int depth, double regularization);

/// Multiplies raw by the taper. Throws ConfigError for negative regularization.
DensityProfile regularize_profile(DensityProfile p, double regularization);

/// Argmax of the regularized scores. Ties go to the smaller |j|, then the
/// negative side. An all-zero profile selects 0.
int select_offset(const DensityProfile& p);

struct IterationResult {
    Curve curve;
    double max_displacement = 0.0;
    std::vector<int> offsets;  // chosen offset per knot (0 where a move was reverted)
};

/// One synchronous update: every knot reads the same snapshot, moves to its
/// best candidate and is clamped to the image. A move that would make two
/// consecutive knots coincide is reverted.
IterationResult iterate(const Curve& c, const IntegralTables& tables, const PassConfig& cfg);

/// Iterates until the max displacement is <= epsilon or max_iterations.
std::pair<Curve, PassStats> run_pass(const Curve& c, const IntegralTables& tables, const PassConfig& cfg);

/// Pass 1 on c0, resample, pass 2. Builds the integral tables internally.
FitReport fit(const Curve& c0, const GrayImage& img, const Schedule& schedule);

}  // namespace snake
