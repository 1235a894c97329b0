#pragma once

#include <vector>

#include "snake/curve.hpp"
#include "snake/fit_report.hpp"
#include "snake/image.hpp"

namespace snake {

struct KassParams {
    double alpha = 0.1;   // tension
    double beta = 0.1;    // rigidity
    double lambda = 0.5;  // damping in (0, 1]; the explicit step is (1 - lambda)
    int max_iterations = 3000;
    double epsilon = 0.01;       // stop once no knot moves farther than this, pixels
    double smoothing = 1.5;      // Gaussian sigma applied before differentiating
    double force_weight = 1.0;   // scale of the normalized edge-energy gradient

    void validate() const;
};

/// Bilinear sampler of grad(|grad I|^2), precomputed once per image.
class ExternalForce {
public:
    ExternalForce() = default;
    /// scale multiplies the raw gradient of field.mag_sq.
    explicit ExternalForce(const GradientField& field, double scale = 1.0);

    /// Coordinates outside the image are clamped.
    Point at(Point pos) const;

    int width() const { return width_; }
    int height() const { return height_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> fx_, fy_;
};

/// One-off evaluation of grad(|grad I|^2) at a sub-pixel position.
Point external_force(const GradientField& field, Point pos);

/// Force used by kass_fit: smooth, differentiate, normalize |grad I|^2 to
/// [0, 1], scale by force_weight.
ExternalForce make_kass_force(const GrayImage& img, const KassParams& params);

/// Dense copy of the internal-energy operator alpha*D1'D1 + beta*D2'D2
/// (cyclic for closed curves, free ends for open ones). Row-major n x n.
std::vector<double> internal_operator(std::size_t n, bool closed, double alpha, double beta);

/// x'Ax + y'Ay for the knot coordinates.
double internal_energy(const Curve& c, double alpha, double beta);

/// Factorized (I + (1 - lambda) A) for one knot count; reused across steps.
class KassSolver {
public:
    KassSolver(std::size_t n, bool closed, const KassParams& params);

    std::size_t size() const { return first_.size(); }
    /// Solves in place.
    void solve(std::vector<double>& rhs) const;

private:
    double& l(std::size_t i, std::size_t j) { return rows_[i][j - first_[i]]; }
    double l(std::size_t i, std::size_t j) const { return rows_[i][j - first_[i]]; }

    // Lower-triangular Cholesky factor stored by row envelope.
    std::vector<std::size_t> first_;
    std::vector<std::vector<double>> rows_;
};

/// Semi-implicit update; closed curves need >= 5 knots. Throws ModelError
/// for a non-positive-definite system.
Curve kass_step(const Curve& c, const KassParams& params, const ExternalForce& force);

FitReport kass_fit(const Curve& c0, const GrayImage& img, const KassParams& params);

}  // namespace snake
