#include "snake/kass.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "snake/errors.hpp"

namespace snake {

void KassParams::validate() const {
    if (!(alpha >= 0.0) || !(beta >= 0.0)) throw ConfigError("alpha and beta must be >= 0");
    if (!(lambda > 0.0 && lambda <= 1.0)) throw ConfigError("lambda must lie in (0, 1]");
    if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
    if (!(epsilon >= 0.0)) throw ConfigError("epsilon must be >= 0");
    if (!(smoothing >= 0.0)) throw ConfigError("smoothing must be >= 0");
    if (!(force_weight >= 0.0)) throw ConfigError("force weight must be >= 0");
}

ExternalForce::ExternalForce(const GradientField& field, double scale) : width_(field.width), height_(field.height) {
    const GrayImage energy(field.width, field.height, field.mag_sq);
    const GradientField g = gradient(energy);
    fx_ = g.gx;
    fy_ = g.gy;
    if (scale != 1.0) {
        for (double& v : fx_) v *= scale;
        for (double& v : fy_) v *= scale;
    }
}

Point ExternalForce::at(Point pos) const {
    const double x = std::clamp(pos.x, 0.0, static_cast<double>(width_ - 1));
    const double y = std::clamp(pos.y, 0.0, static_cast<double>(height_ - 1));
    const int x0 = std::min(static_cast<int>(x), width_ - 2);
    const int y0 = std::min(static_cast<int>(y), height_ - 2);
    const double tx = x - x0;
    const double ty = y - y0;
    const std::size_t i00 = static_cast<std::size_t>(y0) * width_ + x0;
    const std::size_t i01 = i00 + 1;
    const std::size_t i10 = i00 + width_;
    const std::size_t i11 = i10 + 1;
    auto lerp2 = [&](const std::vector<double>& f) {
        const double top = f[i00] + tx * (f[i01] - f[i00]);
        const double bot = f[i10] + tx * (f[i11] - f[i10]);
        return top + ty * (bot - top);
    };
    return {lerp2(fx_), lerp2(fy_)};
}

Point external_force(const GradientField& field, Point pos) { return ExternalForce(field).at(pos); }

ExternalForce make_kass_force(const GrayImage& img, const KassParams& params) {
    const GradientField g = gradient(gaussian_blur(img, params.smoothing));
    const double peak = *std::max_element(g.mag_sq.begin(), g.mag_sq.end());
    return ExternalForce(g, peak > 0.0 ? params.force_weight / peak : 0.0);
}

std::vector<double> internal_operator(std::size_t n, bool closed, double alpha, double beta) {
    std::vector<double> a(n * n, 0.0);
    auto add_row = [&](std::initializer_list<std::pair<std::size_t, double>> row, double weight) {
        // Accumulates weight * r r' for one difference row r.
        for (auto [i, vi] : row)
            for (auto [j, vj] : row) a[i * n + j] += weight * vi * vj;
    };
    auto wrap = [&](long i) { return static_cast<std::size_t>((i % static_cast<long>(n) + static_cast<long>(n)) % static_cast<long>(n)); };

    const long ln = static_cast<long>(n);
    const long first_diffs = closed ? ln : ln - 1;
    for (long i = 0; i < first_diffs; ++i) add_row({{wrap(i), -1.0}, {wrap(i + 1), 1.0}}, alpha);
    const long lo = closed ? 0 : 1;
    const long hi = closed ? ln : ln - 1;
    for (long i = lo; i < hi; ++i) add_row({{wrap(i - 1), 1.0}, {wrap(i), -2.0}, {wrap(i + 1), 1.0}}, beta);
    return a;
}

double internal_energy(const Curve& c, double alpha, double beta) {
    const std::size_t n = c.size();
    const auto a = internal_operator(n, c.closed(), alpha, beta);
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) e += a[i * n + j] * (c[i].x * c[j].x + c[i].y * c[j].y);
    return e;
}

KassSolver::KassSolver(std::size_t n, bool closed, const KassParams& params) {
    params.validate();
    const double tau = 1.0 - params.lambda;
    auto m = internal_operator(n, closed, params.alpha, params.beta);
    for (double& v : m) v *= tau;
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] += 1.0;

    first_.resize(n);
    rows_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t f = 0;
        while (f < i && m[i * n + f] == 0.0) ++f;
        first_[i] = f;
        rows_[i].assign(i - f + 1, 0.0);
    }
    // Envelope Cholesky: fill-in never leaves the row envelope.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = first_[i]; j <= i; ++j) {
            double s = m[i * n + j];
            for (std::size_t k = std::max(first_[i], first_[j]); k < j; ++k) s -= l(i, k) * l(j, k);
            if (j == i) {
                if (!(s > 0.0)) throw ModelError("snake system is not positive definite");
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
}

void KassSolver::solve(std::vector<double>& b) const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = first_[i]; k < i; ++k) s -= l(i, k) * b[k];
        b[i] = s / l(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
        b[i] /= l(i, i);
        for (std::size_t k = first_[i]; k < i; ++k) b[k] -= l(i, k) * b[i];
    }
}

namespace {

void check_knots(const Curve& c) {
    if (c.closed() && c.size() < 5) throw ModelError("closed Kass snake needs at least 5 knots");
}

Curve step_with(const Curve& c, const KassParams& params, const ExternalForce& force, const KassSolver& solver) {
    const double tau = 1.0 - params.lambda;
    const std::size_t n = c.size();
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point f = force.at(c[i]);
        xs[i] = c[i].x + tau * f.x;
        ys[i] = c[i].y + tau * f.y;
    }
    solver.solve(xs);
    solver.solve(ys);
    std::vector<Point> knots(n);
    const double xmax = force.width() - 1;
    const double ymax = force.height() - 1;
    for (std::size_t i = 0; i < n; ++i) knots[i] = {std::clamp(xs[i], 0.0, xmax), std::clamp(ys[i], 0.0, ymax)};
    try {
        return Curve(std::move(knots), c.closed());
    } catch (const GeometryError& e) {
        throw ModelError(std::string("Kass step degenerated: ") + e.what());
    }
}

}  // namespace

Curve kass_step(const Curve& c, const KassParams& params, const ExternalForce& force) {
    check_knots(c);
    return step_with(c, params, force, KassSolver(c.size(), c.closed(), params));
}

FitReport kass_fit(const Curve& c0, const GrayImage& img, const KassParams& params) {
    params.validate();
    check_knots(c0);
    if (!c0.inside(img.width(), img.height())) throw GeometryError("initial curve leaves the image");

    const auto start = std::chrono::steady_clock::now();
    const ExternalForce force = make_kass_force(img, params);
    const KassSolver solver(c0.size(), c0.closed(), params);

    PassStats st;
    st.name = "kass";
    st.knots = c0.size();
    Curve cur = c0;
    while (st.iterations < params.max_iterations) {
        Curve next = step_with(cur, params, force, solver);
        double moved = 0.0;
        for (std::size_t i = 0; i < cur.size(); ++i) moved = std::max(moved, distance(next[i], cur[i]));
        cur = std::move(next);
        ++st.iterations;
        st.displacements.push_back(moved);
        if (moved <= params.epsilon) {
            st.converged = true;
            break;
        }
    }
    st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    FitReport r;
    r.curve = std::move(cur);
    r.passes.push_back(std::move(st));
    return r;
}

}  // namespace snake
