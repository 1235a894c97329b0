#include "snake/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "snake/errors.hpp"

namespace snake {

std::string_view scene_kind_name(SceneKind kind) {
    switch (kind) {
        case SceneKind::StepEdge: return "step-edge";
        case SceneKind::Disk: return "disk";
        case SceneKind::TwoRegionGaussian: return "two-region-gaussian";
        case SceneKind::PolylineEdge: return "polyline-edge";
    }
    return "unknown";
}

std::optional<SceneKind> parse_scene_kind(std::string_view name) {
    for (SceneKind k : {SceneKind::StepEdge, SceneKind::Disk, SceneKind::TwoRegionGaussian, SceneKind::PolylineEdge})
        if (scene_kind_name(k) == name) return k;
    return std::nullopt;
}

double GroundTruth::distance(Point p) const {
    if (shape == Shape::Circle) return std::abs(snake::distance(p, center) - radius);
    return polyline_distance(curve, p);
}

Curve circle_curve(Point center, double radius, std::size_t n) {
    std::vector<Point> knots(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        knots[i] = {center.x + radius * std::cos(a), center.y + radius * std::sin(a)};
    }
    return Curve(std::move(knots), true);
}

std::vector<Point> default_polyline(int width, int height) {
    const double w = width - 1;
    const double h = height - 1;
    return {{0.40 * w, 0.0}, {0.60 * w, 0.35 * h}, {0.45 * w, 0.70 * h}, {0.55 * w, h}};
}

namespace {

// x position of the polyline edge on row y; vertices sorted by y.
double polyline_x(const std::vector<Point>& v, double y) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (y <= v[i + 1].y) {
            const double t = (y - v[i].y) / (v[i + 1].y - v[i].y);
            return v[i].x + t * (v[i + 1].x - v[i].x);
        }
    }
    return v.back().x;
}

}  // namespace

Scene make_scene(SceneKind kind, const SceneParams& p) {
    if (p.width < 16 || p.height < 16) throw GeometryError("scene dimensions must be at least 16x16");
    if (p.noise < 0.0 || !std::isfinite(p.noise)) throw GeometryError("noise std-dev must be non-negative");

    const int w = p.width;
    const int h = p.height;
    GrayImage img(w, h, p.low);
    GroundTruth truth;

    switch (kind) {
        case SceneKind::StepEdge: {
            const int col = p.edge_column.value_or(w / 2);
            if (col < 1 || col > w - 1) throw GeometryError("edge column must lie strictly inside the image");
            for (int y = 0; y < h; ++y)
                for (int x = col; x < w; ++x) img.at(x, y) = p.high;
            truth.shape = GroundTruth::Shape::Line;
            truth.curve = Curve({{col - 0.5, 0.0}, {col - 0.5, h - 1.0}}, false);
            break;
        }
        case SceneKind::Disk:
        case SceneKind::TwoRegionGaussian: {
            const Point c = p.center.value_or(Point{(w - 1) / 2.0, (h - 1) / 2.0});
            if (!(p.radius > 0.0) || c.x - p.radius < 0.0 || c.y - p.radius < 0.0 || c.x + p.radius > w - 1 ||
                c.y + p.radius > h - 1)
                throw GeometryError("disk does not fit inside the image");
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x)
                    if (distance(Point{double(x), double(y)}, c) < p.radius) img.at(x, y) = p.high;
            truth.shape = GroundTruth::Shape::Circle;
            truth.center = c;
            truth.radius = p.radius;
            truth.curve = circle_curve(c, p.radius, 720);
            break;
        }
        case SceneKind::PolylineEdge: {
            const auto v = p.polyline.empty() ? default_polyline(w, h) : p.polyline;
            if (v.size() < 2) throw GeometryError("polyline needs at least 2 vertices");
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (v[i].x < 0.0 || v[i].x > w - 1) throw GeometryError("polyline vertex outside image");
                if (i > 0 && !(v[i].y > v[i - 1].y)) throw GeometryError("polyline y must increase strictly");
            }
            if (v.front().y > 0.0 || v.back().y < h - 1) throw GeometryError("polyline must span every row");
            for (int y = 0; y < h; ++y) {
                const double fx = polyline_x(v, y);
                for (int x = 0; x < w; ++x)
                    if (x > fx) img.at(x, y) = p.high;
            }
            truth.shape = GroundTruth::Shape::Polyline;
            truth.curve = Curve(v, false);
            break;
        }
    }

    std::mt19937_64 rng(p.seed);
    std::normal_distribution<double> noise(0.0, p.noise > 0.0 ? p.noise : 1.0);
    for (double& v : img.pixels()) {
        if (p.noise > 0.0) v += noise(rng);
        v = std::clamp(std::round(v), 0.0, 255.0);
    }
    return {std::move(img), std::move(truth)};
}

}  // namespace snake
