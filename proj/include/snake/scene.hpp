#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "snake/curve.hpp"
#include "snake/image.hpp"

namespace snake {

enum class SceneKind { StepEdge, Disk, TwoRegionGaussian, PolylineEdge };

std::string_view scene_kind_name(SceneKind kind);
/// Accepts "step-edge", "disk", "two-region-gaussian", "polyline-edge".
std::optional<SceneKind> parse_scene_kind(std::string_view name);

struct SceneParams {
    int width = 256;
    int height = 256;
    double low = 0.0;    // background level
    double high = 100.0; // foreground level
    double noise = 0.0;  // Gaussian std-dev added to every pixel
    std::uint64_t seed = 0;

    // step-edge: columns < edge_column are low, the rest high. Default width/2.
    std::optional<int> edge_column;
    // disk / two-region-gaussian: pixels with center distance < radius are high.
    std::optional<Point> center;  // default image center
    double radius = 40.0;
    // polyline-edge: pixels right of the polyline x = f(y) are high. Vertices
    // must have strictly increasing y and span rows 0..height-1.
    std::vector<Point> polyline;
};

/// Analytic boundary that generated a scene.
struct GroundTruth {
    enum class Shape { Line, Circle, Polyline };
    Shape shape = Shape::Line;
    Curve curve;           // line / polyline vertices, or a dense circle polygon
    Point center;          // circle only
    double radius = 0.0;   // circle only

    double distance(Point p) const;
};

struct Scene {
    GrayImage image;
    GroundTruth truth;
};

/// Deterministic for a fixed seed. Intensities are rounded and clamped to
/// [0, 255] so the image survives an 8-bit P5 round trip unchanged.
Scene make_scene(SceneKind kind, const SceneParams& params);

/// Default zig-zag polyline for polyline-edge scenes of the given size.
std::vector<Point> default_polyline(int width, int height);

/// Closed polygon with n knots on the circle, knot 0 at angle 0, angle
/// increasing toward +y. Its left-hand normals point inward.
Curve circle_curve(Point center, double radius, std::size_t n);

}  // namespace snake
