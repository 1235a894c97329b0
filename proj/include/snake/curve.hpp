#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "snake/geometry.hpp"

namespace snake {

/// Ordered polyline of knots; closed curves wrap from the last knot to the first.
class Curve {
public:
    Curve() = default;
    /// Validates: >= 3 knots closed / >= 2 open, finite coordinates, no two
    /// consecutive knots coincident. Throws GeometryError.
    Curve(std::vector<Point> knots, bool closed);

    std::size_t size() const { return knots_.size(); }
    bool closed() const { return closed_; }
    const std::vector<Point>& knots() const { return knots_; }
    Point operator[](std::size_t i) const { return knots_[i]; }

    std::size_t segment_count() const { return closed_ ? knots_.size() : knots_.size() - 1; }
    Point segment_start(std::size_t s) const { return knots_[s]; }
    Point segment_end(std::size_t s) const { return knots_[(s + 1) % knots_.size()]; }

    double length() const;

    /// True when i has a predecessor and a successor (always true when closed).
    bool has_neighbors(std::size_t i) const { return closed_ || (i > 0 && i + 1 < knots_.size()); }
    std::size_t prev(std::size_t i) const { return i == 0 ? knots_.size() - 1 : i - 1; }
    std::size_t next(std::size_t i) const { return i + 1 == knots_.size() ? 0 : i + 1; }

    bool inside(int width, int height) const;

    friend bool operator==(const Curve&, const Curve&) = default;

private:
    std::vector<Point> knots_;
    bool closed_ = false;
};

/// Per-knot unit normals (left-hand perpendicular of the traversal direction).
/// Interior knots use the chord N[i-1] -> N[i+1]; open-curve ends use their
/// single adjacent segment.
std::vector<Point> normals(const Curve& c);

/// Distance of knot i from the midpoint of its two neighbors.
/// Throws GeometryError("no neighbors") for open-curve end knots.
double midpoint_deviation(const Curve& c, std::size_t i);

/// -(1 / (2 phi^2)) * sum d_i^2 over knots with two neighbors. Throws for phi <= 0.
double prior_log_density(const Curve& c, double phi);

/// Sum of squared midpoint deviations over knots with two neighbors.
double deviation_energy(const Curve& c);

/// Uniform arc-length resampling into ceil(length / max_spacing) pieces.
/// Open curves keep both endpoints; closed curves start at knot 0.
Curve resample(const Curve& c, double max_spacing);

/// Shortest distance from p to the polyline.
double polyline_distance(const Curve& c, Point p);

/// O(n^2) proper-intersection test between non-adjacent segments.
bool is_simple(const Curve& c);

/// Same test restricted to the two segments touching knot i.
bool is_simple_around(const Curve& c, std::size_t i);

struct RegionMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> inside;
    std::size_t inside_count = 0;

    std::size_t outside_count() const { return inside.size() - inside_count; }
};

/// Even-odd scanline fill sampled at pixel centers. Throws for open curves.
RegionMask rasterize_region(const Curve& c, int width, int height);

/// Inside flags for the pixel block [x0, x1) x [y0, y1) only, row-major.
std::vector<std::uint8_t> rasterize_window(std::span<const Point> polygon, int x0, int y0, int x1, int y1);

}  // namespace snake
