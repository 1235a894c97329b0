#include "snake/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "snake/errors.hpp"

namespace snake {

Curve::Curve(std::vector<Point> knots, bool closed) : knots_(std::move(knots)), closed_(closed) {
    const std::size_t min_knots = closed_ ? 3 : 2;
    if (knots_.size() < min_knots)
        throw GeometryError(std::string(closed_ ? "closed" : "open") + " curve needs at least " +
                            std::to_string(min_knots) + " knots");
    for (const Point& p : knots_)
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw GeometryError("knot coordinates must be finite");
    for (std::size_t s = 0; s < segment_count(); ++s)
        if (segment_start(s) == segment_end(s))
            throw GeometryError("consecutive knots " + std::to_string(s) + " and " +
                                std::to_string((s + 1) % knots_.size()) + " coincide");
}

double Curve::length() const {
    double total = 0.0;
    for (std::size_t s = 0; s < segment_count(); ++s) total += distance(segment_start(s), segment_end(s));
    return total;
}

bool Curve::inside(int width, int height) const {
    return std::all_of(knots_.begin(), knots_.end(), [&](Point p) {
        return p.x >= 0.0 && p.y >= 0.0 && p.x <= width - 1 && p.y <= height - 1;
    });
}

std::vector<Point> normals(const Curve& c) {
    const std::size_t n = c.size();
    std::vector<Point> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Point dir;
        if (!c.has_neighbors(i)) {
            dir = i == 0 ? c[1] - c[0] : c[n - 1] - c[n - 2];
        } else {
            dir = c[c.next(i)] - c[c.prev(i)];
            if (dir.x == 0.0 && dir.y == 0.0) dir = c[i] - c[c.prev(i)];
        }
        const double len = norm(dir);
        if (len == 0.0) throw GeometryError("degenerate normal at knot " + std::to_string(i));
        out[i] = perp(dir) * (1.0 / len);
    }
    return out;
}

double midpoint_deviation(const Curve& c, std::size_t i) {
    if (i >= c.size()) throw GeometryError("knot index out of range");
    if (!c.has_neighbors(i)) throw GeometryError("no neighbors");
    const Point mid = 0.5 * (c[c.prev(i)] + c[c.next(i)]);
    return distance(c[i], mid);
}

double deviation_energy(const Curve& c) {
    double total = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!c.has_neighbors(i)) continue;
        const double d = midpoint_deviation(c, i);
        total += d * d;
    }
    return total;
}

double prior_log_density(const Curve& c, double phi) {
    if (!(phi > 0.0)) throw GeometryError("regularity scale phi must be positive");
    return -deviation_energy(c) / (2.0 * phi * phi);
}

Curve resample(const Curve& c, double max_spacing) {
    if (!(max_spacing > 0.0)) throw GeometryError("max spacing must be positive");
    const std::size_t segs = c.segment_count();
    std::vector<double> cum(segs + 1, 0.0);
    for (std::size_t s = 0; s < segs; ++s) cum[s + 1] = cum[s] + distance(c.segment_start(s), c.segment_end(s));
    const double total = cum.back();

    // Tolerance keeps an exact multiple of max_spacing from rounding up.
    auto pieces = static_cast<std::size_t>(std::ceil(total / max_spacing - 1e-9));
    pieces = std::max<std::size_t>(pieces, c.closed() ? 3 : 1);
    const double step = total / static_cast<double>(pieces);

    std::vector<Point> out;
    out.reserve(pieces + 1);
    std::size_t s = 0;
    const std::size_t count = c.closed() ? pieces : pieces + 1;
    for (std::size_t k = 0; k < count; ++k) {
        if (!c.closed() && k == pieces) {
            out.push_back(c[c.size() - 1]);
            break;
        }
        const double t = step * static_cast<double>(k);
        while (s + 1 < segs && cum[s + 1] <= t) ++s;
        const double seg_len = cum[s + 1] - cum[s];
        const double u = seg_len > 0.0 ? std::clamp((t - cum[s]) / seg_len, 0.0, 1.0) : 0.0;
        const Point a = c.segment_start(s);
        const Point b = c.segment_end(s);
        out.push_back(u == 1.0 ? b : a + u * (b - a));
    }
    return Curve(std::move(out), c.closed());
}

double polyline_distance(const Curve& c, Point p) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < c.segment_count(); ++s)
        best = std::min(best, segment_distance(p, c.segment_start(s), c.segment_end(s)));
    return best;
}

namespace {

int orientation(Point a, Point b, Point c) {
    const double v = cross(b - a, c - a);
    return (v > 0.0) - (v < 0.0);
}

bool on_segment(Point a, Point b, Point p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

bool segments_touch(Point a, Point b, Point c, Point d) {
    const int o1 = orientation(a, b, c);
    const int o2 = orientation(a, b, d);
    const int o3 = orientation(c, d, a);
    const int o4 = orientation(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

// Segments s and t are adjacent when they share a knot.
bool adjacent(const Curve& c, std::size_t s, std::size_t t) {
    if (s == t) return true;
    const std::size_t n = c.segment_count();
    if (s + 1 == t || t + 1 == s) return true;
    return c.closed() && ((s == 0 && t == n - 1) || (t == 0 && s == n - 1));
}

// Adjacent segments a->b, b->c fold back onto each other.
bool folds_back(Point a, Point b, Point c) { return orientation(a, b, c) == 0 && dot(a - b, c - b) > 0.0; }

bool segment_clear(const Curve& c, std::size_t s) {
    const Point a = c.segment_start(s);
    const Point b = c.segment_end(s);
    for (std::size_t t = 0; t < c.segment_count(); ++t) {
        if (adjacent(c, s, t)) continue;
        if (segments_touch(a, b, c.segment_start(t), c.segment_end(t))) return false;
    }
    return true;
}

}  // namespace

bool is_simple(const Curve& c) {
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c.has_neighbors(i) && folds_back(c[c.prev(i)], c[i], c[c.next(i)])) return false;
    for (std::size_t s = 0; s < c.segment_count(); ++s)
        if (!segment_clear(c, s)) return false;
    return true;
}

bool is_simple_around(const Curve& c, std::size_t i) {
    for (std::size_t k : {c.prev(i), i, c.next(i)})
        if (c.has_neighbors(k) && folds_back(c[c.prev(k)], c[k], c[c.next(k)])) return false;
    if (c.closed() || i > 0)
        if (!segment_clear(c, c.prev(i))) return false;
    if (c.closed() || i + 1 < c.size())
        if (!segment_clear(c, i)) return false;
    return true;
}

std::vector<std::uint8_t> rasterize_window(std::span<const Point> polygon, int x0, int y0, int x1, int y1) {
    const int w = std::max(x1 - x0, 0);
    const int h = std::max(y1 - y0, 0);
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(w) * h, 0);
    std::vector<double> xs;
    const std::size_t n = polygon.size();
    for (int y = y0; y < y1; ++y) {
        const double yc = y;
        xs.clear();
        for (std::size_t i = 0; i < n; ++i) {
            const Point a = polygon[i];
            const Point b = polygon[(i + 1) % n];
            if ((a.y > yc) != (b.y > yc)) xs.push_back(a.x + (yc - a.y) * (b.x - a.x) / (b.y - a.y));
        }
        std::sort(xs.begin(), xs.end());
        // Center x is inside iff an odd number of crossings lie to its right,
        // i.e. xs[2k] <= x < xs[2k+1] for some k.
        for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
            const double lo = std::max(std::ceil(xs[k]), static_cast<double>(x0));
            const double hi = std::min(std::ceil(xs[k + 1]) - 1.0, static_cast<double>(x1 - 1));
            for (auto x = static_cast<long>(lo); x <= static_cast<long>(hi); ++x)
                mask[static_cast<std::size_t>(y - y0) * w + static_cast<std::size_t>(x - x0)] = 1;
        }
    }
    return mask;
}

RegionMask rasterize_region(const Curve& c, int width, int height) {
    if (!c.closed()) throw GeometryError("region rasterization requires a closed curve");
    RegionMask m;
    m.width = width;
    m.height = height;
    m.inside = rasterize_window(c.knots(), 0, 0, width, height);
    m.inside_count = static_cast<std::size_t>(std::count(m.inside.begin(), m.inside.end(), std::uint8_t{1}));
    return m;
}

}  // namespace snake
