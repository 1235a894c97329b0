#include <cmath>
#include <cstdlib>

#include "snake/cli.hpp"

namespace snake::cli {

namespace {

void draw_line(RgbImage& img, int x0, int y0, int x1, int y1, Rgb color) {
    const int dx = std::abs(x1 - x0);
    const int dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1;
    const int sy = y0 < y1 ? 1 : -1;
    int e = dx + dy;
    for (;;) {
        if (x0 >= 0 && y0 >= 0 && x0 < img.width() && y0 < img.height()) img.at(x0, y0) = color;
        if (x0 == x1 && y0 == y1) break;
        const int e2 = 2 * e;
        if (e2 >= dy) {
            e += dy;
            x0 += sx;
        }
        if (e2 <= dx) {
            e += dx;
            y0 += sy;
        }
    }
}

}  // namespace

RgbImage render_overlay(const GrayImage& img, const Curve& c) {
    RgbImage out = RgbImage::from_gray(img);
    const Rgb red{255, 0, 0};
    for (std::size_t s = 0; s < c.segment_count(); ++s) {
        const Point a = c.segment_start(s);
        const Point b = c.segment_end(s);
        draw_line(out, static_cast<int>(std::lround(a.x)), static_cast<int>(std::lround(a.y)),
                  static_cast<int>(std::lround(b.x)), static_cast<int>(std::lround(b.y)), red);
    }
    return out;
}

}  // namespace snake::cli
