#include "snake/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "snake/errors.hpp"
#include "snake/simd/kernels.hpp"

namespace snake {

GrayImage::GrayImage(int width, int height, double fill)
    : GrayImage(width, height, std::vector<double>(static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0), fill)) {}

GrayImage::GrayImage(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (width < 1 || height < 1) throw GeometryError("image dimensions must be positive");
    if (data_.size() != static_cast<std::size_t>(width) * height)
        throw GeometryError("image data length " + std::to_string(data_.size()) + " does not match " +
                            std::to_string(width) + "x" + std::to_string(height));
    for (double v : data_)
        if (!std::isfinite(v)) throw GeometryError("image intensities must be finite");
}

bool GrayImage::is_integral() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](double v) { return std::abs(v) <= 65535.0 && std::trunc(v) == v; });
}

RgbImage RgbImage::from_gray(const GrayImage& img) {
    RgbImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            const auto v = static_cast<std::uint8_t>(std::clamp(std::lround(img.at(x, y)), 0L, 255L));
            out.at(x, y) = {v, v, v};
        }
    return out;
}

GradientField gradient(const GrayImage& img) {
    const int w = img.width();
    const int h = img.height();
    if (w < 2 || h < 2) throw GeometryError("gradient needs an image at least 2x2");

    GradientField f;
    f.width = w;
    f.height = h;
    const std::size_t n = static_cast<std::size_t>(w) * h;
    f.gx.assign(n, 0.0);
    f.gy.assign(n, 0.0);
    f.mag_sq.assign(n, 0.0);

    const auto& k = simd::kernels();
    for (int y = 0; y < h; ++y) {
        const int ya = std::max(y - 1, 0);
        const int yb = std::min(y + 1, h - 1);
        const double gy_scale = 1.0 / (yb - ya);
        const double* above = img.row(ya).data();
        const double* row = img.row(y).data();
        const double* below = img.row(yb).data();
        const std::size_t base = f.index(0, y);
        k.gradient_row(above, row, below, gy_scale, &f.gx[base], &f.gy[base], &f.mag_sq[base], static_cast<std::size_t>(w));

        for (int x : {0, w - 1}) {
            const double dx = x == 0 ? row[1] - row[0] : row[w - 1] - row[w - 2];
            const double dy = (below[x] - above[x]) * gy_scale;
            f.gx[base + x] = dx;
            f.gy[base + x] = dy;
            f.mag_sq[base + x] = dx * dx + dy * dy;
        }
    }
    return f;
}

GrayImage gaussian_blur(const GrayImage& img, double sigma) {
    if (!(sigma > 0.0)) return img;

    const auto radius = static_cast<std::size_t>(std::ceil(3.0 * sigma));
    std::vector<double> taps(2 * radius + 1);
    double norm = 0.0;
    for (std::size_t k = 0; k < taps.size(); ++k) {
        const double d = static_cast<double>(k) - static_cast<double>(radius);
        taps[k] = std::exp(-0.5 * d * d / (sigma * sigma));
        norm += taps[k];
    }
    for (double& t : taps) t /= norm;

    const auto& kern = simd::kernels();
    const int w = img.width();
    const int h = img.height();

    // Pads a line with clamped border samples, convolves, copies back.
    auto filter_line = [&](std::vector<double>& pad, std::vector<double>& out, std::size_t len) {
        kern.convolve_row(pad.data(), taps.data(), radius, out.data(), len + 2 * radius);
    };

    GrayImage tmp(w, h);
    std::vector<double> pad, out;
    pad.resize(w + 2 * radius);
    out.resize(w + 2 * radius);
    for (int y = 0; y < h; ++y) {
        auto src = img.row(y);
        for (std::size_t i = 0; i < pad.size(); ++i) {
            const long sx = std::clamp(static_cast<long>(i) - static_cast<long>(radius), 0L, static_cast<long>(w - 1));
            pad[i] = src[static_cast<std::size_t>(sx)];
        }
        filter_line(pad, out, static_cast<std::size_t>(w));
        std::copy_n(out.begin() + static_cast<long>(radius), w, tmp.row(y).begin());
    }

    GrayImage result(w, h);
    pad.resize(h + 2 * radius);
    out.resize(h + 2 * radius);
    for (int x = 0; x < w; ++x) {
        for (std::size_t i = 0; i < pad.size(); ++i) {
            const long sy = std::clamp(static_cast<long>(i) - static_cast<long>(radius), 0L, static_cast<long>(h - 1));
            pad[i] = tmp.at(x, static_cast<int>(sy));
        }
        filter_line(pad, out, static_cast<std::size_t>(h));
        for (int y = 0; y < h; ++y) result.at(x, y) = out[static_cast<std::size_t>(y) + radius];
    }
    return result;
}

}  // namespace snake
