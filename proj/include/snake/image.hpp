#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace snake {

/// Row-major scalar intensity field. Pixel (x, y) has its center at (x, y).
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int width, int height, double fill = 0.0);
    GrayImage(int width, int height, std::vector<double> data);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    double& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }

    bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

    std::span<const double> row(int y) const {
        return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
    }
    std::span<double> row(int y) {
        return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
    }

    std::span<const double> pixels() const { return data_; }
    std::span<double> pixels() { return data_; }

    /// True when every intensity is an integer in [-65535, 65535].
    bool is_integral() const;

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// 8-bit color raster used for overlays.
class RgbImage {
public:
    RgbImage() = default;
    RgbImage(int width, int height) : width_(width), height_(height), data_(static_cast<std::size_t>(width) * height) {}

    /// Gray-to-color conversion, clamping intensities to [0, 255].
    static RgbImage from_gray(const GrayImage& img);

    int width() const { return width_; }
    int height() const { return height_; }
    Rgb at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    Rgb& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    std::span<const Rgb> pixels() const { return data_; }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<Rgb> data_;
};

/// Per-pixel central differences of an image (one-sided at the borders).
struct GradientField {
    int width = 0;
    int height = 0;
    std::vector<double> gx;
    std::vector<double> gy;
    std::vector<double> mag_sq;

    std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
};

/// Throws GeometryError when either dimension is below 2.
GradientField gradient(const GrayImage& img);

/// Separable Gaussian smoothing with clamped borders; sigma <= 0 returns a copy.
GrayImage gaussian_blur(const GrayImage& img, double sigma);

}  // namespace snake
