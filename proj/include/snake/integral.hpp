#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "snake/image.hpp"

namespace snake {

struct WindowStats {
    double mean = 0.0;
    double variance = 0.0;
    int count = 0;
};

/// Summed-area tables of I and I^2, (width+1) x (height+1), zero first row
/// and column. Integral images (see GrayImage::is_integral) are accumulated
/// in 64-bit integers so rectangle sums are exact; otherwise doubles.
namespace detail {

// Leaves elements uninitialized on resize; the tables overwrite every entry.
template <typename T>
struct NoInitAllocator : std::allocator<T> {
    template <typename U>
    struct rebind {
        using other = NoInitAllocator<U>;
    };
    using std::allocator<T>::allocator;
    template <typename U>
    void construct(U* p) noexcept {
        ::new (static_cast<void*>(p)) U;
    }
    template <typename U, typename... Args>
    void construct(U* p, Args&&... args) {
        ::new (static_cast<void*>(p)) U(std::forward<Args>(args)...);
    }
};

}  // namespace detail

class IntegralTables {
public:
    IntegralTables() = default;
    explicit IntegralTables(const GrayImage& img);

    int width() const { return width_; }
    int height() const { return height_; }
    bool exact() const { return exact_; }

    /// Table entry sum[y][x] = sum of I over rows < y, columns < x.
    double sum_at(int x, int y) const;
    double sum_sq_at(int x, int y) const;

    /// Sums over the half-open rectangle [x0, x1) x [y0, y1).
    double rect_sum(int x0, int y0, int x1, int y1) const;
    double rect_sum_sq(int x0, int y0, int x1, int y1) const;

    /// Mean and population variance over the (2*half+1)^2 square centered on
    /// pixel (cx, cy), clipped to the image. Throws GeometryError when the
    /// center lies outside the image or half < 0.
    WindowStats window_stats(int cx, int cy, int half) const;

    /// Variance only, no bounds checks; caller guarantees a valid center.
    double window_variance(int cx, int cy, int half) const;

private:
    std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * (width_ + 1) + x; }

    int width_ = 0;
    int height_ = 0;
    bool exact_ = false;
    std::vector<std::int64_t, detail::NoInitAllocator<std::int64_t>> isum_, isum_sq_;
    std::vector<double, detail::NoInitAllocator<double>> fsum_, fsum_sq_;
};

inline IntegralTables build_integral(const GrayImage& img) { return IntegralTables(img); }

}  // namespace snake
