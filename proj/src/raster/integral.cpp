#include "snake/integral.hpp"

#include <algorithm>
#include <string>

#include "snake/errors.hpp"
#include "snake/simd/kernels.hpp"

namespace snake {

IntegralTables::IntegralTables(const GrayImage& img) : width_(img.width()), height_(img.height()) {
    const std::size_t stride = static_cast<std::size_t>(width_) + 1;
    const std::size_t n = stride * (static_cast<std::size_t>(height_) + 1);
    const auto& k = simd::kernels();

    // Exact mode unless some pixel is fractional or beyond 16 bits.
    exact_ = true;
    isum_.resize(n);
    isum_sq_.resize(n);
    std::fill_n(isum_.begin(), stride, 0);
    std::fill_n(isum_sq_.begin(), stride, 0);
    std::vector<std::int64_t> row(static_cast<std::size_t>(width_));
    for (int y = 0; y < height_ && exact_; ++y) {
        if (!k.to_int_row(img.row(y).data(), row.data(), row.size())) {
            exact_ = false;
            break;
        }
        isum_[idx(0, y + 1)] = 0;
        isum_sq_[idx(0, y + 1)] = 0;
        k.integral_row_i64(row.data(), &isum_[idx(1, y)], &isum_sq_[idx(1, y)], &isum_[idx(1, y + 1)],
                           &isum_sq_[idx(1, y + 1)], row.size());
    }
    if (exact_) return;

    isum_ = {};
    isum_sq_ = {};
    fsum_.resize(n);
    fsum_sq_.resize(n);
    std::fill_n(fsum_.begin(), stride, 0.0);
    std::fill_n(fsum_sq_.begin(), stride, 0.0);
    for (int y = 0; y < height_; ++y) {
        fsum_[idx(0, y + 1)] = 0.0;
        fsum_sq_[idx(0, y + 1)] = 0.0;
        k.integral_row_f64(img.row(y).data(), &fsum_[idx(1, y)], &fsum_sq_[idx(1, y)], &fsum_[idx(1, y + 1)],
                           &fsum_sq_[idx(1, y + 1)], static_cast<std::size_t>(width_));
    }
}

double IntegralTables::sum_at(int x, int y) const {
    return exact_ ? static_cast<double>(isum_[idx(x, y)]) : fsum_[idx(x, y)];
}

double IntegralTables::sum_sq_at(int x, int y) const {
    return exact_ ? static_cast<double>(isum_sq_[idx(x, y)]) : fsum_sq_[idx(x, y)];
}

double IntegralTables::rect_sum(int x0, int y0, int x1, int y1) const {
    if (exact_)
        return static_cast<double>(isum_[idx(x1, y1)] - isum_[idx(x0, y1)] - isum_[idx(x1, y0)] + isum_[idx(x0, y0)]);
    return fsum_[idx(x1, y1)] - fsum_[idx(x0, y1)] - fsum_[idx(x1, y0)] + fsum_[idx(x0, y0)];
}

double IntegralTables::rect_sum_sq(int x0, int y0, int x1, int y1) const {
    if (exact_)
        return static_cast<double>(isum_sq_[idx(x1, y1)] - isum_sq_[idx(x0, y1)] - isum_sq_[idx(x1, y0)] +
                                   isum_sq_[idx(x0, y0)]);
    return fsum_sq_[idx(x1, y1)] - fsum_sq_[idx(x0, y1)] - fsum_sq_[idx(x1, y0)] + fsum_sq_[idx(x0, y0)];
}

double IntegralTables::window_variance(int cx, int cy, int half) const {
    const int x0 = std::max(cx - half, 0);
    const int y0 = std::max(cy - half, 0);
    const int x1 = std::min(cx + half + 1, width_);
    const int y1 = std::min(cy + half + 1, height_);
    const std::int64_t count = static_cast<std::int64_t>(x1 - x0) * (y1 - y0);

    if (exact_) {
        const std::int64_t s = isum_[idx(x1, y1)] - isum_[idx(x0, y1)] - isum_[idx(x1, y0)] + isum_[idx(x0, y0)];
        const std::int64_t s2 =
            isum_sq_[idx(x1, y1)] - isum_sq_[idx(x0, y1)] - isum_sq_[idx(x1, y0)] + isum_sq_[idx(x0, y0)];
        // n*S2 - S^2 is an exact non-negative integer; one rounding at the end.
        const __int128 num = static_cast<__int128>(count) * s2 - static_cast<__int128>(s) * s;
        return static_cast<double>(num) / (static_cast<double>(count) * static_cast<double>(count));
    }
    const double s = fsum_[idx(x1, y1)] - fsum_[idx(x0, y1)] - fsum_[idx(x1, y0)] + fsum_[idx(x0, y0)];
    const double s2 = fsum_sq_[idx(x1, y1)] - fsum_sq_[idx(x0, y1)] - fsum_sq_[idx(x1, y0)] + fsum_sq_[idx(x0, y0)];
    const double n = static_cast<double>(count);
    return std::max(0.0, (s2 - s * s / n) / n);
}

WindowStats IntegralTables::window_stats(int cx, int cy, int half) const {
    if (half < 0) throw GeometryError("window half-size must be non-negative");
    if (cx < 0 || cy < 0 || cx >= width_ || cy >= height_)
        throw GeometryError("window center (" + std::to_string(cx) + ", " + std::to_string(cy) +
                            ") outside image");
    const int x0 = std::max(cx - half, 0);
    const int y0 = std::max(cy - half, 0);
    const int x1 = std::min(cx + half + 1, width_);
    const int y1 = std::min(cy + half + 1, height_);
    WindowStats st;
    st.count = (x1 - x0) * (y1 - y0);
    st.mean = rect_sum(x0, y0, x1, y1) / st.count;
    st.variance = window_variance(cx, cy, half);
    return st;
}

}  // namespace snake
