#include "kernels_impl.hpp"

#include <algorithm>
#include <cmath>

namespace snake::simd::scalar {

void integral_row_i64(const std::int64_t* values, const std::int64_t* above, const std::int64_t* above_sq,
                      std::int64_t* out, std::int64_t* out_sq, std::size_t n) {
    std::int64_t run = 0, run_sq = 0;
    for (std::size_t x = 0; x < n; ++x) {
        run += values[x];
        run_sq += values[x] * values[x];
        out[x] = above[x] + run;
        out_sq[x] = above_sq[x] + run_sq;
    }
}

bool to_int_row(const double* values, std::int64_t* out, std::size_t n) {
    bool ok = true;
    for (std::size_t x = 0; x < n; ++x) {
        const double v = values[x];
        ok &= std::trunc(v) == v && std::abs(v) <= 65535.0;
        out[x] = static_cast<std::int64_t>(std::clamp(v, -65536.0, 65536.0));
    }
    return ok;
}

void integral_row_f64(const double* values, const double* above, const double* above_sq, double* out,
                      double* out_sq, std::size_t n) {
    double run = 0.0, run_sq = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        run += values[x];
        run_sq += values[x] * values[x];
        out[x] = above[x] + run;
        out_sq[x] = above_sq[x] + run_sq;
    }
}

void gradient_row(const double* above, const double* row, const double* below, double gy_scale, double* gx,
                  double* gy, double* mag_sq, std::size_t n) {
    for (std::size_t x = 1; x + 1 < n; ++x) {
        const double dx = (row[x + 1] - row[x - 1]) * 0.5;
        const double dy = (below[x] - above[x]) * gy_scale;
        gx[x] = dx;
        gy[x] = dy;
        mag_sq[x] = dx * dx + dy * dy;
    }
}

void convolve_row(const double* src, const double* taps, std::size_t radius, double* dst, std::size_t n) {
    const std::size_t len = 2 * radius + 1;
    for (std::size_t x = radius; x + radius < n; ++x) {
        const double* s = src + x - radius;
        double acc = 0.0;
        for (std::size_t k = 0; k < len; ++k) acc += taps[k] * s[k];
        dst[x] = acc;
    }
}

Moments masked_moments(const double* values, const std::uint8_t* mask, std::size_t n) {
    Moments m;
    for (std::size_t i = 0; i < n; ++i) {
        if (mask[i]) {
            ++m.count;
            m.sum += values[i];
            m.sum_sq += values[i] * values[i];
        }
    }
    return m;
}

}  // namespace snake::simd::scalar
