// Compiled with -mavx2 (no FMA, so products and sums round exactly like the
// scalar reference wherever the evaluation order matches).
#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "kernels_impl.hpp"

namespace snake::simd::avx2 {

namespace {

// In-register inclusive prefix sum over four 64-bit lanes.
inline __m256i prefix4(__m256i x) {
    const __m256i zero = _mm256_setzero_si256();
    x = _mm256_add_epi64(x, _mm256_blend_epi32(_mm256_permute4x64_epi64(x, _MM_SHUFFLE(2, 1, 0, 0)), zero, 0x03));
    x = _mm256_add_epi64(x, _mm256_blend_epi32(_mm256_permute4x64_epi64(x, _MM_SHUFFLE(1, 0, 0, 0)), zero, 0x0F));
    return x;
}

inline __m256d prefix4(__m256d x) {
    const __m256d zero = _mm256_setzero_pd();
    x = _mm256_add_pd(x, _mm256_blend_pd(_mm256_permute4x64_pd(x, _MM_SHUFFLE(2, 1, 0, 0)), zero, 0x1));
    x = _mm256_add_pd(x, _mm256_blend_pd(_mm256_permute4x64_pd(x, _MM_SHUFFLE(1, 0, 0, 0)), zero, 0x3));
    return x;
}

inline __m256i last_lane(__m256i x) { return _mm256_permute4x64_epi64(x, _MM_SHUFFLE(3, 3, 3, 3)); }
inline __m256d last_lane(__m256d x) { return _mm256_permute4x64_pd(x, _MM_SHUFFLE(3, 3, 3, 3)); }

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void integral_row_i64(const std::int64_t* values, const std::int64_t* above, const std::int64_t* above_sq,
                      std::int64_t* out, std::int64_t* out_sq, std::size_t n) {
    __m256i carry = _mm256_setzero_si256();
    __m256i carry_sq = _mm256_setzero_si256();
    std::size_t x = 0;
    for (; x + 4 <= n; x += 4) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values + x));
        // |v| <= 65535 fits the low 32 bits, so the signed 32x32 multiply is exact.
        const __m256i run = _mm256_add_epi64(prefix4(v), carry);
        const __m256i run_sq = _mm256_add_epi64(prefix4(_mm256_mul_epi32(v, v)), carry_sq);
        carry = last_lane(run);
        carry_sq = last_lane(run_sq);
        const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(above + x));
        const __m256i a_sq = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(above_sq + x));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + x), _mm256_add_epi64(a, run));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out_sq + x), _mm256_add_epi64(a_sq, run_sq));
    }
    std::int64_t run = _mm256_extract_epi64(carry, 0);
    std::int64_t run_sq = _mm256_extract_epi64(carry_sq, 0);
    for (; x < n; ++x) {
        run += values[x];
        run_sq += values[x] * values[x];
        out[x] = above[x] + run;
        out_sq[x] = above_sq[x] + run_sq;
    }
}

bool to_int_row(const double* values, std::int64_t* out, std::size_t n) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    const __m256d limit = _mm256_set1_pd(65535.0);
    __m256d bad = _mm256_setzero_pd();
    std::size_t x = 0;
    for (; x + 4 <= n; x += 4) {
        const __m256d v = _mm256_loadu_pd(values + x);
        const __m256d t = _mm256_round_pd(v, _MM_FROUND_TO_ZERO | _MM_FROUND_NO_EXC);
        bad = _mm256_or_pd(bad, _mm256_cmp_pd(v, t, _CMP_NEQ_UQ));
        bad = _mm256_or_pd(bad, _mm256_cmp_pd(_mm256_andnot_pd(sign, v), limit, _CMP_GT_OQ));
        const __m128i i32 = _mm256_cvttpd_epi32(t);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + x), _mm256_cvtepi32_epi64(i32));
    }
    bool ok = _mm256_movemask_pd(bad) == 0;
    for (; x < n; ++x) {
        const double v = values[x];
        ok &= std::trunc(v) == v && std::abs(v) <= 65535.0;
        out[x] = static_cast<std::int64_t>(std::clamp(v, -65536.0, 65536.0));
    }
    return ok;
}

void integral_row_f64(const double* values, const double* above, const double* above_sq, double* out,
                      double* out_sq, std::size_t n) {
    __m256d carry = _mm256_setzero_pd();
    __m256d carry_sq = _mm256_setzero_pd();
    std::size_t x = 0;
    for (; x + 4 <= n; x += 4) {
        const __m256d v = _mm256_loadu_pd(values + x);
        const __m256d run = _mm256_add_pd(prefix4(v), carry);
        const __m256d run_sq = _mm256_add_pd(prefix4(_mm256_mul_pd(v, v)), carry_sq);
        carry = last_lane(run);
        carry_sq = last_lane(run_sq);
        _mm256_storeu_pd(out + x, _mm256_add_pd(_mm256_loadu_pd(above + x), run));
        _mm256_storeu_pd(out_sq + x, _mm256_add_pd(_mm256_loadu_pd(above_sq + x), run_sq));
    }
    double run = _mm256_cvtsd_f64(carry);
    double run_sq = _mm256_cvtsd_f64(carry_sq);
    for (; x < n; ++x) {
        run += values[x];
        run_sq += values[x] * values[x];
        out[x] = above[x] + run;
        out_sq[x] = above_sq[x] + run_sq;
    }
}

void gradient_row(const double* above, const double* row, const double* below, double gy_scale, double* gx,
                  double* gy, double* mag_sq, std::size_t n) {
    if (n < 3) return;
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d scale = _mm256_set1_pd(gy_scale);
    std::size_t x = 1;
    for (; x + 4 < n; x += 4) {
        const __m256d dx = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(row + x + 1), _mm256_loadu_pd(row + x - 1)), half);
        const __m256d dy = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(below + x), _mm256_loadu_pd(above + x)), scale);
        _mm256_storeu_pd(gx + x, dx);
        _mm256_storeu_pd(gy + x, dy);
        _mm256_storeu_pd(mag_sq + x, _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
    }
    for (; x + 1 < n; ++x) {
        const double dx = (row[x + 1] - row[x - 1]) * 0.5;
        const double dy = (below[x] - above[x]) * gy_scale;
        gx[x] = dx;
        gy[x] = dy;
        mag_sq[x] = dx * dx + dy * dy;
    }
}

void convolve_row(const double* src, const double* taps, std::size_t radius, double* dst, std::size_t n) {
    const std::size_t len = 2 * radius + 1;
    if (n < len) return;
    const std::size_t end = n - radius;
    std::size_t x = radius;
    for (; x + 4 <= end; x += 4) {
        const double* s = src + x - radius;
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t k = 0; k < len; ++k)
            acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(taps[k]), _mm256_loadu_pd(s + k)));
        _mm256_storeu_pd(dst + x, acc);
    }
    for (; x < end; ++x) {
        const double* s = src + x - radius;
        double acc = 0.0;
        for (std::size_t k = 0; k < len; ++k) acc += taps[k] * s[k];
        dst[x] = acc;
    }
}

Moments masked_moments(const double* values, const std::uint8_t* mask, std::size_t n) {
    __m256d sum = _mm256_setzero_pd();
    __m256d sum_sq = _mm256_setzero_pd();
    __m256i count = _mm256_setzero_si256();
    const __m256i one = _mm256_set1_epi64x(1);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        std::int32_t packed;
        __builtin_memcpy(&packed, mask + i, sizeof(packed));
        // Widen four mask bytes to 64-bit lanes, then build an all-ones lane mask.
        const __m256i m64 = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed));
        const __m256i sel = _mm256_cmpgt_epi64(m64, _mm256_setzero_si256());
        const __m256d v = _mm256_and_pd(_mm256_loadu_pd(values + i), _mm256_castsi256_pd(sel));
        sum = _mm256_add_pd(sum, v);
        sum_sq = _mm256_add_pd(sum_sq, _mm256_mul_pd(v, v));
        count = _mm256_add_epi64(count, _mm256_and_si256(sel, one));
    }
    Moments m;
    m.sum = hsum(sum);
    m.sum_sq = hsum(sum_sq);
    alignas(32) std::int64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), count);
    m.count = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) {
        if (mask[i]) {
            ++m.count;
            m.sum += values[i];
            m.sum_sq += values[i] * values[i];
        }
    }
    return m;
}

}  // namespace snake::simd::avx2
