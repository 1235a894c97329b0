#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

// Data-parallel inner loops. Every kernel has a portable scalar reference and
// optionally an AVX2 variant; kernels() returns the best table the running CPU
// supports. Set SNAKEFIT_ISA=scalar in the environment to force the reference.

namespace snake::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

struct Moments {
    std::int64_t count = 0;
    double sum = 0.0;
    double sum_sq = 0.0;
};

struct Kernels {
    Isa isa = Isa::Scalar;

    // out[x] = above[x] + sum(values[0..x]) and likewise for squares; one row
    // of a summed-area table. Integer variant is exact.
    void (*integral_row_i64)(const std::int64_t* values, const std::int64_t* above, const std::int64_t* above_sq,
                             std::int64_t* out, std::int64_t* out_sq, std::size_t n);
    // out[x] = values[x] truncated. Returns false unless every value is an
    // integer with |v| <= 65535; out is unspecified then.
    bool (*to_int_row)(const double* values, std::int64_t* out, std::size_t n);
    void (*integral_row_f64)(const double* values, const double* above, const double* above_sq, double* out,
                             double* out_sq, std::size_t n);

    // Central differences for columns 1..n-2 of one image row.
    // gx = (row[x+1]-row[x-1])/2, gy = (below[x]-above[x]) * gy_scale.
    void (*gradient_row)(const double* above, const double* row, const double* below, double gy_scale,
                         double* gx, double* gy, double* mag_sq, std::size_t n);

    // dst[x] = sum_k taps[k] * src[x + k - radius] for x in [radius, n - radius).
    // Border samples are left untouched.
    void (*convolve_row)(const double* src, const double* taps, std::size_t radius, double* dst, std::size_t n);

    // Count, sum and sum of squares of values where mask != 0.
    Moments (*masked_moments)(const double* values, const std::uint8_t* mask, std::size_t n);
};

const Kernels& scalar_kernels();

/// Nullptr when the AVX2 build is absent or the CPU lacks the extension.
const Kernels* avx2_kernels();

bool available(Isa isa);
const Kernels& kernels_for(Isa isa);

/// Process-wide table, resolved once on first use.
const Kernels& kernels();

}  // namespace snake::simd
