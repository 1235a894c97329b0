#pragma once

#include "snake/simd/kernels.hpp"

namespace snake::simd {

namespace scalar {
bool to_int_row(const double*, std::int64_t*, std::size_t);
void integral_row_i64(const std::int64_t*, const std::int64_t*, const std::int64_t*, std::int64_t*, std::int64_t*,
                      std::size_t);
void integral_row_f64(const double*, const double*, const double*, double*, double*, std::size_t);
void gradient_row(const double*, const double*, const double*, double, double*, double*, double*, std::size_t);
void convolve_row(const double*, const double*, std::size_t, double*, std::size_t);
Moments masked_moments(const double*, const std::uint8_t*, std::size_t);
}  // namespace scalar

#if defined(SNAKEFIT_HAVE_AVX2)
namespace avx2 {
bool to_int_row(const double*, std::int64_t*, std::size_t);
void integral_row_i64(const std::int64_t*, const std::int64_t*, const std::int64_t*, std::int64_t*, std::int64_t*,
                      std::size_t);
void integral_row_f64(const double*, const double*, const double*, double*, double*, std::size_t);
void gradient_row(const double*, const double*, const double*, double, double*, double*, double*, std::size_t);
void convolve_row(const double*, const double*, std::size_t, double*, std::size_t);
Moments masked_moments(const double*, const std::uint8_t*, std::size_t);
}  // namespace avx2
#endif

}  // namespace snake::simd
