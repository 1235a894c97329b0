#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace snake::simd {

namespace {

bool cpu_has_avx2() {
#if defined(SNAKEFIT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Kernels make_scalar() {
    Kernels k;
    k.isa = Isa::Scalar;
    k.integral_row_i64 = scalar::integral_row_i64;
    k.to_int_row = scalar::to_int_row;
    k.integral_row_f64 = scalar::integral_row_f64;
    k.gradient_row = scalar::gradient_row;
    k.convolve_row = scalar::convolve_row;
    k.masked_moments = scalar::masked_moments;
    return k;
}

#if defined(SNAKEFIT_HAVE_AVX2)
Kernels make_avx2() {
    Kernels k;
    k.isa = Isa::Avx2;
    k.integral_row_i64 = avx2::integral_row_i64;
    k.to_int_row = avx2::to_int_row;
    k.integral_row_f64 = avx2::integral_row_f64;
    k.gradient_row = avx2::gradient_row;
    k.convolve_row = avx2::convolve_row;
    k.masked_moments = avx2::masked_moments;
    return k;
}
#endif

const Kernels& resolve() {
    if (const char* forced = std::getenv("SNAKEFIT_ISA"); forced && std::string_view(forced) == "scalar")
        return scalar_kernels();
    if (const Kernels* k = avx2_kernels()) return *k;
    return scalar_kernels();
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

const Kernels& scalar_kernels() {
    static const Kernels table = make_scalar();
    return table;
}

const Kernels* avx2_kernels() {
#if defined(SNAKEFIT_HAVE_AVX2)
    static const Kernels table = make_avx2();
    return cpu_has_avx2() ? &table : nullptr;
#else
    return nullptr;
#endif
}

bool available(Isa isa) { return isa == Isa::Scalar || (isa == Isa::Avx2 && avx2_kernels() != nullptr); }

const Kernels& kernels_for(Isa isa) {
    if (isa == Isa::Avx2 && avx2_kernels()) return *avx2_kernels();
    return scalar_kernels();
}

const Kernels& kernels() {
    static const Kernels& table = resolve();
    return table;
}

}  // namespace snake::simd
