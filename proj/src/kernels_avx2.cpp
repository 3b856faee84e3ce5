// AVX2 variants of the transform inner loops. This translation unit is the
// only one compiled with -mavx2; availability is re-checked at runtime via
// cpuid before the dispatcher hands out the function pointers.

#include "weyl/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

namespace weyl::kernels {

namespace {

// Stages h=1 and h=2 of one 4-element block, kept in-register. The
// operand order of every add/sub matches the scalar loop, so results are
// bit-identical.
inline __m256d butterfly4(__m256d v) {
    const __m256d sw1 = _mm256_permute_pd(v, 0b0101);       // x1 x0 x3 x2
    v = _mm256_blend_pd(_mm256_add_pd(v, sw1), _mm256_sub_pd(sw1, v), 0b1010);
    const __m256d sw2 = _mm256_permute2f128_pd(v, v, 0x01);  // y2 y3 y0 y1
    return _mm256_blend_pd(_mm256_add_pd(v, sw2), _mm256_sub_pd(sw2, v), 0b1100);
}

void hadamard_passes_avx2(double* x, std::size_t n) {
    if (n < 4) {
        scalar_kernel().hadamard_passes(x, n);
        return;
    }
    for (std::size_t i = 0; i < n; i += 4)
        _mm256_storeu_pd(x + i, butterfly4(_mm256_loadu_pd(x + i)));
    for (std::size_t h = 4; h < n; h *= 2) {
        for (std::size_t i = 0; i < n; i += 2 * h) {
            for (std::size_t j = i; j < i + h; j += 4) {
                const __m256d lo = _mm256_loadu_pd(x + j);
                const __m256d hi = _mm256_loadu_pd(x + j + h);
                _mm256_storeu_pd(x + j, _mm256_add_pd(lo, hi));
                _mm256_storeu_pd(x + j + h, _mm256_sub_pd(lo, hi));
            }
        }
    }
}

void scale_avx2(double* x, std::size_t n, double factor) {
    if (n < 4) {
        scalar_kernel().scale(x, n, factor);
        return;
    }
    const __m256d f = _mm256_set1_pd(factor);
    for (std::size_t i = 0; i < n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), f));
}

// Reorders block lanes so lane l holds element (l xor low), low < 4.
inline __m256d lane_xor(__m256d p, std::uint32_t low) {
    switch (low) {
        case 1: return _mm256_permute_pd(p, 0b0101);
        case 2: return _mm256_permute2f128_pd(p, p, 0x01);
        case 3: return _mm256_permute_pd(_mm256_permute2f128_pd(p, p, 0x01), 0b0101);
        default: return p;
    }
}

void band_product_avx2(const double* y, std::size_t n, std::uint32_t shift, double* z) {
    if (n < 4) {
        scalar_kernel().band_product(y, n, shift, z);
        return;
    }
    const std::uint32_t low = shift & 3u;
    const std::size_t high = shift & ~std::size_t{3};
    for (std::size_t base = 0; base < n; base += 4) {
        const __m256d own = _mm256_loadu_pd(y + base);
        const __m256d partner = lane_xor(_mm256_loadu_pd(y + (base ^ high)), low);
        _mm256_storeu_pd(z + base, _mm256_mul_pd(own, partner));
    }
}

}  // namespace

const Kernel* avx2_kernel() {
    static const bool supported = [] {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") != 0;
    }();
    if (!supported) return nullptr;
    static const Kernel k{"avx2", hadamard_passes_avx2, scale_avx2, band_product_avx2};
    return &k;
}

}  // namespace weyl::kernels

#else

namespace weyl::kernels {
const Kernel* avx2_kernel() { return nullptr; }
}  // namespace weyl::kernels

#endif
