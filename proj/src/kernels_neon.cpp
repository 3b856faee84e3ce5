// NEON variants for aarch64, mirroring the scalar loop structure with
// 2-lane double vectors. NEON is baseline on aarch64, so no runtime probe
// is needed beyond the compile-time guard.

#include "weyl/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace weyl::kernels {

namespace {

void hadamard_passes_neon(double* x, std::size_t n) {
    if (n < 2) return;
    // Stage h=1, one 2-element block per vector.
    for (std::size_t i = 0; i < n; i += 2) {
        const float64x2_t v = vld1q_f64(x + i);
        const float64x2_t sw = vextq_f64(v, v, 1);  // x1 x0
        const float64x2_t sum = vaddq_f64(v, sw);
        const float64x2_t diff = vsubq_f64(sw, v);  // lane 1 = x0 - x1
        vst1q_f64(x + i, vsetq_lane_f64(vgetq_lane_f64(diff, 1), sum, 1));
    }
    for (std::size_t h = 2; h < n; h *= 2) {
        for (std::size_t i = 0; i < n; i += 2 * h) {
            for (std::size_t j = i; j < i + h; j += 2) {
                const float64x2_t lo = vld1q_f64(x + j);
                const float64x2_t hi = vld1q_f64(x + j + h);
                vst1q_f64(x + j, vaddq_f64(lo, hi));
                vst1q_f64(x + j + h, vsubq_f64(lo, hi));
            }
        }
    }
}

void scale_neon(double* x, std::size_t n, double factor) {
    if (n < 2) {
        scalar_kernel().scale(x, n, factor);
        return;
    }
    for (std::size_t i = 0; i < n; i += 2)
        vst1q_f64(x + i, vmulq_n_f64(vld1q_f64(x + i), factor));
}

void band_product_neon(const double* y, std::size_t n, std::uint32_t shift, double* z) {
    if (n < 2) {
        scalar_kernel().band_product(y, n, shift, z);
        return;
    }
    const std::size_t high = shift & ~std::size_t{1};
    const bool swap = (shift & 1u) != 0;
    for (std::size_t base = 0; base < n; base += 2) {
        const float64x2_t own = vld1q_f64(y + base);
        float64x2_t partner = vld1q_f64(y + (base ^ high));
        if (swap) partner = vextq_f64(partner, partner, 1);
        vst1q_f64(z + base, vmulq_f64(own, partner));
    }
}

}  // namespace

const Kernel* neon_kernel() {
    static const Kernel k{"neon", hadamard_passes_neon, scale_neon, band_product_neon};
    return &k;
}

}  // namespace weyl::kernels

#else

namespace weyl::kernels {
const Kernel* neon_kernel() { return nullptr; }
}  // namespace weyl::kernels

#endif
