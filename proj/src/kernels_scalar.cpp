#include "weyl/kernels.hpp"

namespace weyl::kernels {

namespace {

void hadamard_passes_scalar(double* x, std::size_t n) {
    for (std::size_t h = 1; h < n; h *= 2) {
        for (std::size_t i = 0; i < n; i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                const double lo = x[j];
                const double hi = x[j + h];
                x[j] = lo + hi;
                x[j + h] = lo - hi;
            }
        }
    }
}

void scale_scalar(double* x, std::size_t n, double factor) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= factor;
}

void band_product_scalar(const double* y, std::size_t n, std::uint32_t shift, double* z) {
    for (std::size_t v = 0; v < n; ++v) z[v] = y[v] * y[v ^ shift];
}

}  // namespace

const Kernel& scalar_kernel() {
    static const Kernel k{"scalar", hadamard_passes_scalar, scale_scalar,
                          band_product_scalar};
    return k;
}

}  // namespace weyl::kernels
