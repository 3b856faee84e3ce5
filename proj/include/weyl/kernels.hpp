#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace weyl::kernels {

// Data-parallel inner loops behind the transform. Each implementation must
// produce bit-identical results: every kernel is a pure elementwise map or
// a butterfly whose per-element operation tree is fixed, so lane width does
// not change rounding.
struct Kernel {
    const char* name;
    // In-place unnormalized Walsh-Hadamard butterfly passes over n = 2^k
    // elements (sums/differences only; no scaling).
    void (*hadamard_passes)(double* x, std::size_t n);
    // x[i] *= factor for all i.
    void (*scale)(double* x, std::size_t n, double factor);
    // Dyadic autocorrelation band: z[v] = y[v] * y[v xor shift], shift < n.
    void (*band_product)(const double* y, std::size_t n, std::uint32_t shift, double* z);
};

const Kernel& scalar_kernel();
// Null when the build or the running CPU lacks the instruction set.
const Kernel* avx2_kernel();
const Kernel* neon_kernel();

// Runtime-selected implementation. Defaults to the widest available; the
// WEYL_KERNEL environment variable ("scalar", "avx2", "neon", "auto")
// overrides the default once at startup.
const Kernel& active_kernel();

// Force a specific implementation ("auto" restores the default).
// Throws UsageError when the named kernel is unavailable.
void set_active_kernel(std::string_view name);

std::vector<std::string> available_kernels();

}  // namespace weyl::kernels
