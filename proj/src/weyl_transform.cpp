#include "weyl/weyl_transform.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "weyl/kernels.hpp"

namespace weyl {

namespace {

double pow2_half_neg(int m) { return 1.0 / std::sqrt(std::pow(2.0, m)); }

void require_small_enough(int m, const char* what) {
    if (m > kDenseLimit)
        throw ResourceError(std::string(what) + ": m = " + std::to_string(m) +
                            " exceeds the dense limit " + std::to_string(kDenseLimit));
}

}  // namespace

std::span<double> AutocorrBands::row(std::uint32_t a) {
    const std::size_t n = std::size_t{1} << m;
    return {z.data() + a * n, n};
}

std::span<const double> AutocorrBands::row(std::uint32_t a) const {
    const std::size_t n = std::size_t{1} << m;
    return {z.data() + a * n, n};
}

AutocorrBands autocorr_bands(const Signal& y) {
    const std::size_t n = y.size();
    AutocorrBands out;
    out.m = y.m;
    out.z.resize(n * n);
    const auto& k = kernels::active_kernel();
    for (std::uint32_t a = 0; a < n; ++a)
        k.band_product(y.samples.data(), n, a, out.z.data() + a * n);
    return out;
}

WeylSpectrum weyl_fast(const Signal& y) {
    const std::size_t n = y.size();
    const auto& k = kernels::active_kernel();

    WeylSpectrum s;
    s.m = y.m;
    s.coeffs.resize(n * n);

    double norm_sq = 0.0;
    for (double v : y.samples) norm_sq += v * v;
    s.source_norm_sq = norm_sq;

    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::uint32_t a = 0; a < n; ++a) {
        double* row = s.coeffs.data() + std::size_t{a} * n;
        k.band_product(y.samples.data(), n, a, row);
        k.hadamard_passes(row, n);
        k.scale(row, n, inv_sqrt_n);
    }

    // Coefficients at odd a.b overlap vanish identically for any signal.
    // Whatever the butterflies leave there is pure rounding noise; record
    // the worst case, then pin the positions to exact zero.
    double residual = 0.0;
    for (std::uint32_t a = 0; a < n; ++a) {
        double* row = s.coeffs.data() + std::size_t{a} * n;
        for (std::uint32_t b = 0; b < n; ++b) {
            if (bit_dot(a, b) == 0) continue;
            residual = std::max(residual, std::abs(row[b]));
            row[b] = 0.0;
        }
    }
    s.structural_residual = residual;
    if (residual > 1e-12 * norm_sq)
        throw InternalError("transform left " + std::to_string(residual) +
                            " at a structurally zero position (norm^2 = " +
                            std::to_string(norm_sq) + ")");
    return s;
}

WeylSpectrum weyl_naive(const Signal& y) {
    require_small_enough(y.m, "naive transform");
    const std::size_t n = y.size();

    WeylSpectrum s;
    s.m = y.m;
    s.coeffs.resize(n * n);

    double norm_sq = 0.0;
    for (double v : y.samples) norm_sq += v * v;
    s.source_norm_sq = norm_sq;

    const double scale = pow2_half_neg(y.m);
    std::vector<double> dy(n);
    for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = 0; b < n; ++b) {
            const SignedPermOp op = SignedPermOp::d(y.m, a, b);
            d_apply(op, y.samples, dy);
            double acc = 0.0;
            for (std::size_t v = 0; v < n; ++v) acc += y.samples[v] * dy[v];
            s.coeffs[(std::size_t{a} << y.m) | b] = scale * acc;
        }
    }
    return s;
}

WeylSpectrum weyl_of_matrix(const DenseMatrix& M) {
    const std::size_t n = M.n;
    const int m = log2_exact(n);
    if (m < 1) throw UsageError("matrix transform: need at least a 2x2 matrix");
    require_small_enough(m, "matrix transform");

    WeylSpectrum s;
    s.m = m;
    s.coeffs.resize(n * n);

    // Tr[M D(a,b)] = sum_v (-1)^(b.v) M[v, v xor a]: gather the a-th
    // generalized diagonal, then one Hadamard transform per band.
    for (std::uint32_t a = 0; a < n; ++a) {
        double* row = s.coeffs.data() + std::size_t{a} * n;
        for (std::uint32_t v = 0; v < n; ++v) row[v] = M.at(v, v ^ a);
        fwht_inplace({row, n});
    }
    return s;
}

DenseMatrix reconstruct_covariance(const WeylSpectrum& s) {
    require_small_enough(s.m, "reconstruction");
    const std::size_t n = std::size_t{1} << s.m;
    if (s.coeffs.size() != n * n)
        throw UsageError("reconstruction: spectrum has " + std::to_string(s.coeffs.size()) +
                         " coefficients, expected " + std::to_string(n * n));

    DenseMatrix R(n);
    std::vector<double> band(n);
    for (std::uint32_t a = 0; a < n; ++a) {
        // The transform is involutive per band, so transforming row a of
        // the spectrum recovers the generalized diagonal it came from.
        std::span<const double> row = s.row(a);
        std::copy(row.begin(), row.end(), band.begin());
        fwht_inplace(band);
        for (std::uint32_t v = 0; v < n; ++v) R.at(v, v ^ a) = band[v];
    }
    return R;
}

double signed_quadratic_form(std::span<const double> y, std::uint32_t a, std::uint32_t b) {
    const std::size_t n = y.size();
    double acc = 0.0;
    for (std::uint32_t v = 0; v < n; ++v) {
        const double term = y[v] * y[v ^ a];
        acc += bit_dot(b, v) ? -term : term;
    }
    return acc;
}

std::pair<double, double> eigenspace_energies(const Signal& y, const CoeffIndex& idx) {
    if (idx.a.m() != y.m || idx.b.m() != y.m)
        throw UsageError("eigenspace energies: index width does not match the signal");
    if (idx.a.value() == 0 && idx.b.value() == 0)
        throw UsageError("eigenspace energies: (0,0) is the identity, which has no -1 eigenspace");
    if (bit_dot(idx.a, idx.b) != 0)
        throw UsageError("eigenspace energies: " + to_string(idx.a) + "," + to_string(idx.b) +
                         " has odd overlap, so D is not symmetric");

    double norm_sq = 0.0;
    for (double v : y.samples) norm_sq += v * v;
    const double q = signed_quadratic_form(y.samples, idx.a.value(), idx.b.value());

    // (||y||^2 +- y^T D y) / 2; clamp tiny negatives from cancellation.
    double e_plus = 0.5 * (norm_sq + q);
    double e_minus = 0.5 * (norm_sq - q);
    if (e_plus < 0.0) e_plus = 0.0;
    if (e_minus < 0.0) e_minus = 0.0;
    return {e_plus, e_minus};
}

std::uint64_t eigenspace_rank(const CoeffIndex& idx) {
    const int m = idx.a.m();
    if (idx.a.value() == 0 && idx.b.value() == 0)
        throw UsageError("eigenspace rank: (0,0) is the identity");
    // rank of (I + D)/2 = (2^m + Tr D)/2. The trace vanishes for every
    // non-identity element: a != 0 leaves no fixed point, and a = 0 with
    // b != 0 sums a balanced sign pattern.
    std::int64_t trace = 0;
    if (idx.a.value() == 0) {
        for (std::uint32_t v = 0; v < (std::uint32_t{1} << m); ++v)
            trace += bit_dot(idx.b.value(), v) ? -1 : 1;
    }
    const std::int64_t dim = std::int64_t{1} << m;
    return static_cast<std::uint64_t>((dim + trace) / 2);
}

}  // namespace weyl
