#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "weyl/bit_tuple.hpp"
#include "weyl/dense.hpp"
#include "weyl/fwht.hpp"
#include "weyl/hw_group.hpp"

namespace weyl {

// The 2^m dyadic autocorrelation bands of a signal: row a holds
// z_a[v] = y[v] * y[v xor a]. Row 0 is the pointwise square; every row
// satisfies z_a[v] == z_a[v xor a] exactly (IEEE multiplication commutes).
struct AutocorrBands {
    int m = 0;
    std::vector<double> z;  // 2^m rows of length 2^m, row-major

    std::span<double> row(std::uint32_t a);
    std::span<const double> row(std::uint32_t a) const;
};

// The 2^(2m) coefficients of a signal or matrix, flat in canonical
// (a-major, b-minor) order. For spectra derived from a signal or another
// symmetric source, positions with odd a.b overlap are exact zeros.
struct WeylSpectrum {
    int m = 0;
    std::vector<double> coeffs;  // 2^(2m)
    // ||y||^2 cached when the spectrum came from a signal.
    std::optional<double> source_norm_sq;
    // Largest pre-zeroing magnitude observed at structurally zero
    // positions on the fast path (diagnostic; expected ~0).
    double structural_residual = 0.0;

    double at(std::uint32_t a, std::uint32_t b) const {
        return coeffs[(std::size_t{a} << m) | b];
    }
    std::span<const double> row(std::uint32_t a) const {
        const std::size_t n = std::size_t{1} << m;
        return {coeffs.data() + a * n, n};
    }
};

// z_a[v] = y[v] * y[v xor a] for every band a.
AutocorrBands autocorr_bands(const Signal& y);

// Transform via the Hadamard factorization: row a of the spectrum is the
// orthonormal Walsh-Hadamard transform of band z_a. Positions with odd a.b
// overlap are checked to be negligible (<= 1e-12 * ||y||^2) and then
// forced to exact zero so spectra are bit-stable. O(m 4^m).
WeylSpectrum weyl_fast(const Signal& y);

// Definitional path: coefficient (a,b) = 2^(-m/2) * y^T D(a,b) y with
// D applied through the signed-permutation algebra. Independent of the
// fast path; serves as its oracle. O(8^m), capped at the dense limit.
WeylSpectrum weyl_naive(const Signal& y);

// Spectrum of a general square matrix: coefficient (a,b) =
// 2^(-m/2) Tr[M D(a,b)]. No structural zeroing; M need not be symmetric.
WeylSpectrum weyl_of_matrix(const DenseMatrix& M);

// Expands the spectrum back in the signed-permutation basis, recovering
// y y^T for signal-derived spectra. Capped at the dense limit.
DenseMatrix reconstruct_covariance(const WeylSpectrum& s);

// Squared distances of y to the +1 / -1 eigenspaces of D(a,b):
// E_plus = ||P^T y||^2, E_minus = ||Q^T y||^2 via the projectors
// (I +- D)/2. Satisfies E_plus + E_minus = ||y||^2 and
// 2^(-m/2) (E_plus - E_minus) = coefficient (a,b). idx must not be (0,0).
std::pair<double, double> eigenspace_energies(const Signal& y, const CoeffIndex& idx);

// Dimension of the +1 (equivalently -1) eigenspace of D(a,b) for
// idx != (0,0), computed exactly from the projector trace. Always 2^(m-1):
// the two eigenspaces split the space evenly.
std::uint64_t eigenspace_rank(const CoeffIndex& idx);

// y^T D(a,b) y, accumulated in index order (deterministic).
double signed_quadratic_form(std::span<const double> y, std::uint32_t a, std::uint32_t b);

}  // namespace weyl
