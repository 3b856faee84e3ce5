#pragma once

#include <span>
#include <vector>

#include "weyl/errors.hpp"

namespace weyl {

// A real signal of dyadic length 2^m, m >= 1.
struct Signal {
    int m = 0;
    std::vector<double> samples;

    Signal() = default;
    Signal(int m_, std::vector<double> samples_);

    // Infers m from the length; throws UsageError unless it is 2^m, m >= 1.
    static Signal from(std::vector<double> samples);

    std::size_t size() const { return samples.size(); }
};

// True if n = 2^m for some m >= 0.
bool is_power_of_two(std::size_t n);
// log2 of a power of two; UsageError otherwise.
int log2_exact(std::size_t n);

// In-place orthonormal Walsh-Hadamard transform in natural ordering:
// out_w = 2^(-m/2) * sum_v (-1)^(v.w) in_v. Involutive. The butterfly runs
// unnormalized and a single scaling pass is applied at the end, one
// multiplication per sample.
void fwht_inplace(std::span<double> data);

Signal fwht(const Signal& x);

// fwht applied to every row; rows may be processed concurrently but each
// writes only its own storage, so the result is scheduling-independent.
std::vector<Signal> fwht_batch(const std::vector<Signal>& rows, unsigned threads = 0);

}  // namespace weyl
