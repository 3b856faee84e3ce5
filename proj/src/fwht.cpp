#include "weyl/fwht.hpp"

#include <cmath>
#include <string>

#include "weyl/kernels.hpp"
#include "weyl/parallel.hpp"

namespace weyl {

Signal::Signal(int m_, std::vector<double> samples_) : m(m_), samples(std::move(samples_)) {
    if (m < 1) throw UsageError("Signal: bit width must be >= 1");
    if (samples.size() != (std::size_t{1} << m))
        throw UsageError("Signal: length " + std::to_string(samples.size()) +
                         " does not equal 2^" + std::to_string(m));
}

Signal Signal::from(std::vector<double> samples) {
    const int m = log2_exact(samples.size());
    if (m < 1) throw UsageError("Signal: length must be at least 2");
    return Signal(m, std::move(samples));
}

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n) {
    if (!is_power_of_two(n))
        throw UsageError("length " + std::to_string(n) + " is not a power of two");
    int m = 0;
    while ((std::size_t{1} << m) < n) ++m;
    return m;
}

void fwht_inplace(std::span<double> data) {
    log2_exact(data.size());
    const auto& k = kernels::active_kernel();
    k.hadamard_passes(data.data(), data.size());
    k.scale(data.data(), data.size(), 1.0 / std::sqrt(static_cast<double>(data.size())));
}

Signal fwht(const Signal& x) {
    Signal out = x;
    fwht_inplace(out.samples);
    return out;
}

std::vector<Signal> fwht_batch(const std::vector<Signal>& rows, unsigned threads) {
    if (rows.empty()) return {};
    const int m = rows.front().m;
    for (const Signal& row : rows)
        if (row.m != m || row.samples.size() != rows.front().samples.size())
            throw UsageError("fwht_batch: ragged rows");
    if (threads == 0) threads = default_thread_count();
    std::vector<Signal> out(rows.begin(), rows.end());
    parallel_for(out.size(), threads, [&out](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) fwht_inplace(out[i].samples);
    });
    return out;
}

}  // namespace weyl
