#include "weyl/bit_tuple.hpp"

namespace weyl {

std::vector<CoeffIndex> enumerate_symmetric_indices(int m) {
    if (m < 1 || m > BitTuple::kMaxBits)
        throw UsageError("enumerate_symmetric_indices: bad bit width " + std::to_string(m));
    const std::uint32_t n = std::uint32_t{1} << m;
    std::vector<CoeffIndex> out;
    out.reserve(symmetric_index_count(m));
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
            if (bit_dot(a, b) == 0) out.emplace_back(m, a, b);
    return out;
}

std::uint64_t symmetric_index_count(int m) {
    const std::uint64_t n = std::uint64_t{1} << m;
    return n * (n + 1) / 2;
}

}  // namespace weyl
