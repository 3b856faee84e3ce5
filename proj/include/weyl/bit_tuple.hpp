#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "weyl/errors.hpp"

namespace weyl {

// Binary m-tuples index the 2^m coordinates of a signal. The written tuple
// (v_{m-1} ... v_1 v_0) encodes value = sum v_i * 2^i, so the leftmost
// printed bit is the most significant (coarsest scale).
class BitTuple {
public:
    static constexpr int kMaxBits = 31;

    BitTuple(int m, std::uint32_t value) : m_(m), value_(value) {
        if (m < 1 || m > kMaxBits)
            throw UsageError("BitTuple: bit width " + std::to_string(m) +
                             " out of range [1, " + std::to_string(kMaxBits) + "]");
        if (value >= (std::uint32_t{1} << m))
            throw UsageError("BitTuple: value " + std::to_string(value) +
                             " does not fit in " + std::to_string(m) + " bits");
    }

    int m() const { return m_; }
    std::uint32_t value() const { return value_; }

    friend bool operator==(const BitTuple&, const BitTuple&) = default;

private:
    int m_;
    std::uint32_t value_;
};

// MSB-first bit string, e.g. (m=4, 6) -> "0110".
inline std::string to_string(const BitTuple& t) {
    std::string s(static_cast<std::size_t>(t.m()), '0');
    for (int i = 0; i < t.m(); ++i)
        if (t.value() >> i & 1u) s[static_cast<std::size_t>(t.m() - 1 - i)] = '1';
    return s;
}

inline void require_same_width(const BitTuple& u, const BitTuple& v, const char* op) {
    if (u.m() != v.m())
        throw UsageError(std::string(op) + ": width mismatch (" +
                         std::to_string(u.m()) + " vs " + std::to_string(v.m()) + ")");
}

// Coordinatewise addition over Z_2, i.e. XOR. Self-inverse.
inline BitTuple bit_add(const BitTuple& u, const BitTuple& v) {
    require_same_width(u, v, "bit_add");
    return BitTuple(u.m(), u.value() ^ v.value());
}

// Inner product over Z_2: parity of the overlapping support.
inline int bit_dot(const BitTuple& u, const BitTuple& v) {
    require_same_width(u, v, "bit_dot");
    return std::popcount(u.value() & v.value()) & 1;
}

// Raw-integer variant for inner loops.
inline int bit_dot(std::uint32_t u, std::uint32_t v) {
    return std::popcount(u & v) & 1;
}

// A coefficient position (a, b). Positions with odd a.b overlap carry no
// information for symmetric sources and are kept as structural zeros.
struct CoeffIndex {
    BitTuple a;
    BitTuple b;

    CoeffIndex(BitTuple a_, BitTuple b_) : a(a_), b(b_) {
        require_same_width(a, b, "CoeffIndex");
    }
    CoeffIndex(int m, std::uint32_t a_, std::uint32_t b_)
        : CoeffIndex(BitTuple(m, a_), BitTuple(m, b_)) {}

    int m() const { return a.m(); }
    // 1 when the coefficient is structurally zero for symmetric sources.
    int symmetric_type() const { return bit_dot(a, b); }

    // Canonical flat position: a-major, b-minor.
    std::uint64_t flat() const {
        return (std::uint64_t{a.value()} << a.m()) | b.value();
    }
    static CoeffIndex from_flat(int m, std::uint64_t flat) {
        const std::uint32_t mask = (std::uint32_t{1} << m) - 1;
        return CoeffIndex(m, static_cast<std::uint32_t>(flat >> m) & mask,
                          static_cast<std::uint32_t>(flat) & mask);
    }

    friend bool operator==(const CoeffIndex&, const CoeffIndex&) = default;
};

inline std::string to_string(const CoeffIndex& idx) {
    return "(" + to_string(idx.a) + "," + to_string(idx.b) + ")";
}

// All (a, b) with even overlap, in canonical a-major ascending order.
// There are exactly 2^m (2^m + 1) / 2 of them.
std::vector<CoeffIndex> enumerate_symmetric_indices(int m);

// Count of the above without materializing the list.
std::uint64_t symmetric_index_count(int m);

}  // namespace weyl
