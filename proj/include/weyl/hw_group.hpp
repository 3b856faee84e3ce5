#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "weyl/bit_tuple.hpp"
#include "weyl/dense.hpp"

namespace weyl {

// Largest bit width for which dense 2^m x 2^m materialization is allowed.
// Dense matrices exist for oracle checks, not for the data path.
inline constexpr int kDenseLimit = 8;

// Exact representation of sign * D(a, b), where D(a, b) is the signed
// permutation acting on basis vectors as  D(a,b) e_v = (-1)^(b.v) e_(v xor a).
// Composition, inversion and application are integer-exact; there is no
// floating-point state.
class SignedPermOp {
public:
    SignedPermOp(int sign, BitTuple a, BitTuple b) : sign_(sign), a_(a), b_(b) {
        require_same_width(a, b, "SignedPermOp");
        if (sign != 1 && sign != -1)
            throw UsageError("SignedPermOp: sign must be +1 or -1");
    }

    static SignedPermOp identity(int m) {
        return SignedPermOp(1, BitTuple(m, 0), BitTuple(m, 0));
    }
    // Convenience constructor for +D(a, b).
    static SignedPermOp d(int m, std::uint32_t a, std::uint32_t b) {
        return SignedPermOp(1, BitTuple(m, a), BitTuple(m, b));
    }

    int m() const { return a_.m(); }
    int sign() const { return sign_; }
    const BitTuple& a() const { return a_; }
    const BitTuple& b() const { return b_; }

    bool is_identity() const {
        return sign_ == 1 && a_.value() == 0 && b_.value() == 0;
    }

    friend bool operator==(const SignedPermOp&, const SignedPermOp&) = default;

private:
    int sign_;
    BitTuple a_;
    BitTuple b_;
};

std::string to_string(const SignedPermOp& op);

// out[v xor a] = sign * (-1)^(b.v) * in[v]. Exact in floating point; `in`
// and `out` must not alias.
void d_apply(const SignedPermOp& op, std::span<const double> in, std::span<double> out);
std::vector<double> d_apply(const SignedPermOp& op, const std::vector<double>& in);

// Product op1 * op2. Sign rule: D(a,b) D(a',b') = (-1)^(a'.b) D(a+a', b+b').
SignedPermOp d_compose(const SignedPermOp& op1, const SignedPermOp& op2);

// Transpose = inverse: [D(a,b)]^-1 = (-1)^(a.b) D(a,b).
SignedPermOp d_inverse(const SignedPermOp& op);

// Dense 2^m x 2^m matrix with entries in {-1, 0, +1}; one nonzero per
// row and column. Capped at kDenseLimit.
DenseMatrix d_materialize(const SignedPermOp& op);

}  // namespace weyl
