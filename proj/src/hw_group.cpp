#include "weyl/hw_group.hpp"

#include <string>

namespace weyl {

std::string to_string(const SignedPermOp& op) {
    return std::string(op.sign() > 0 ? "+" : "-") + "D(" + to_string(op.a()) +
           "," + to_string(op.b()) + ")";
}

void d_apply(const SignedPermOp& op, std::span<const double> in, std::span<double> out) {
    const std::size_t n = std::size_t{1} << op.m();
    if (in.size() != n || out.size() != n)
        throw UsageError("d_apply: vector length " + std::to_string(in.size()) +
                         " does not match 2^" + std::to_string(op.m()));
    if (in.data() == out.data()) throw UsageError("d_apply: in and out must not alias");
    const std::uint32_t a = op.a().value();
    const std::uint32_t b = op.b().value();
    const double s = op.sign();
    for (std::uint32_t v = 0; v < n; ++v)
        out[v ^ a] = bit_dot(b, v) ? -s * in[v] : s * in[v];
}

std::vector<double> d_apply(const SignedPermOp& op, const std::vector<double>& in) {
    std::vector<double> out(in.size());
    d_apply(op, std::span<const double>(in), std::span<double>(out));
    return out;
}

SignedPermOp d_compose(const SignedPermOp& op1, const SignedPermOp& op2) {
    if (op1.m() != op2.m()) throw UsageError("d_compose: width mismatch");
    const int cross = bit_dot(op2.a(), op1.b());
    const int sign = op1.sign() * op2.sign() * (cross ? -1 : 1);
    return SignedPermOp(sign, bit_add(op1.a(), op2.a()), bit_add(op1.b(), op2.b()));
}

SignedPermOp d_inverse(const SignedPermOp& op) {
    const int sign = op.sign() * (bit_dot(op.a(), op.b()) ? -1 : 1);
    return SignedPermOp(sign, op.a(), op.b());
}

DenseMatrix d_materialize(const SignedPermOp& op) {
    if (op.m() > kDenseLimit)
        throw ResourceError("d_materialize: m = " + std::to_string(op.m()) +
                            " exceeds dense limit " + std::to_string(kDenseLimit));
    const std::size_t n = std::size_t{1} << op.m();
    const std::uint32_t a = op.a().value();
    const std::uint32_t b = op.b().value();
    DenseMatrix mat(n);
    // Column v holds sign * (-1)^(b.v) at row v xor a.
    for (std::uint32_t v = 0; v < n; ++v)
        mat.at(v ^ a, v) = bit_dot(b, v) ? -op.sign() : op.sign();
    return mat;
}

}  // namespace weyl
