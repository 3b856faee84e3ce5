#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "weyl/errors.hpp"

namespace weyl {

// Minimal row-major square matrix used for dense oracles, covariance
// reconstruction and the selection matrix. Not a linear-algebra library.
struct DenseMatrix {
    std::size_t n = 0;
    std::vector<double> data;  // n * n, row-major

    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t side) : n(side), data(side * side, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data[r * n + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * n + c]; }
};

inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.n != b.n) throw UsageError("matmul: size mismatch");
    DenseMatrix c(a.n);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t k = 0; k < a.n; ++k) {
            const double aik = a.at(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < a.n; ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

inline std::vector<double> matvec(const DenseMatrix& a, const std::vector<double>& x) {
    if (a.n != x.size()) throw UsageError("matvec: size mismatch");
    std::vector<double> y(a.n, 0.0);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t j = 0; j < a.n; ++j) y[i] += a.at(i, j) * x[j];
    return y;
}

}  // namespace weyl
