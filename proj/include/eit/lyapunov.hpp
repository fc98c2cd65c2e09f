#pragma once

#include <Eigen/Dense>

#include "eit/state.hpp"

namespace eit {

// Dense Kronecker-product solver for the continuous Lyapunov equation.
// Sizes are small (12x12 -> one 144x144 LU), no Schur pass needed.

// A X + X A^+ = D; matches the spectral-matrix integral identity
// (1/2pi) Int S dOmega = X and the stationary covariance <dx dx^+>.
template <typename Mat>
Mat solve_lyapunov_dagger(const Mat& a, const Mat& d) {
    const int n = static_cast<int>(a.rows());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                m(j * n + i, j * n + k) += a(i, k);             // (I (x) A)
                m(j * n + i, k * n + i) += std::conj(a(j, k));  // X A^+ part
            }
    Eigen::VectorXcd rhs(n * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) rhs(j * n + i) = d(i, j);
    const Eigen::VectorXcd v = m.partialPivLu().solve(rhs);
    Mat x(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) x(i, j) = v(j * n + i);
    return x;
}

}  // namespace eit
