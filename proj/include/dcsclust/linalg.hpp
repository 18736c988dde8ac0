#pragma once

#include <array>
#include <cstddef>

namespace dcsclust {

/// Dense symmetric matrix of order n <= 4, stored row-major in a fixed array.
struct SymMat {
    int n = 0;
    std::array<double, 16> a{};

    double& at(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }

    static SymMat identity(int n);
    static SymMat zero(int n);
};

namespace linalg {

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Eigenvalues are returned in ascending order with matching orthonormal
/// columns in vecs (vecs[i*n+j] = component i of eigenvector j).
void eigen_sym(const SymMat& m, std::array<double, 4>& vals, std::array<double, 16>& vecs);

/// Spectral power m^p (p = -1 inverse, p = -0.5 inverse square root, ...).
/// Throws ScalingError when m is not positive definite or its condition
/// number exceeds cond_limit (the error carries the condition estimate).
SymMat sym_pow(const SymMat& m, double p, double cond_limit = 1e12);

/// y = m x for vectors of length m.n.
std::array<double, 4> mat_vec(const SymMat& m, const std::array<double, 4>& x);

}  // namespace linalg

}  // namespace dcsclust
