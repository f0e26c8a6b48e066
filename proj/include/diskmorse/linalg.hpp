#ifndef DISKMORSE_LINALG_HPP
#define DISKMORSE_LINALG_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace diskmorse {

/// Dense square matrix, row-major.
struct Matrix {
    int n = 0;
    std::vector<double> a;

    Matrix() = default;
    explicit Matrix(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0.0) {}

    double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    void symmetrize();
    double max_asymmetry() const;  // max |a_ij - a_ji| / scale
    double frobenius() const;

    std::vector<double> multiply(std::span<const double> v) const;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

/// Eigenvalues (ascending) of a symmetric matrix by cyclic Jacobi
/// rotations; sweeps until the off-diagonal Frobenius norm falls below
/// 1e-12 times the matrix Frobenius norm. If evecs is non-null it
/// receives the eigenvectors as columns, in the same order.
std::vector<double> jacobi_eigenvalues(Matrix m, Matrix* evecs = nullptr);

}  // namespace diskmorse

#endif
