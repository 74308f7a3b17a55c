#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace crowqed {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Minimal by intent: the solvers below
/// are the only consumers and the matrices stay small (<= a few hundred).
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Complex* row(std::size_t i) { return data_.data() + i * cols_; }
    const Complex* row(std::size_t i) const { return data_.data() + i * cols_; }

    double frobenius_norm() const;
    double max_abs() const;

    /// max |A - A^dagger| entry; 0 for exactly Hermitian storage.
    double hermiticity_defect() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Solves A X = B in place (B overwritten with X) by partial-pivot LU.
/// Throws SingularMatrixError when a pivot falls below pivot_tol * max|A|.
void lu_solve_in_place(ComplexMatrix a, ComplexMatrix& b, double pivot_tol = 1e-13);

struct EigenSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // orthonormal eigenvectors in columns
};

/// Eigendecomposition of a complex Hermitian matrix: Householder reduction
/// to real symmetric tridiagonal form followed by implicitly shifted QL with
/// accumulated rotations. Self-contained, O(n^3), accurate to O(n*eps*||A||).
/// Only the lower triangle of `a` is referenced.
EigenSystem hermitian_eigensystem(const ComplexMatrix& a);

}  // namespace crowqed
