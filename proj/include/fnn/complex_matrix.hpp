#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace fnn {

using cdouble = std::complex<double>;

// Dense row-major complex matrix. The whole workbench lives on 2-, 4- and
// 16-dimensional operators, so there is no sparse path and no BLAS: exactness
// and simplicity win at these sizes.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols);
    ComplexMatrix(int rows, int cols, std::vector<cdouble> entries);

    static ComplexMatrix identity(int n);
    static ComplexMatrix zero(int rows, int cols);
    // Column vector from amplitudes.
    static ComplexMatrix column(std::vector<cdouble> amplitudes);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cdouble& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const cdouble& at(int r, int c) const {
        return data_[static_cast<std::size_t>(r) * cols_ + c];
    }

    const std::vector<cdouble>& data() const { return data_; }

    bool all_finite() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cdouble> data_;
};

struct HermitianCheck {
    bool is_hermitian = false;
    double max_asymmetry = 0.0;  // max |A - A^dagger| entry
    bool is_psd = false;
    double min_eigenvalue = 0.0;  // of the Hermitian part
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, cdouble factor);
ComplexMatrix dagger(const ComplexMatrix& a);
// |v><v| for a column vector v.
ComplexMatrix outer(const ComplexMatrix& v);

cdouble trace(const ComplexMatrix& a);
// trace(a * b) without forming the product.
cdouble trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b);

// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
// ascending order. Input is symmetrized as (A + A^dagger)/2 first.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);

// Hermiticity deviation plus positive semidefiniteness down to -tol on the
// minimum eigenvalue.
HermitianCheck check_hermitian_psd(const ComplexMatrix& a, double tol = 1e-10);

}  // namespace fnn
