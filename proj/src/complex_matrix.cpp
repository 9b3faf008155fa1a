#include "fnn/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fnn {

namespace {

void require(bool cond, const char* message) {
    if (!cond) throw std::invalid_argument(message);
}

}  // namespace

ComplexMatrix::ComplexMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {
    require(rows > 0 && cols > 0, "matrix dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<cdouble> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    require(rows > 0 && cols > 0, "matrix dimensions must be positive");
    require(data_.size() == static_cast<std::size_t>(rows) * cols,
            "entry count does not match dimensions");
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::zero(int rows, int cols) { return ComplexMatrix(rows, cols); }

ComplexMatrix ComplexMatrix::column(std::vector<cdouble> amplitudes) {
    const int n = static_cast<int>(amplitudes.size());
    return ComplexMatrix(n, 1, std::move(amplitudes));
}

bool ComplexMatrix::all_finite() const {
    for (const cdouble& v : data_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.all_finite() && b.all_finite(), "kron: non-finite entries");
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int ar = 0; ar < a.rows(); ++ar) {
        for (int ac = 0; ac < a.cols(); ++ac) {
            const cdouble f = a.at(ar, ac);
            if (f == cdouble{}) continue;
            for (int br = 0; br < b.rows(); ++br) {
                for (int bc = 0; bc < b.cols(); ++bc) {
                    out.at(ar * b.rows() + br, ac * b.cols() + bc) = f * b.at(br, bc);
                }
            }
        }
    }
    return out;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.cols() == b.rows(), "matmul: inner dimensions do not match");
    ComplexMatrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const cdouble f = a.at(i, k);
            if (f == cdouble{}) continue;
            for (int j = 0; j < b.cols(); ++j) out.at(i, j) += f * b.at(k, j);
        }
    }
    return out;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "add: shape mismatch");
    ComplexMatrix out = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.at(i, j) += b.at(i, j);
    return out;
}

ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "subtract: shape mismatch");
    ComplexMatrix out = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.at(i, j) -= b.at(i, j);
    return out;
}

ComplexMatrix scale(const ComplexMatrix& a, cdouble factor) {
    ComplexMatrix out = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.at(i, j) *= factor;
    return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.at(j, i) = std::conj(a.at(i, j));
    return out;
}

ComplexMatrix outer(const ComplexMatrix& v) {
    require(v.cols() == 1, "outer: expects a column vector");
    ComplexMatrix out(v.rows(), v.rows());
    for (int i = 0; i < v.rows(); ++i)
        for (int j = 0; j < v.rows(); ++j) out.at(i, j) = v.at(i, 0) * std::conj(v.at(j, 0));
    return out;
}

cdouble trace(const ComplexMatrix& a) {
    require(a.is_square(), "trace: matrix must be square");
    cdouble t = 0.0;
    for (int i = 0; i < a.rows(); ++i) t += a.at(i, i);
    return t;
}

cdouble trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.cols() == b.rows() && b.cols() == a.rows(),
            "trace_product: shapes do not form a square product");
    cdouble t = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t += a.at(i, j) * b.at(j, i);
    return t;
}

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "max_abs_difference: shape mismatch");
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a.at(i, j) - b.at(i, j)));
    return m;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
    require(a.is_square(), "hermitian_eigenvalues: matrix must be square");
    const int n = a.rows();

    // Hermitian part; off-Hermitian noise from the caller is folded in here.
    ComplexMatrix h(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h.at(i, j) = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));

    double scale_norm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale_norm = std::max(scale_norm, std::abs(h.at(i, j)));
    if (scale_norm == 0.0) return std::vector<double>(n, 0.0);

    const double stop = 1e-15 * scale_norm;
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(h.at(p, q)));
        if (off <= stop) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cdouble apq = h.at(p, q);
                if (std::abs(apq) <= stop) continue;
                const double app = h.at(p, p).real();
                const double aqq = h.at(q, q).real();

                // Phase that makes the off-diagonal real, then a classical
                // Jacobi rotation on the resulting real 2x2 block.
                const cdouble phase = apq / std::abs(apq);
                const double tau = (aqq - app) / (2.0 * std::abs(apq));
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cdouble s = t * c * phase;

                for (int k = 0; k < n; ++k) {
                    const cdouble hkp = h.at(k, p);
                    const cdouble hkq = h.at(k, q);
                    h.at(k, p) = c * hkp - std::conj(s) * hkq;
                    h.at(k, q) = s * hkp + c * hkq;
                }
                for (int k = 0; k < n; ++k) {
                    const cdouble hpk = h.at(p, k);
                    const cdouble hqk = h.at(q, k);
                    h.at(p, k) = c * hpk - s * hqk;
                    h.at(q, k) = std::conj(s) * hpk + c * hqk;
                }
            }
        }
    }

    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = h.at(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

HermitianCheck check_hermitian_psd(const ComplexMatrix& a, double tol) {
    require(a.is_square(), "check_hermitian_psd: matrix must be square");
    HermitianCheck out;
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            out.max_asymmetry =
                std::max(out.max_asymmetry, std::abs(a.at(i, j) - std::conj(a.at(j, i))));
        }
    }
    out.is_hermitian = out.max_asymmetry <= tol;
    const std::vector<double> eig = hermitian_eigenvalues(a);
    out.min_eigenvalue = eig.front();
    out.is_psd = out.is_hermitian && out.min_eigenvalue >= -tol;
    return out;
}

}  // namespace fnn
