#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hbnqm {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Value semantics, dimensions checked on
/// every binary operation. Arithmetic routes through the kernel backends
/// (scalar / SIMD) selected at runtime.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols); // zero-filled

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<cplx> data() { return data_; }
    std::span<const cplx> data() const { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cplx alpha);
    /// this += alpha * rhs
    ComplexMatrix& add_scaled(cplx alpha, const ComplexMatrix& rhs);

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
    friend ComplexMatrix operator*(ComplexMatrix lhs, cplx alpha) { return lhs *= alpha; }
    friend ComplexMatrix operator*(cplx alpha, ComplexMatrix rhs) { return rhs *= alpha; }
    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    ComplexMatrix operator-() const;

    std::vector<cplx> operator*(std::span<const cplx> v) const;

    ComplexMatrix adjoint() const;
    /// (A + A^dagger) / 2, square matrices only.
    ComplexMatrix hermitized() const;

    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool is_hermitian(double tol = 1e-10) const;

    bool operator==(const ComplexMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// Tr(A * B) without forming the product.
cplx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// A*B - B*A
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace hbnqm
