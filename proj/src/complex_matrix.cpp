#include "hbnqm/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hbnqm/kernels.hpp"

namespace hbnqm {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(op) + ": dimension mismatch " +
                                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                    " vs " + std::to_string(b.rows()) + "x" +
                                    std::to_string(b.cols()));
    }
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("ComplexMatrix: zero dimension");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_shape(*this, rhs, "operator+");
    kernels::active().axpy(cplx(1.0, 0.0), rhs.data_.data(), data_.data(), data_.size());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require_same_shape(*this, rhs, "operator-");
    kernels::active().axpy(cplx(-1.0, 0.0), rhs.data_.data(), data_.data(), data_.size());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx alpha) {
    kernels::active().scale(alpha, data_.data(), data_.size());
    return *this;
}

ComplexMatrix& ComplexMatrix::add_scaled(cplx alpha, const ComplexMatrix& rhs) {
    require_same_shape(*this, rhs, "add_scaled");
    kernels::active().axpy(alpha, rhs.data_.data(), data_.data(), data_.size());
    return *this;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_) {
        throw std::invalid_argument("operator*: dimension mismatch " + std::to_string(rows_) +
                                    "x" + std::to_string(cols_) + " * " +
                                    std::to_string(rhs.rows_) + "x" + std::to_string(rhs.cols_));
    }
    ComplexMatrix out(rows_, rhs.cols_);
    kernels::active().matmul(data_.data(), rhs.data_.data(), out.data_.data(),
                             rows_, cols_, rhs.cols_);
    return out;
}

ComplexMatrix ComplexMatrix::operator-() const {
    ComplexMatrix out = *this;
    out *= cplx(-1.0, 0.0);
    return out;
}

std::vector<cplx> ComplexMatrix::operator*(std::span<const cplx> v) const {
    if (cols_ != v.size()) {
        throw std::invalid_argument("matrix-vector: dimension mismatch " + std::to_string(cols_) +
                                    " vs " + std::to_string(v.size()));
    }
    std::vector<cplx> out(rows_, cplx(0.0, 0.0));
    kernels::active().matmul(data_.data(), v.data(), out.data(), rows_, cols_, 1);
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::hermitized() const {
    if (!is_square()) throw std::invalid_argument("hermitized: matrix not square");
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    return out;
}

cplx ComplexMatrix::trace() const {
    if (!is_square()) throw std::invalid_argument("trace: matrix not square");
    cplx t(0.0, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double s = 0.0;
    for (const cplx& v : data_) s = std::max(s, std::abs(v));
    return s;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
}

cplx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw std::invalid_argument("trace_of_product: dimension mismatch");
    }
    cplx t(0.0, 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t l = 0; l < a.cols(); ++l) t += a(i, l) * b(l, i);
    return t;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b - b * a;
}

} // namespace hbnqm
