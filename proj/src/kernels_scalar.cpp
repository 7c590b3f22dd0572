// Reference kernels. Deliberately plain loops: these define the semantics
// the SIMD variants are tested against.

#include "hbnqm/kernels.hpp"

namespace hbnqm::kernels {

namespace {

void matmul_scalar(const cplx* a, const cplx* b, cplx* c,
                   std::size_t m, std::size_t k, std::size_t n) {
    for (std::size_t i = 0; i < m * n; ++i) c[i] = cplx(0.0, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const cplx* arow = a + i * k;
        cplx* crow = c + i * n;
        for (std::size_t l = 0; l < k; ++l) {
            const cplx alv = arow[l];
            if (alv == cplx(0.0, 0.0)) continue;
            const cplx* brow = b + l * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += alv * brow[j];
        }
    }
}

void axpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(cplx alpha, cplx* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

} // namespace

const Backend& scalar_backend() {
    static const Backend backend{"scalar", matmul_scalar, axpy_scalar, scale_scalar};
    return backend;
}

} // namespace hbnqm::kernels
